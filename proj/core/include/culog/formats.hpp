#pragma once

#include <string>
#include <vector>

#include "culog/cyclo.hpp"
#include "culog/padic.hpp"

namespace culog {

// Golden-file records: elements as "f=5; num=[2,-1,0,-1]; den=1" (power-basis
// coordinates), p-adic values as "l=3 m=5 v=48" (value in [0, ell^m)).
std::string element_record(const CycloElement& x);
CycloElement parse_element_record(const std::string& line);

std::string padic_record(const PadicValue& v);
PadicValue parse_padic_record(const std::string& line);

// Units data file: lines "unit: f=...; num=[...]; den=..."; blank lines and
// '#' comments are skipped. digest = FNV-1a of the raw bytes, for provenance.
struct UnitsFile {
    std::vector<CycloElement> units;
    std::string digest;
};

UnitsFile parse_units_data(const std::string& data);
UnitsFile read_units_file(const std::string& path);

// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_digest(const std::string& data);

}  // namespace culog
