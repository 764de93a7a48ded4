#pragma once

#include <optional>
#include <string>
#include <vector>

#include "culog/classgroup.hpp"

namespace culog {

struct LogClassOptions {
    EffortConfig effort;
    std::vector<CycloElement> extra_units;  // externally supplied unit generators
    long extra_generator_primes = 0;        // enlarge the column set (invariance tests)
    // joint unit rescaling of deg lambda and nu-tilde at the ell block (the
    // normalization freedom of deg lambda); 1 = untouched
    Int ell_degree_rescale = 1;
};

// Presentation of the logarithmic class groups: columns = places above ell and
// above the class-generator primes (Minkowski range), rows = log divisors of
// an S'-unit generating family (units, relation elements, their conjugates).
// cl_star drops the degree condition; cl_tilde is the degree-zero subquotient.
struct LogClassData {
    long ell = 3;
    int m = 0;
    std::vector<PlaceRef> columns;
    std::vector<long> support_primes;
    std::vector<Int> degrees;  // deg of each column, mod ell^m
    ZMat rows;
    std::vector<std::string> row_labels;
    // Exact Z_ell-basis of the degree-zero sublattice: e_j - (d_j/d_pivot) *
    // e_pivot for j != deg_pivot, one row per non-pivot column.
    long deg_pivot = 0;
    ZMat deg_kernel;
    std::shared_ptr<FiniteLModule> cl_star;
    std::shared_ptr<FiniteLModule> cl_tilde;

    long column_of(long p, long index) const;
};

LogClassData log_class_group(const AbelianField& F, Places& P, const ClassGroupData& cg,
                             const LogClassOptions& opt = {});

// Divisor supported on the presentation columns, coordinates mod ell^m.
using DivisorVec = std::vector<Int>;

DivisorVec log_divisor_on_columns(const LogClassData& L, Places& P, const CycloElement& x);

// Coordinates of the divisor class in cl_star's invariant basis.
std::vector<Int> class_of_divisor(const LogClassData& L, const DivisorVec& d);

// Galois action on column vectors (places permute within each prime).
DivisorVec galois_act_divisor(const LogClassData& L, Places& P, GaloisElement tau,
                              const DivisorVec& d);

struct AuxPrimeResult {
    long p = 0;
    long place_index = 0;
    DivisorVec place_class_divisor;  // divisor on columns representing [p-place]
    CycloElement reducer;
    long candidates_tried = 0;
};

// Prop. 5 search: p = 1 mod ell^mc, completely split in F, with some place
// above p in the target divisor class mod ell^mc. EffortError when the budget
// of candidate integers runs out.
AuxPrimeResult find_auxiliary_prime(const AbelianField& F, Places& P, const LogClassData& L,
                                    const DivisorVec& target, int mc, long budget,
                                    const EffortConfig& effort = {});

}  // namespace culog
