#include "culog/formats.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "culog/errors.hpp"

namespace culog {

namespace {

std::string int_list(const std::vector<Int>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out + "]";
}

// "key=value" chunk out of "...; key=...; ..."
std::string chunk(const std::string& line, const std::string& key) {
    size_t at = line.find(key + "=");
    if (at == std::string::npos) throw UsageError("record missing field " + key);
    size_t start = at + key.size() + 1;
    size_t end = line.find(';', start);
    if (end == std::string::npos) end = line.size();
    std::string out = line.substr(start, end - start);
    while (!out.empty() && (out.back() == ' ' || out.back() == '\r')) out.pop_back();
    return out;
}

std::vector<Int> parse_list(const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw UsageError("malformed coordinate list " + s);
    std::vector<Int> out;
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(Int(tok.c_str()));
    return out;
}

}  // namespace

std::string element_record(const CycloElement& x) {
    return "f=" + std::to_string(x.conductor_tag()) + "; num=" + int_list(x.num()) +
           "; den=" + x.den().get_str();
}

CycloElement parse_element_record(const std::string& line) {
    long f = std::stol(chunk(line, "f"));
    std::vector<Int> num = parse_list(chunk(line, "num"));
    Int den(chunk(line, "den").c_str());
    if (f < 1 || den <= 0) throw UsageError("malformed element record");
    return CycloElement(f, std::move(num), den);
}

std::string padic_record(const PadicValue& v) {
    return "l=" + std::to_string(v.ell()) + " m=" + std::to_string(v.prec()) + " v=" +
           mod_pos(v.value(), pow_int(v.ell(), static_cast<unsigned long>(v.prec()))).get_str();
}

PadicValue parse_padic_record(const std::string& line) {
    std::stringstream ss(line);
    std::string tok;
    long l = 0;
    int m = -1;
    Int v;
    bool have_v = false;
    while (ss >> tok) {
        if (tok.rfind("l=", 0) == 0) l = std::stol(tok.substr(2));
        else if (tok.rfind("m=", 0) == 0) m = std::stoi(tok.substr(2));
        else if (tok.rfind("v=", 0) == 0) {
            v = Int(tok.substr(2).c_str());
            have_v = true;
        } else
            throw UsageError("malformed p-adic record token " + tok);
    }
    if (l < 2 || m < 0 || !have_v) throw UsageError("malformed p-adic record");
    if (v < 0 || v >= pow_int(l, static_cast<unsigned long>(m)))
        throw UsageError("p-adic record value out of range");
    return PadicValue(l, v, m);
}

std::string fnv1a_digest(const std::string& data) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

UnitsFile parse_units_data(const std::string& data) {
    UnitsFile out;
    out.digest = fnv1a_digest(data);
    std::stringstream ss(data);
    std::string line;
    long n = 0;
    while (std::getline(ss, line)) {
        ++n;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line.compare(first, 5, "unit:") != 0)
            throw UsageError("units file line " + std::to_string(n) + ": expected 'unit:'");
        out.units.push_back(parse_element_record(line.substr(first + 5)));
    }
    return out;
}

UnitsFile read_units_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open units file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_units_data(buf.str());
}

}  // namespace culog
