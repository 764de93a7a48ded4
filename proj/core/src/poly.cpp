#include "culog/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace culog {

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

long poly_deg(const Poly& p) { return static_cast<long>(p.size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    poly_trim(r);
    return r;
}

Poly poly_scale(const Poly& a, const Int& c) {
    if (c == 0) return {};
    Poly r = a;
    for (auto& x : r) x *= c;
    return r;
}

Poly poly_rem_monic(Poly a, const Poly& m) {
    if (m.empty() || m.back() != 1) throw std::invalid_argument("poly_rem_monic: modulus not monic");
    long dm = poly_deg(m);
    poly_trim(a);
    while (poly_deg(a) >= dm) {
        long d = poly_deg(a);
        Int c = a.back();
        // a -= c * x^(d-dm) * m
        for (long i = 0; i <= dm; ++i) a[d - dm + i] -= c * m[i];
        poly_trim(a);
    }
    return a;
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
    if (b.empty()) throw std::invalid_argument("poly_div_exact: division by zero");
    Poly rem = a;
    poly_trim(rem);
    long db = poly_deg(b);
    if (poly_deg(rem) < db) {
        if (rem.empty()) return {};
        throw std::invalid_argument("poly_div_exact: not divisible");
    }
    Poly q(rem.size() - b.size() + 1, Int(0));
    while (poly_deg(rem) >= db) {
        long d = poly_deg(rem);
        Int c = rem.back();
        if (c % b.back() != 0) throw std::invalid_argument("poly_div_exact: not divisible");
        c /= b.back();
        q[d - db] = c;
        for (long i = 0; i <= db; ++i) rem[d - db + i] -= c * b[i];
        poly_trim(rem);
    }
    if (!rem.empty()) throw std::invalid_argument("poly_div_exact: nonzero remainder");
    return q;
}

const Poly& cyclotomic(long n) {
    static std::map<long, Poly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // x^n - 1 divided by the product of cyclotomic(d) for proper divisors d.
    std::function<const Poly&(long)> get = [&](long k) -> const Poly& {
        auto jt = cache.find(k);
        if (jt != cache.end()) return jt->second;
        Poly num(k + 1, Int(0));
        num[0] = -1;
        num[k] = 1;
        for (long d : divisors(k)) {
            if (d == k) continue;
            num = poly_div_exact(num, get(d));
        }
        return cache.emplace(k, std::move(num)).first->second;
    };
    return get(n);
}

Int poly_content(const Poly& p) {
    Int g = 0;
    for (const auto& c : p) {
        Int a = abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    return g;
}

}  // namespace culog
