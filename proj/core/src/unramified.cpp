#include "culog/unramified.hpp"

#include <algorithm>

#include "culog/errors.hpp"

namespace culog {

namespace {

// F_ell[x] helpers on vectors of long (index = degree).
using FPoly = std::vector<long>;

void ftrim(FPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

FPoly fmulmod(const FPoly& a, const FPoly& b, const FPoly& g, long ell) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % ell;
    // reduce mod monic g
    long dg = static_cast<long>(g.size()) - 1;
    ftrim(r);
    while (static_cast<long>(r.size()) - 1 >= dg) {
        long d = static_cast<long>(r.size()) - 1;
        long c = r.back();
        for (long i = 0; i <= dg; ++i) {
            long idx = d - dg + i;
            r[idx] = ((r[idx] - c * g[i]) % ell + ell) % ell;
        }
        ftrim(r);
    }
    return r;
}

FPoly fpowmod(FPoly base, Int e, const FPoly& g, long ell) {
    FPoly acc = {1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = fmulmod(acc, base, g, ell);
        e >>= 1;
        if (e > 0) base = fmulmod(base, base, g, ell);
    }
    return acc;
}

FPoly fgcd(FPoly a, FPoly b, long ell) {
    ftrim(a);
    ftrim(b);
    while (!b.empty()) {
        // a mod b
        long db = static_cast<long>(b.size()) - 1;
        Int lead_inv;
        inv_mod(Int(b.back()), Int(ell), lead_inv);
        long binv = lead_inv.get_si();
        while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
            long d = static_cast<long>(a.size()) - 1;
            long c = (a.back() * binv) % ell;
            for (long i = 0; i <= db; ++i) {
                long idx = d - db + i;
                a[idx] = ((a[idx] - c * b[i]) % ell + ell) % ell;
            }
            ftrim(a);
        }
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const FPoly& g, long ell, long d) {
    // x^(ell^d) = x mod g, and gcd(x^(ell^(d/p)) - x, g) = 1 for primes p | d
    FPoly x = {0, 1};
    FPoly xq = fpowmod(x, pow_int(ell, d), g, ell);
    FPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % ell + ell) % ell;
    ftrim(diff);
    if (!diff.empty()) return false;
    for (long p : prime_factors(d)) {
        FPoly xs = fpowmod(x, pow_int(ell, d / p), g, ell);
        FPoly di = xs;
        if (di.size() < 2) di.resize(2, 0);
        di[1] = ((di[1] - 1) % ell + ell) % ell;
        ftrim(di);
        FPoly gg = fgcd(g, di, ell);
        if (gg.size() != 1) return false;
    }
    return true;
}

}  // namespace

std::vector<long> smallest_irreducible(long ell, long d) {
    if (d == 1) return {0, 1};  // x
    Int total = pow_int(ell, d);
    for (Int n = 0; n < total; ++n) {
        FPoly g(d + 1, 0);
        Int t = n;
        for (long i = 0; i < d; ++i) {
            g[i] = mpz_fdiv_ui(t.get_mpz_t(), ell);
            t /= ell;
        }
        g[d] = 1;
        if (is_irreducible(g, ell, d)) return g;
    }
    throw EffortError("no irreducible polynomial found (unreachable)");
}

LocalRing::LocalRing(long ell, long d, int prec) : ell_(ell), d_(d), prec_(prec) {
    mod_ = pow_int(ell, static_cast<unsigned long>(prec));
    auto g = smallest_irreducible(ell, d);
    g_.resize(d + 1);
    for (long i = 0; i <= d; ++i) g_[i] = Int(g[i]);
}

LocalElt LocalRing::reduce(std::vector<Int> raw) const {
    // reduce mod monic g_, then mod ell^prec
    while (static_cast<long>(raw.size()) > d_) {
        long dr = static_cast<long>(raw.size()) - 1;
        Int c = raw.back();
        raw.pop_back();
        if (c == 0) continue;
        for (long i = 0; i < d_; ++i) raw[dr - d_ + i] -= c * g_[i];
    }
    raw.resize(d_, Int(0));
    for (auto& x : raw) x = mod_pos(x, mod_);
    return {std::move(raw)};
}

LocalElt LocalRing::one() const {
    auto z = zero();
    z.c[0] = 1;
    return z;
}

LocalElt LocalRing::from_int(const Int& x) const {
    auto z = zero();
    z.c[0] = mod_pos(x, mod_);
    return z;
}

LocalElt LocalRing::gen() const {
    auto z = zero();
    if (d_ > 1)
        z.c[1] = 1;
    else
        z = reduce({-g_[0]});  // w = root of degree-1 modulus
    return z;
}

LocalElt LocalRing::add(const LocalElt& a, const LocalElt& b) const {
    LocalElt r = a;
    for (long i = 0; i < d_; ++i) r.c[i] = mod_pos(r.c[i] + b.c[i], mod_);
    return r;
}

LocalElt LocalRing::sub(const LocalElt& a, const LocalElt& b) const {
    LocalElt r = a;
    for (long i = 0; i < d_; ++i) r.c[i] = mod_pos(r.c[i] - b.c[i], mod_);
    return r;
}

LocalElt LocalRing::neg(const LocalElt& a) const { return sub(zero(), a); }

LocalElt LocalRing::mul(const LocalElt& a, const LocalElt& b) const {
    std::vector<Int> raw(2 * d_ - 1, Int(0));
    for (long i = 0; i < d_; ++i) {
        if (a.c[i] == 0) continue;
        for (long j = 0; j < d_; ++j) raw[i + j] += a.c[i] * b.c[j];
    }
    return reduce(std::move(raw));
}

LocalElt LocalRing::scale(const LocalElt& a, const Int& k) const {
    LocalElt r = a;
    for (auto& x : r.c) x = mod_pos(x * k, mod_);
    return r;
}

LocalElt LocalRing::pow(const LocalElt& a, const Int& e) const {
    if (e < 0) return pow(inverse(a), -e);
    LocalElt acc = one();
    LocalElt base = a;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return acc;
}

bool LocalRing::is_zero(const LocalElt& a) const {
    for (const auto& x : a.c)
        if (x != 0) return false;
    return true;
}

bool LocalRing::equal(const LocalElt& a, const LocalElt& b) const { return a.c == b.c; }

bool LocalRing::is_unit(const LocalElt& a) const {
    for (const auto& x : a.c)
        if (x % ell_ != 0) return true;
    return false;
}

long LocalRing::valuation(const LocalElt& a) const {
    long v = prec_;
    for (const auto& x : a.c)
        if (x != 0) v = std::min(v, culog::valuation(x, Int(ell_)));
    return v;
}

LocalElt LocalRing::shift_down(const LocalElt& a, long k) const {
    if (valuation(a) < k) throw PrecisionError("local shift_down below valuation");
    Int p = pow_int(ell_, k);
    LocalElt r = a;
    for (auto& x : r.c) x /= p;
    return r;
}

LocalElt LocalRing::inverse(const LocalElt& a) const {
    if (!is_unit(a)) throw UsageError("local inverse of non-unit");
    // inverse mod ell via extended Euclid in F_ell[x], then Newton lift
    FPoly am(d_, 0), gm(d_ + 1, 0);
    for (long i = 0; i < d_; ++i) am[i] = mpz_fdiv_ui(a.c[i].get_mpz_t(), ell_);
    for (long i = 0; i <= d_; ++i) gm[i] = mpz_fdiv_ui(g_[i].get_mpz_t(), ell_);
    ftrim(am);
    // extended Euclid: find s with s*am = 1 mod gm
    FPoly r0 = gm, r1 = am, s0 = {}, s1 = {1};
    while (true) {
        ftrim(r1);
        if (r1.empty()) throw UsageError("local inverse: not coprime (non-unit?)");
        if (r1.size() == 1) break;
        // r0 = q r1 + r
        FPoly r = r0;
        FPoly q;
        long db = static_cast<long>(r1.size()) - 1;
        Int li;
        inv_mod(Int(r1.back()), Int(ell_), li);
        long binv = li.get_si();
        q.assign(std::max<long>(static_cast<long>(r.size()) - db, 1), 0);
        ftrim(r);
        while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
            long d = static_cast<long>(r.size()) - 1;
            long c = (r.back() * binv) % ell_;
            q[d - db] = c;
            for (long i = 0; i <= db; ++i) {
                long idx = d - db + i;
                r[idx] = ((r[idx] - c * r1[i]) % ell_ + ell_) % ell_;
            }
            ftrim(r);
        }
        // s2 = s0 - q*s1
        FPoly qs1(q.size() + s1.size(), 0);
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j)
                qs1[i + j] = (qs1[i + j] + q[i] * s1[j]) % ell_;
        FPoly s2(std::max(s0.size(), qs1.size()), 0);
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < qs1.size(); ++i) s2[i] = ((s2[i] - qs1[i]) % ell_ + ell_) % ell_;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    Int ci;
    inv_mod(Int(r1[0]), Int(ell_), ci);
    LocalElt x0 = zero();
    for (size_t i = 0; i < s1.size() && static_cast<long>(i) < d_; ++i)
        x0.c[i] = mod_pos(Int(s1[i]) * ci, mod_);
    // Newton: x <- x(2 - a x), doubling correct digits each step
    LocalElt x = x0;
    int steps = 1;
    while ((1 << steps) < prec_ + 1) ++steps;
    for (int i = 0; i < steps + 1; ++i) {
        LocalElt t = sub(scale(one(), 2), mul(a, x));
        x = mul(x, t);
    }
    return x;
}

PadicValue LocalRing::trace(const LocalElt& a) const {
    // trace of the multiplication-by-a matrix on the power basis
    Int tr = 0;
    LocalElt wi = one();
    for (long i = 0; i < d_; ++i) {
        LocalElt col = mul(a, wi);
        tr += col.c[i];
        wi = mul(wi, gen());
    }
    return PadicValue(ell_, tr, prec_);
}

const std::vector<LocalElt>& LocalRing::dual_basis() const {
    if (!dual_.empty()) return dual_;
    // Gram matrix T_ij = Tr(w^(i+j)), invert mod ell^prec
    std::vector<LocalElt> wp(2 * d_ - 1);
    wp[0] = one();
    for (long k = 1; k < 2 * d_ - 1; ++k) wp[k] = mul(wp[k - 1], gen());
    std::vector<std::vector<Int>> T(d_, std::vector<Int>(d_));
    for (long i = 0; i < d_; ++i)
        for (long j = 0; j < d_; ++j) T[i][j] = trace(wp[i + j]).value();
    // Gauss-Jordan over Z/ell^prec (pivots are units: pairing nondegenerate)
    std::vector<std::vector<Int>> inv(d_, std::vector<Int>(d_, Int(0)));
    for (long i = 0; i < d_; ++i) inv[i][i] = 1;
    for (long c = 0; c < d_; ++c) {
        long pr = -1;
        for (long r = c; r < d_; ++r)
            if (T[r][c] % ell_ != 0) {
                pr = r;
                break;
            }
        if (pr < 0) throw UsageError("trace pairing degenerate mod ell (unexpected)");
        std::swap(T[pr], T[c]);
        std::swap(inv[pr], inv[c]);
        Int piv_inv;
        inv_mod(T[c][c], mod_, piv_inv);
        for (long j = 0; j < d_; ++j) {
            T[c][j] = mod_pos(T[c][j] * piv_inv, mod_);
            inv[c][j] = mod_pos(inv[c][j] * piv_inv, mod_);
        }
        for (long r = 0; r < d_; ++r) {
            if (r == c || T[r][c] == 0) continue;
            Int m = T[r][c];
            for (long j = 0; j < d_; ++j) {
                T[r][j] = mod_pos(T[r][j] - m * T[c][j], mod_);
                inv[r][j] = mod_pos(inv[r][j] - m * inv[c][j], mod_);
            }
        }
    }
    dual_.resize(d_);
    for (long i = 0; i < d_; ++i) {
        LocalElt v = zero();
        for (long j = 0; j < d_; ++j) v = add(v, scale(wp[j], inv[i][j]));
        dual_[i] = v;
    }
    return dual_;
}

LocalElt LocalRing::log_unit(const LocalElt& a) const {
    if (!is_unit(a)) throw UsageError("log_unit: not a unit");
    Int qm1 = pow_int(ell_, d_) - 1;
    LocalElt y = pow(a, qm1);
    LocalElt t = sub(y, one());
    // log(1+t), t of positive valuation; valid to prec - guard digits
    int kmax = prec_ + kPrecisionGuard;
    LocalElt acc = zero();
    LocalElt tp = one();
    for (int k = 1; k <= kmax; ++k) {
        tp = mul(tp, t);
        long kv = 0;
        long k0 = k;
        while (k0 % ell_ == 0) {
            k0 /= ell_;
            ++kv;
        }
        LocalElt term = shift_down(tp, kv);
        Int ik;
        inv_mod(Int(k0), mod_, ik);
        term = scale(term, k % 2 == 0 ? Int(-ik) : ik);
        acc = add(acc, term);
    }
    Int qinv;
    inv_mod(qm1, mod_, qinv);
    return scale(acc, qinv);
}

std::vector<LocalElt> LocalRing::roots_of(const std::vector<Int>& poly) const {
    Int qz = pow_int(ell_, d_);
    if (qz > 500000) throw EffortError("residue field too large for root enumeration");
    long q = qz.get_si();
    std::vector<LocalElt> roots;
    for (long n = 0; n < q; ++n) {
        LocalElt r = zero();
        long t = n;
        for (long i = 0; i < d_; ++i) {
            r.c[i] = t % ell_;
            t /= ell_;
        }
        LocalElt val = eval_poly(poly, r);
        bool zero_mod_ell = true;
        for (const auto& x : val.c)
            if (x % ell_ != 0) zero_mod_ell = false;
        if (!zero_mod_ell) continue;
        // derivative must be a unit (simple root) for the Newton lift
        std::vector<Int> dpoly;
        for (size_t i = 1; i < poly.size(); ++i) dpoly.push_back(poly[i] * static_cast<long>(i));
        LocalElt dv = eval_poly(dpoly, r);
        if (!is_unit(dv)) continue;
        LocalElt x = r;
        int steps = 1;
        while ((1 << steps) < prec_ + 1) ++steps;
        for (int i = 0; i < steps + 1; ++i) {
            LocalElt fx = eval_poly(poly, x);
            LocalElt fpx = eval_poly(dpoly, x);
            x = sub(x, mul(fx, inverse(fpx)));
        }
        roots.push_back(x);
    }
    return roots;
}

LocalElt LocalRing::eval_poly(const std::vector<Int>& poly, const LocalElt& x) const {
    LocalElt acc = zero();
    for (size_t i = poly.size(); i-- > 0;) {
        acc = mul(acc, x);
        acc = add(acc, from_int(poly[i]));
    }
    return acc;
}

std::string LocalRing::to_string(const LocalElt& a) const {
    std::string s = "[";
    for (long i = 0; i < d_; ++i) {
        if (i) s += ",";
        s += a.c[i].get_str();
    }
    s += "] mod " + std::to_string(ell_) + "^" + std::to_string(prec_);
    return s;
}

}  // namespace culog
