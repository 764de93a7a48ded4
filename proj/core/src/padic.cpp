#include "culog/padic.hpp"

#include <algorithm>

#include "culog/errors.hpp"

namespace culog {

PadicValue::PadicValue(long ell, Int value, int prec) : ell_(ell), prec_(std::max(prec, 0)) {
    mod_ = pow_int(ell_, static_cast<unsigned long>(prec_));
    value_ = mod_pos(value, mod_);
}

long PadicValue::valuation() const {
    if (value_ == 0) return prec_;
    return std::min<long>(culog::valuation(value_, Int(ell_)), prec_);
}

PadicValue PadicValue::operator+(const PadicValue& o) const {
    if (ell_ != o.ell_) throw UsageError("padic prime mismatch");
    return PadicValue(ell_, value_ + o.value_, std::min(prec_, o.prec_));
}

PadicValue PadicValue::operator-(const PadicValue& o) const {
    if (ell_ != o.ell_) throw UsageError("padic prime mismatch");
    return PadicValue(ell_, value_ - o.value_, std::min(prec_, o.prec_));
}

PadicValue PadicValue::operator*(const PadicValue& o) const {
    if (ell_ != o.ell_) throw UsageError("padic prime mismatch");
    return PadicValue(ell_, value_ * o.value_, std::min(prec_, o.prec_));
}

PadicValue PadicValue::operator-() const { return PadicValue(ell_, -value_, prec_); }

PadicValue PadicValue::inverse() const {
    if (!is_unit()) throw UsageError("padic inverse of non-unit");
    Int x;
    if (!inv_mod(value_, mod_, x)) throw UsageError("padic inverse failed");
    return PadicValue(ell_, x, prec_);
}

PadicValue PadicValue::reduced(int prec) const {
    if (prec >= prec_) return *this;
    return PadicValue(ell_, value_, prec);
}

PadicValue PadicValue::shift_down(long k) const {
    if (k == 0) return *this;
    if (k < 0) return PadicValue(ell_, value_ * pow_int(ell_, -k), prec_);
    if (valuation() < k) throw PrecisionError("shift_down below valuation");
    Int p = pow_int(ell_, k);
    return PadicValue(ell_, value_ / p, prec_ - static_cast<int>(k));
}

bool PadicValue::congruent(const PadicValue& o, int prec) const {
    int p = std::min({prec, prec_, o.prec_});
    Int m = pow_int(ell_, p);
    return mod_pos(value_ - o.value_, m) == 0;
}

std::string PadicValue::to_string() const {
    return value_.get_str() + " mod " + std::to_string(ell_) + "^" + std::to_string(prec_);
}

namespace {

// log(1+t) for t with positive valuation, computed mod ell^target given t mod
// ell^target_plus. Returns value with precision target.
PadicValue log_one_plus(const Int& t, long ell, int target) {
    // terms k with k - v(k) >= target are dropped; vmax bounds the division loss
    int kmax = target + kPrecisionGuard;
    int vmax = 0;
    for (int k = ell; k <= kmax; k *= ell) ++vmax;
    int W = target + vmax;
    Int modW = pow_int(ell, W);
    Int acc = 0;
    Int tk = mod_pos(t, modW);
    Int tpow = 1;
    Int modT = pow_int(ell, target);
    for (int k = 1; k <= kmax; ++k) {
        tpow = mul_mod(tpow, tk, modW);
        long kv = 0;
        long k0 = k;
        while (k0 % ell == 0) {
            k0 /= ell;
            ++kv;
        }
        Int term = tpow / pow_int(ell, kv);  // exact: v(t^k) >= k > kv
        Int inv_k0;
        inv_mod(Int(k0), modW, inv_k0);
        term = mul_mod(term, inv_k0, modW);
        if (k % 2 == 0) term = -term;
        acc += term;
    }
    return PadicValue(ell, mod_pos(acc, modT), target);
}

}  // namespace

PadicValue iwasawa_log(const Rat& x, long ell, int m) {
    if (x == 0) throw UsageError("iwasawa_log of zero");
    Int a = abs(x.get_num());
    Int b = x.get_den();
    Int p(ell);
    strip_valuation(a, p);
    strip_valuation(b, p);
    int W = m + kPrecisionGuard;
    Int modW = pow_int(ell, W);
    Int binv;
    inv_mod(b, modW, binv);
    Int u = mul_mod(mod_pos(a, modW), binv, modW);
    Int y = pow_mod(u, Int(ell - 1), modW);
    PadicValue lg = log_one_plus(y - 1, ell, W - 1);
    Int e_inv;
    inv_mod(Int(ell - 1), lg.modulus(), e_inv);
    return PadicValue(ell, lg.value() * e_inv, std::min(lg.prec(), m));
}

PadicValue padic_log_unit(const PadicValue& u) {
    if (!u.is_unit()) throw UsageError("padic_log_unit: not a unit");
    long ell = u.ell();
    Int y = pow_mod(u.value(), Int(ell - 1), u.modulus());
    PadicValue lg = log_one_plus(y - 1, ell, u.prec() - 1);
    Int e_inv;
    inv_mod(Int(ell - 1), lg.modulus(), e_inv);
    return PadicValue(ell, lg.value() * e_inv, lg.prec());
}

PadicValue teichmuller(const PadicValue& x) {
    if (!x.is_unit()) throw UsageError("teichmuller of non-unit");
    Int y = x.value();
    for (int i = 0; i < 2 * x.prec() + 4; ++i) {
        Int z = pow_mod(y, Int(x.ell()), x.modulus());
        if (z == y) break;
        y = z;
    }
    return PadicValue(x.ell(), y, x.prec());
}

}  // namespace culog
