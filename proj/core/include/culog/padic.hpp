#pragma once

#include <string>

#include "culog/integers.hpp"

namespace culog {

inline constexpr int kDefaultPrecision = 8;
inline constexpr int kPrecisionGuard = 4;

// Residue mod ell^prec with explicit precision tracking. Arithmetic takes the
// min of the operand precisions; exact division by ell^k costs k digits.
class PadicValue {
  public:
    PadicValue() = default;
    PadicValue(long ell, Int value, int prec);

    long ell() const { return ell_; }
    int prec() const { return prec_; }
    const Int& value() const { return value_; }
    const Int& modulus() const { return mod_; }

    bool is_zero() const { return value_ == 0; }
    bool is_unit() const { return value_ % ell_ != 0; }
    // min(v_ell(value), prec); a zero residue reports prec.
    long valuation() const;

    PadicValue operator+(const PadicValue& o) const;
    PadicValue operator-(const PadicValue& o) const;
    PadicValue operator*(const PadicValue& o) const;
    PadicValue operator-() const;
    PadicValue inverse() const;  // unit only
    PadicValue reduced(int prec) const;

    // Exact division by ell^k; requires valuation >= k, lowers precision by k.
    PadicValue shift_down(long k) const;
    PadicValue scale(const Int& c) const { return PadicValue(ell_, value_ * c, prec_); }

    bool congruent(const PadicValue& o, int prec) const;

    std::string to_string() const;  // "48 mod 3^5"

  private:
    long ell_ = 3;
    int prec_ = 0;
    Int value_ = 0;
    Int mod_ = 1;
};

// Iwasawa logarithm of a nonzero rational: Log(ell) = 0, Log(roots of unity)
// = 0, additive; result carries precision m.
PadicValue iwasawa_log(const Rat& x, long ell, int m);
inline PadicValue iwasawa_log(const Int& x, long ell, int m) { return iwasawa_log(Rat(x), ell, m); }

// log of a unit residue (series after raising to ell-1); precision follows the
// argument, minus the series loss.
PadicValue padic_log_unit(const PadicValue& u);

// Teichmueller lift: the (ell-1)-th root of unity congruent to x mod ell.
PadicValue teichmuller(const PadicValue& x);

}  // namespace culog
