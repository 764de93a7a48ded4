#pragma once

#include <memory>
#include <string>
#include <vector>

#include "culog/integers.hpp"
#include "culog/padic.hpp"

namespace culog {

struct LocalElt {
    std::vector<Int> c;  // coordinates on 1, w, ..., w^(d-1), mod ell^prec
};

// Z_lambda = unramified extension of Z_ell of degree d, represented as
// Z_ell[w]/(g(w)) at finite precision, g the lexicographically smallest monic
// irreducible of degree d mod ell.
class LocalRing {
  public:
    LocalRing(long ell, long d, int prec);

    long ell() const { return ell_; }
    long degree() const { return d_; }
    int prec() const { return prec_; }
    const Int& modulus_int() const { return mod_; }
    const std::vector<Int>& modulus_poly() const { return g_; }

    LocalElt zero() const { return {std::vector<Int>(d_, Int(0))}; }
    LocalElt one() const;
    LocalElt from_int(const Int& x) const;
    LocalElt from_padic(const PadicValue& x) const { return from_int(x.value()); }
    LocalElt gen() const;  // w

    LocalElt add(const LocalElt& a, const LocalElt& b) const;
    LocalElt sub(const LocalElt& a, const LocalElt& b) const;
    LocalElt neg(const LocalElt& a) const;
    LocalElt mul(const LocalElt& a, const LocalElt& b) const;
    LocalElt scale(const LocalElt& a, const Int& k) const;
    LocalElt pow(const LocalElt& a, const Int& e) const;
    LocalElt inverse(const LocalElt& a) const;  // unit only
    bool is_zero(const LocalElt& a) const;
    bool equal(const LocalElt& a, const LocalElt& b) const;

    bool is_unit(const LocalElt& a) const;
    // min over coordinates of v_ell (valid because the extension is unramified)
    long valuation(const LocalElt& a) const;
    LocalElt shift_down(const LocalElt& a, long k) const;  // divide by ell^k

    // Trace form data: Tr(x) and the dual basis of 1, w, ..., w^(d-1) under
    // the trace pairing (the codifferent is trivial in the unramified case).
    PadicValue trace(const LocalElt& a) const;
    const std::vector<LocalElt>& dual_basis() const;

    // Iwasawa log of a unit via the q-1 power trick, q = ell^d.
    LocalElt log_unit(const LocalElt& a) const;

    // Distinct roots of a monic-integer polynomial mod ell in the residue
    // field F_q, each Newton-lifted to full precision. Simple roots only.
    std::vector<LocalElt> roots_of(const std::vector<Int>& poly) const;

    std::string to_string(const LocalElt& a) const;

  private:
    long ell_;
    long d_;
    int prec_;
    Int mod_;            // ell^prec
    std::vector<Int> g_;  // monic degree d, coefficients reduced
    mutable std::vector<LocalElt> dual_;

    LocalElt reduce(std::vector<Int> raw) const;
    LocalElt eval_poly(const std::vector<Int>& poly, const LocalElt& x) const;
};

// Lexicographically smallest monic irreducible polynomial of degree d over
// F_ell (coefficient vector a_0..a_d, a_d = 1).
std::vector<long> smallest_irreducible(long ell, long d);

}  // namespace culog
