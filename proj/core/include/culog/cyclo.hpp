#pragma once

#include <map>
#include <string>
#include <vector>

#include "culog/abelian.hpp"
#include "culog/poly.hpp"

namespace culog {

// Guard against runaway coefficient growth (decimal digits per coefficient).
inline constexpr long kCoeffDigitGuard = 1000000;

// Exact element of Q(zeta_f): integer coordinates on the power basis
// 1, z, ..., z^(phi(f)-1) reduced mod Phi_f, over a single positive
// denominator with gcd(content, den) = 1.
class CycloElement {
  public:
    CycloElement() : f_(1), num_{}, den_(1) {}
    CycloElement(long f, Poly num, Int den = 1);

    static CycloElement zero(long f) { return CycloElement(f, {}, 1); }
    static CycloElement one(long f) { return CycloElement(f, {Int(1)}, 1); }
    static CycloElement from_rational(long f, const Rat& q);
    static CycloElement zeta_power(long f, long k);  // zeta_f^k

    long conductor_tag() const { return f_; }
    const Poly& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_.empty(); }
    bool is_rational() const { return num_.size() <= 1; }
    Rat rational_value() const;  // requires is_rational()

    CycloElement operator+(const CycloElement& o) const;
    CycloElement operator-(const CycloElement& o) const;
    CycloElement operator*(const CycloElement& o) const;
    CycloElement operator/(const CycloElement& o) const;
    CycloElement operator-() const;
    bool operator==(const CycloElement& o) const;

    CycloElement inverse() const;
    CycloElement pow(const Int& e) const;

    // zeta_f -> zeta_f^a substitution (a coprime to f).
    CycloElement galois_act(long a) const;
    CycloElement galois_act(const GaloisElement& s) const { return galois_act(s.residue); }

    // Reinterpret inside Q(zeta_n), f | n.
    CycloElement lift_to(long n) const;
    // Express in Q(zeta_m), m | f; requires the element to actually lie there.
    CycloElement descend_to(long m) const;

    bool invariant_under(const AbelianField& K) const;

    std::string to_string() const;  // "2 - z - z^4 (f=5)" style

  private:
    long f_;
    Poly num_;
    Int den_;
    void normalize();
};

// Exponent word over the Galois group: residues mod f with integer exponents.
struct GroupWord {
    std::vector<std::pair<long, Int>> terms;
    void add(long residue, const Int& e);
};

// Lazily evaluated product of base^word factors; exact evaluation on demand.
struct FormalProduct {
    std::vector<std::pair<CycloElement, GroupWord>> factors;

    static FormalProduct single(CycloElement base) {
        FormalProduct p;
        GroupWord w;
        w.add(1, 1);
        p.factors.push_back({std::move(base), std::move(w)});
        return p;
    }
    CycloElement evaluate() const;
    bool is_empty() const { return factors.empty(); }
};

// eta_K = N_{Q(zeta_fK)/K}(1 - zeta_fK) = prod_{a in H_K} (1 - zeta^a).
CycloElement eta(const AbelianField& K);

// eta_F^(1 - artin(F,ell)^-1) as a formal product; requires ell coprime to f.
FormalProduct eta_twisted(const AbelianField& F, long ell);

// Norm of x from K down to L (L subfield of K); the result is returned on the
// power basis of Q(zeta_{f_L}).
CycloElement relative_norm(const CycloElement& x, const AbelianField& K, const AbelianField& L);

// Conjugate product over Gal(K/L) without the final descent (stays in
// Q(zeta_{f_K})); cheaper when the caller compares in the big field.
CycloElement relative_norm_lifted(const CycloElement& x, const AbelianField& K,
                                  const AbelianField& L);

// N_{K/Q}(x) as an exact rational.
Rat absolute_norm(const CycloElement& x, const AbelianField& K);

// Coset transversal of H_K inside the preimage of H_L in (Z/f_K)^x.
std::vector<long> relative_transversal(const AbelianField& K, const AbelianField& L);

// Norm identity N_{K/L}(eta_K) = eta_L^{prod_p (1 - sigma_p^-1)} over primes
// p | f_K with p coprime to f_L, compared multiplied through (no inverses).
// Requires Q < L <= K.
bool eta_norm_identity(const AbelianField& K, const AbelianField& L);

}  // namespace culog
