#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "culog/logclass.hpp"
#include "culog/units.hpp"

namespace culog {

// Element of R[G_F], R = Z_lambda at precision (d = 1 gives Z/ell^m).
// coeff[i] multiplies galois_group()[i].
struct GroupAlgebraElement {
    int m = 0;
    std::vector<LocalElt> coeff;
};

// Convolution algebra R[G_F] with R the unramified ring of degree d.
class GroupAlgebra {
  public:
    GroupAlgebra(const AbelianField& F, long ell, int m, long d = 1);

    const AbelianField& field() const { return F_; }
    const LocalRing& ring() const { return R_; }
    long ell() const { return R_.ell(); }
    int prec() const { return R_.prec(); }

    GroupAlgebraElement zero() const;
    GroupAlgebraElement one() const;
    GroupAlgebraElement add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
    GroupAlgebraElement mul(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
    GroupAlgebraElement scale(const GroupAlgebraElement& a, const LocalElt& c) const;
    GroupAlgebraElement translate(GaloisElement tau, const GroupAlgebraElement& a) const;
    LocalElt augmentation(const GroupAlgebraElement& a) const;
    bool equal(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
    std::string to_string(const GroupAlgebraElement& a) const;

  private:
    AbelianField F_;
    LocalRing R_;
};

// Log_lambda evaluation at the base place of F above ell (ell unramified) and
// the maps theta(eps) = sum_sigma Log_lambda(eps^sigma) sigma^-1. Log is the
// Iwasawa log of the unit part, so ell itself maps to 0.
class ThetaMap {
  public:
    ThetaMap(const AbelianField& F, long ell, int m);  // UsageError when ell | f

    const GroupAlgebra& algebra() const { return A_; }
    long residue_degree() const { return A_.ring().degree(); }

    LocalElt log_lambda(const CycloElement& x) const;
    GroupAlgebraElement theta(const CycloElement& eps) const;

    // unreduced Log in the guard-precision ring (for exact divisions)
    const LocalRing& guarded_ring() const;
    LocalElt log_guarded(const CycloElement& x) const;

    // theta^Sol = (1/ell) theta(eta_F); integral reports the division check
    struct Solomon {
        GroupAlgebraElement elt;  // at precision m - 1
        bool integral = false;
    };
    Solomon solomon() const;

  private:
    GroupAlgebra A_;
    std::unique_ptr<PadicEmbedding> emb_;  // guarded precision
};

// Scalar-valued Galois morphism data: rho(eps) = sum_sigma c(eps^sigma) sigma^-1.
struct GaloisMorphism {
    std::string label;
    int prec = 0;  // values are exact mod ell^prec
    std::function<Int(const CycloElement&)> c;
};

GroupAlgebraElement rho_apply(const GroupAlgebra& A, const GaloisMorphism& rho,
                              const CycloElement& eps);

// rho and theta are homomorphisms, so eps = prod (eta_k^tau)^alpha is handled
// by evaluating once per base conjugate eta_k^gamma and combining the exponent
// vector linearly; arbitrary exponent sizes stay exact.
struct RhoTable {
    int prec = 0;
    std::vector<std::vector<Int>> u;  // [subfield][gamma index]
};

RhoTable rho_table(const GaloisMorphism& rho, const CircularBasis& B, const AbelianField& F);
GroupAlgebraElement rho_combine(const GroupAlgebra& A, const RhoTable& t,
                                const std::vector<Int>& alpha);

struct ThetaTable {
    std::vector<std::vector<LocalElt>> u;  // guarded-ring Log(eta_k^gamma)
};

ThetaTable theta_table(const ThetaMap& T, const CircularBasis& B);
// (num/ell^denom) * theta(eps); ok reports the integrality of the division
GroupAlgebraElement theta_combine(const ThetaMap& T, const ThetaTable& t,
                                  const std::vector<Int>& alpha, long denom, bool* ok);

// alpha = num / ell^denom_pow multiplier for the dual-basis functionals.
struct AlphaElt {
    LocalElt num;
    long denom_pow = 0;
};

// eps -> Tr(v_i^* alpha Log_lambda(eps)): the i-th coordinate functional of
// alpha*Log on the dual basis of the (trivial) codifferent. Throws
// PrecisionError when the division by ell^denom_pow is not exact.
GaloisMorphism rho_from_dual_basis(std::shared_ptr<ThetaMap> T, AlphaElt alpha, long i);

// Functional battery: (a) dual-basis coordinates of Log_lambda per alpha in
// {1, 1/ell} (skipped when ell | f), (b) residue-index functionals at
// aux_primes split primes q = 1 mod lcm(f, ell^m), (c) random_combos seeded
// Z/ell^m-combinations of the pool.
std::vector<GaloisMorphism> morphism_battery(const AbelianField& F, long ell, int m,
                                             long aux_primes, long random_combos, uint64_t seed);

// A finite module with G_F-action presented through divisor representatives
// of its generators.
struct ActionModule {
    std::shared_ptr<FiniteLModule> mod;
    std::vector<DivisorVec> gen_divisors;
    std::function<DivisorVec(GaloisElement, const DivisorVec&)> act;
    std::function<std::vector<Int>(const DivisorVec&)> cls;  // invariant coords
};

ActionModule cl_tilde_action(const AbelianField& F, Places& P, const LogClassData& L);
ActionModule cl0_action(const AbelianField& F, Places& P, const ClassGroupData& cg);

struct AnnihilationVerdict {
    long a_index = 0;
    long gen_index = 0;
    bool pass = false;
    std::vector<Int> residual;  // nonzero invariant coordinates on failure
};

struct AnnihilationTable {
    long checks = 0;
    long failures = 0;
    bool pass = true;
    std::vector<AnnihilationVerdict> entries;
};

// a * [gen] = 0 in M for every a and generator; coefficients over Z_lambda are
// checked layer by layer over the power basis (Z_lambda is Z_ell-free).
// Coordinates are compared mod ell^min(invariant, prec_cap).
AnnihilationTable annihilation_check(const GroupAlgebra& A,
                                     const std::vector<GroupAlgebraElement>& as,
                                     const ActionModule& M, int prec_cap);

struct TpcReport {
    long ell = 0;
    int m = 0;
    long rho_count = 0;
    long eps_count = 0;
    long eps_skipped = 0;
    long checks = 0;
    long failures = 0;
    std::string module;  // structure of the module annihilated
    bool violation = false;  // failure persisted at m + 4
    bool pass = false;
};

// Theoreme 8: rho(circular log units) annihilates Cl~_F for the battery of rho.
TpcReport tpc_check(const AbelianField& F, long ell, int m, uint64_t seed);
// Corollaire 10 (i): rho(circular units) annihilates Cl0_F.
TpcReport cor10_check(const AbelianField& F, long ell, int m, uint64_t seed);

struct SolomonReport {
    long ell = 0;
    int m = 0;
    long d = 0;  // residue degree of ell
    bool integral = false;  // theta^Sol integrality on the eta conjugates
    long alpha_count = 0;
    long eps_count = 0;
    long eps_skipped = 0;
    long checks = 0;
    long failures = 0;
    bool violation = false;
    bool pass = false;
};

// Theoreme 11: alpha*theta(circular log units) annihilates Z_lambda tensor
// Cl~_F for every integral alpha in the battery {1, 1/ell}. ell must be
// unramified in F.
SolomonReport solomon_check(const AbelianField& F, long ell, int m);

}  // namespace culog
