#pragma once

#include <string>
#include <vector>

#include "culog/classgroup.hpp"
#include "culog/places.hpp"

namespace culog {

// Generators of the circular module R°_F: eta_K for every Q < K <= F plus the
// rational circular numbers p = N(1 - zeta_p) for the primes p | f. The -1
// generator is dropped (ell odd kills it in the ell-adification). When ell is
// given and splits into several places of F, the generator p = ell is omitted:
// it only enters the module through the single-place completion.
struct CircularBasis {
    std::vector<AbelianField> subfields;  // the eta_K generators only
    std::vector<CycloElement> etas;       // eta_K's followed by the rational primes
    std::vector<std::string> labels;      // one per generator
};

CircularBasis circular_basis(const AbelianField& F, long ell = 0);

struct LogUnitVerdict {
    bool ok = false;
    int m = 0;           // verdict is "true at precision m" only
    long witness_p = 0;  // offending place when !ok
    long witness_index = 0;
    Int witness_value;
};

LogUnitVerdict is_log_unit(Places& P, const CycloElement& x);

// alpha -> div~(eta^alpha): rows indexed by (subfield k, sigma in G_F),
// columns by the places in the joint support plus the ell-places.
struct ValuationMatrix {
    std::vector<PlaceRef> columns;
    std::vector<long> row_subfield;
    std::vector<GaloisElement> row_sigma;
    std::vector<std::string> row_labels;
    ZMat mat;
};

// ordinary = true swaps nu-tilde for the ordinary valuations (kernel = genuine
// circular units rather than circular log units).
ValuationMatrix valuation_matrix(const CircularBasis& B, const AbelianField& F, Places& P,
                                 bool ordinary = false);

// Kernel of the valuation matrix mod ell^m: the exponent-level presentation of
// E~deg_F at precision. invariants lists the exponents e of the cyclic pieces
// Z/ell^e of the kernel module, descending; free_count = #(e == m).
struct CircularKernel {
    int m = 0;
    ZMat gens;
    std::vector<long> invariants;
    long free_count = 0;
};

CircularKernel circular_log_units(const CircularBasis& B, const AbelianField& F, Places& P);

// Same presentation for the ordinary valuation matrix.
CircularKernel circular_ordinary_units(const CircularBasis& B, const AbelianField& F, Places& P);

// Materialized kernel generators prod (eta_k^sigma)^e as field elements, with
// balanced exponent lifts; generators whose total exponent size exceeds cap
// are skipped and counted.
std::vector<CycloElement> kernel_elements(const CircularBasis& B, const AbelianField& F, long ell,
                                          const CircularKernel& K, long cap, long* skipped);

// ind_ell of x modulo a prime q = 1 mod lcm(f, ell^t): the discrete log of the
// ell-part of (x mod q), a homomorphism mod ell^t on elements coprime to q.
// Throws UsageError when x reduces to 0 mod q.
struct ResidueFunctional {
    long f = 0, q = 0, ell = 0;
    int t = 0;
    Int zeta;  // image of zeta_f in F_q
    Int g;     // generator of the ell-Sylow of F_q^*
    Int operator()(const CycloElement& x) const;
};

ResidueFunctional make_residue_functional(long f, long q, long ell, int t);

// Rank of the kernel's image in R°_F, separating exponent vectors that only
// encode multiplicative relations among the eta_K: stable rank of the kernel
// image under residue functionals at split primes q = 1 mod lcm(f, ell^t).
// One-sided: never exceeds the true rank of E°~_F at precision.
long separated_kernel_rank(const CircularBasis& B, const AbelianField& F, long ell, int m,
                           const CircularKernel& Km, const CircularKernel& Km2);

struct CarRankReport {
    int m = 0;
    int kase = 0;  // 1 = (i) F° != Q; 2 = (ii,a) ramified; 3 = (ii,b) inert
    long expected = 0;
    long rank = 0;
    long kernel_free_m = 0, kernel_free_m2 = 0;
    bool pass = false;
};

CarRankReport car_rank_check(const AbelianField& F, long ell, int m);

struct ScolieReport {
    long level = 1;     // k with [F.Q_k : F] = ell
    long fc = 0;        // conductor of the compositum F1
    bool first_case = false;  // ell | f: N(eta_F1) = eta_F; otherwise = eta~_F
    bool pass = false;
};

// Exact cyclotomic identity N_{F1/F}(eta_F1) = eta_F (ell | f) or eta~_F.
ScolieReport scolie_check(const AbelianField& F, long ell);

struct NormKernelReport {
    long checked = 0;
    long skipped = 0;  // generators too large for exact evaluation
    bool pass = true;
};

// Case (i) only: free kernel generators alpha satisfy N_{F/F°}(eta^alpha) = 1
// exactly (balanced exponent lift, evaluated when small enough).
NormKernelReport norm_kernel_check(const CircularBasis& B, const AbelianField& F, long ell,
                                   const CircularKernel& K);

}  // namespace culog
