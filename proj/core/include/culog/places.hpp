#pragma once

#include <map>
#include <memory>
#include <vector>

#include "culog/abelian.hpp"
#include "culog/cyclo.hpp"
#include "culog/embed.hpp"
#include "culog/padic.hpp"

namespace culog {

// Places of F above a rational prime p, indexed by cosets sigma*D_p of the
// decomposition group. Index 0 is the base place cut out by the Hensel
// embedding of the decomposition field; place i is rep[i] applied to it.
struct PlaceSet {
    long p = 0;
    long e = 1;     // ramification index
    long fdeg = 1;  // residue degree
    std::vector<GaloisElement> subgroup;  // D_p
    std::vector<GaloisElement> reps;      // coset reps, reps[0] = 1
};

// Valuation engine for F at the working prime ell, precision ell^m: ordinary
// valuations v_p (any p), logarithmic valuations nu-tilde, place degrees and
// log divisors. Embeddings are cached per rational prime.
class Places {
  public:
    Places(const AbelianField& F, long ell, int m);

    const AbelianField& field() const { return F_; }
    long ell() const { return ell_; }
    int prec() const { return m_; }

    const PlaceSet& above(long p) const;

    // deg of each place above p (all conjugate places share it): f_p*Log(p)
    // for p != ell, the exact power ell^v generating the local log image for
    // p = ell.
    PadicValue place_degree(long p) const;

    long ordinary_valuation(const CycloElement& x, long p, long i) const;

    // nu-tilde at the i-th place above p: the ordinary valuation for p != ell,
    // -Log(N_lambda(x))/deg(lambda) for p = ell.
    PadicValue log_valuation(const CycloElement& x, long p, long i) const;

    // All nu-tilde values above p at once.
    std::vector<PadicValue> log_valuations(const CycloElement& x, long p) const;

    // tau sends place i above p to place perm[i].
    std::vector<long> galois_permutation(long p, GaloisElement tau) const;

    // Rational primes in the support of x (from its absolute norm).
    std::vector<long> support(const CycloElement& x) const;

    // deg(div-tilde x) = sum over places of nu-tilde * deg; zero for any x by
    // the product formula, which the caller may assert.
    PadicValue divisor_degree(const CycloElement& x, const std::vector<long>& primes) const;

  private:
    AbelianField F_;
    long ell_;
    int m_;

    struct PrimeData {
        PlaceSet set;
        std::shared_ptr<AbelianField> dec_field;
        std::unique_ptr<PadicEmbedding> emb;
        int emb_prec = 0;
        long deg_shift = 0;        // v with deg lambda = ell^v (p = ell only)
        bool deg_ready = false;
        PadicValue degree;
    };
    mutable std::map<long, PrimeData> cache_;

    PrimeData& data(long p) const;
    void ensure_embedding(PrimeData& d, int prec) const;
    // product of sigma(x) over D_p, as an element of the decomposition field
    CycloElement partial_norm(const PrimeData& d, const CycloElement& x) const;
    PadicEmbedding::Image embed_norm(PrimeData& d, const CycloElement& x, long i) const;
    void compute_ell_degree(PrimeData& d) const;
};

// Factor a nonzero rational integer by trial division (EffortError past the
// bound unless the cofactor is prime).
std::vector<std::pair<long, long>> factor_int(Int n);

}  // namespace culog
