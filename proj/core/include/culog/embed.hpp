#pragma once

#include <vector>

#include "culog/abelian.hpp"
#include "culog/cyclo.hpp"
#include "culog/ratlin.hpp"
#include "culog/unramified.hpp"

namespace culog {

// Embedding of F into the unramified extension of Q_p of degree d, at
// precision p^prec. Built from a Gaussian-period generator theta of F: its
// minimal polynomial is computed exactly and a root is picked in Z_lambda by
// Hensel lifting; the canonical choice is the root whose mod-p approximation
// is smallest in the coordinate enumeration (smallest nonnegative residue
// when d = 1). Requires p unramified in F with residue degree dividing d.
class PadicEmbedding {
  public:
    PadicEmbedding(const AbelianField& F, long p, long d, int prec);

    const AbelianField& field() const { return F_; }
    long p() const { return ring_.ell(); }
    const LocalRing& ring() const { return ring_; }
    const std::vector<Int>& min_poly() const { return minpoly_; }
    const LocalElt& root() const { return root_; }
    long root_count() const { return nroots_; }

    // iota(x) = p^val * unit with unit a unit of Z_lambda; PrecisionError when
    // the image is indistinguishable from zero at precision.
    struct Image {
        long val;
        LocalElt unit;
    };
    Image eval(const CycloElement& x) const;

    long valuation(const CycloElement& x) const { return eval(x).val; }

    // Image of a p-integral x as a ring element (UsageError on denominators
    // divisible by p).
    LocalElt eval_integral(const CycloElement& x) const;

    // Scalar form of eval_integral; requires d = 1.
    PadicValue eval_scalar(const CycloElement& x) const;

  private:
    AbelianField F_;
    LocalRing ring_;
    CycloElement theta_;
    std::vector<Int> minpoly_;  // monic, a_0..a_n
    LocalElt root_;
    long nroots_ = 0;
    RatMatrix basis_;  // columns theta^0..theta^(n-1) on the zeta power basis
    std::vector<long> pivot_rows_;
    RatMatrix solver_;  // inverse of the pivot-row square block

    // theta-basis coordinates of x (exact rationals).
    std::vector<Rat> coordinates(const CycloElement& x) const;
};

// Convenience constructor matching the d = 1 split case (p splits completely
// in K, e.g. K the decomposition field of p).
PadicEmbedding hensel_embed(const AbelianField& K, long p, int prec);

}  // namespace culog
