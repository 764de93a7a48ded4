#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "culog/abelian.hpp"
#include "culog/cyclo.hpp"
#include "culog/places.hpp"
#include "culog/zmodmat.hpp"

namespace culog {

struct EffortConfig {
    long coeff_bound = 8;        // coefficient box for relation search
    long max_elements = 100000;  // elements examined per field
    long extra_relations = 24;   // rows collected past full rank
};

// e, f, g splitting data of a rational prime.
struct SplittingData {
    long g;     // number of places
    long e;     // ramification index
    long fdeg;  // residue degree
};

SplittingData factor_prime(const AbelianField& F, long p);

// Conductor-discriminant product over the characters of G_F.
Int field_discriminant(const AbelianField& F);
Int minkowski_bound(const AbelianField& F);

// Label of a column generator: i-th place above p.
struct PlaceRef {
    long p;
    long index;
    auto operator<=>(const PlaceRef&) const = default;
};

// Presentation of the ell-part of Cl_F by places up to the Minkowski bound and
// principal relations from smooth elements of Z[theta]; Cl0 (degree-zero log
// classes) and Cl' (quotient by the places above ell) derived from it.
struct ClassGroupData {
    long ell = 3;
    int m = 0;
    Int bound;
    std::vector<PlaceRef> columns;  // sorted by (p, index); includes ell-places
    std::vector<long> column_primes;
    ZMat relations;  // ordinary-valuation rows of the relation elements
    std::vector<CycloElement> relation_elements;
    // pivot presentation of Cl0: log-degrees of the columns, the minimal-
    // valuation pivot (deg = unit * ell^v0 there), the minimal valuation w of
    // the relation degrees, and the inverse of that pivot unit
    std::vector<Int> log_degrees;
    long deg_pivot = 0;
    long deg_v0 = 0;
    long deg_w = 0;
    Int deg_unit_inv;
    std::shared_ptr<FiniteLModule> cl, cl0, clp;

    long column_of(long p, long index) const;
};

ClassGroupData class_group(const AbelianField& F, Places& P, const EffortConfig& effort = {});

// Presentation of (row space of gens)/(row space of rels) inside (Z/ell^m)^n;
// every rels row must lie in the gens lattice.
FiniteLModule subquotient(const ZMat& gens, const ZMat& rels, long ell, int m);

// Small search for field elements x = sum c_i theta^i with smooth norms;
// yields (element, norm) pairs. Used by the relation search and the prime
// reduction in logclass.
class ElementSearch {
  public:
    ElementSearch(const AbelianField& F, long coeff_bound);

    // Visits primitive coefficient vectors in a deterministic order with the
    // norm of the corresponding element (cheap companion-matrix determinant);
    // fn returns true to stop early.
    void run(long max_elements, const std::function<bool(const std::vector<long>&, const Int&)>& fn) const;

    CycloElement materialize(const std::vector<long>& coeffs) const;

  private:
    AbelianField F_;
    long bound_;
    std::vector<CycloElement> theta_pows_;
    std::vector<std::vector<std::vector<Int>>> mat_pows_;  // companion powers
};

// Gaussian period generator of F and its (monic integer) minimal polynomial.
CycloElement gaussian_period(const AbelianField& F);
std::vector<Int> period_min_poly(const AbelianField& F, const CycloElement& theta);

}  // namespace culog
