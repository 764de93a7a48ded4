#pragma once

#include <memory>
#include <string>
#include <vector>

#include "culog/errors.hpp"
#include "culog/integers.hpp"

namespace culog {

struct FieldCaps {
    long degree_cap = 12;
    long conductor_cap = 2000;
};

// Element of G_F = (Z/fZ)^x / H, stored as the canonical (smallest) coset
// representative.
struct GaloisElement {
    long residue = 1;
    bool operator==(const GaloisElement&) const = default;
    auto operator<=>(const GaloisElement&) const = default;
};

class AbelianField;

struct DecompositionData {
    std::vector<GaloisElement> subgroup;  // D_ell as elements of G_F
    long places_above = 1;                // [G_F : D_ell]
    // fixed_field lives behind a pointer to keep the struct copyable with an
    // incomplete AbelianField here.
    std::shared_ptr<AbelianField> fixed_field;
};

// Real abelian field F of conductor f, cut out of Q(zeta_f) by the subgroup
// H <= (Z/fZ)^x fixing it. All Galois theory is exact subgroup arithmetic.
class AbelianField {
  public:
    // Builds the field; requires f to be the true conductor (throws UsageError
    // naming the true conductor otherwise) and -1 in <gens> (real field).
    static AbelianField from_subgroup(long f, const std::vector<long>& gens,
                                      const FieldCaps& caps = {});

    // Same data but silently replaces (f, H) by the conductor-minimal pair.
    static AbelianField from_subgroup_minimized(long f, const std::vector<long>& gens,
                                                const FieldCaps& caps = {});

    // Q(sqrt(d)) for squarefree d > 1.
    static AbelianField real_quadratic(long d, const FieldCaps& caps = {});

    // Maximal real subfield Q(zeta_n)^+, n > 2.
    static AbelianField max_real_cyclotomic(long n, const FieldCaps& caps = {});

    long conductor() const { return f_; }
    long degree() const { return degree_; }
    const std::vector<long>& subgroup() const { return H_; }
    // Canonical coset representatives of G_F, sorted, first entry 1.
    const std::vector<GaloisElement>& galois_group() const { return cosets_; }

    bool is_rational() const { return degree_ == 1; }

    GaloisElement canonical(long residue) const;  // residue mod f -> coset rep
    GaloisElement mul(GaloisElement a, GaloisElement b) const;
    GaloisElement inv(GaloisElement a) const;
    long order(GaloisElement a) const;
    long coset_index(GaloisElement a) const;  // position in galois_group()

    bool subgroup_contains(long residue) const;

    // Artin symbol of an unramified prime p (p coprime to f).
    GaloisElement artin_symbol(long p) const;

    DecompositionData decomposition_data(long ell) const;

    // All subfields K with Q < K <= F, each with its true conductor.
    std::vector<AbelianField> subfield_lattice() const;

    // Fixed field of a subgroup of G_F (given by coset reps), conductor-minimal.
    AbelianField fixed_field(const std::vector<GaloisElement>& sub) const;

    bool contains(const AbelianField& other) const;  // other subfield of *this?

    // True if this field equals the other as a subfield of the cyclotomic
    // closure (same conductor and subgroup).
    bool operator==(const AbelianField& o) const { return f_ == o.f_ && H_ == o.H_; }

    std::string describe() const;  // "f=40;H=..." style

  private:
    AbelianField() = default;
    long f_ = 1;
    std::vector<long> H_;
    std::vector<GaloisElement> cosets_;
    long degree_ = 1;

    void build_cosets();
};

// Subgroup utilities over (Z/fZ)^x, residues in [1, f).
std::vector<long> subgroup_closure(long f, std::vector<long> gens);
// Smallest divisor f' of f such that the reduction kernel (Z/f)^x -> (Z/f')^x
// is contained in H.
long true_conductor(long f, const std::vector<long>& H);

// All subgroups of the quotient group formed by the given coset reps under the
// field's multiplication (small-group BFS).
std::vector<std::vector<GaloisElement>> all_subgroups(const AbelianField& F);

// Parses "f=40;H=39,11" or "d=5".
AbelianField parse_field_spec(const std::string& spec, const FieldCaps& caps = {});

// Enumerates every real abelian field with conductor exactly f and degree at
// most degmax.
std::vector<AbelianField> fields_of_conductor(long f, long degmax, const FieldCaps& caps = {});

}  // namespace culog
