#include "culog/classgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace culog {

SplittingData factor_prime(const AbelianField& F, long p) {
    Places P(F, p == 3 ? 5 : 3, 2);  // working prime irrelevant for splitting
    const PlaceSet& s = P.above(p);
    return {static_cast<long>(s.reps.size()), s.e, s.fdeg};
}

Int field_discriminant(const AbelianField& F) {
    Int disc = 1;
    for (const auto& S : all_subgroups(F)) {
        long q = F.degree() / static_cast<long>(S.size());
        // order of gS in G/S
        long maxord = 1;
        for (const auto& g : F.galois_group()) {
            GaloisElement x = g;
            long k = 1;
            auto in_S = [&](GaloisElement e) {
                return std::find(S.begin(), S.end(), e) != S.end();
            };
            while (!in_S(x)) {
                x = F.mul(x, g);
                ++k;
            }
            maxord = std::max(maxord, k);
        }
        if (maxord != q) continue;  // quotient not cyclic
        long fk = F.fixed_field(S).conductor();
        disc *= pow_int(fk, static_cast<unsigned long>(euler_phi(q)));
    }
    return disc;
}

Int minkowski_bound(const AbelianField& F) {
    long n = F.degree();
    Int fact = 1;
    for (long i = 2; i <= n; ++i) fact *= i;
    Int nn = pow_int(n, static_cast<unsigned long>(n));
    Int d = field_discriminant(F);
    Int s = sqrt(d);
    if (s * s < d) s += 1;
    return fact * s / nn + 1;
}

CycloElement gaussian_period(const AbelianField& F) {
    long f = F.conductor();
    CycloElement theta = CycloElement::zero(f);
    for (long a : F.subgroup()) theta = theta + CycloElement::zeta_power(f, a);
    return theta;
}

std::vector<Int> period_min_poly(const AbelianField& F, const CycloElement& theta) {
    long f = F.conductor();
    std::vector<CycloElement> conj;
    for (const auto& s : F.galois_group()) conj.push_back(theta.galois_act(s));
    for (size_t i = 0; i < conj.size(); ++i)
        for (size_t j = i + 1; j < conj.size(); ++j)
            if (conj[i] == conj[j]) throw UsageError("period conjugates collide");
    std::vector<CycloElement> coeff = {CycloElement::one(f)};
    for (const auto& t : conj) {
        std::vector<CycloElement> next(coeff.size() + 1, CycloElement::zero(f));
        for (size_t i = 0; i < coeff.size(); ++i) {
            next[i] = next[i] + coeff[i];
            next[i + 1] = next[i + 1] - coeff[i] * t;
        }
        coeff = std::move(next);
    }
    std::vector<Int> out(coeff.size());
    for (size_t i = 0; i < coeff.size(); ++i) {
        const auto& c = coeff[coeff.size() - 1 - i];
        if (!c.is_rational()) throw UsageError("period minimal polynomial not rational");
        Rat q = c.rational_value();
        if (q.get_den() != 1) throw UsageError("period minimal polynomial not integral");
        out[i] = q.get_num();
    }
    return out;
}

namespace {

using IMat = std::vector<std::vector<Int>>;

IMat imat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size();
    IMat r(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

// Bareiss fraction-free determinant.
Int imat_det(IMat a) {
    long n = static_cast<long>(a.size());
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            long sw = -1;
            for (long i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    sw = i;
                    break;
                }
            if (sw < 0) return 0;
            std::swap(a[k], a[sw]);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

}  // namespace

ElementSearch::ElementSearch(const AbelianField& F, long coeff_bound) : F_(F), bound_(coeff_bound) {
    long n = F.degree();
    CycloElement theta = gaussian_period(F);
    theta_pows_.push_back(CycloElement::one(F.conductor()));
    for (long i = 1; i < n; ++i) theta_pows_.push_back(theta_pows_.back() * theta);
    auto mp = period_min_poly(F, theta);
    IMat comp(n, std::vector<Int>(n, Int(0)));
    for (long i = 0; i + 1 < n; ++i) comp[i + 1][i] = 1;
    for (long i = 0; i < n; ++i) comp[i][n - 1] = -mp[i];
    IMat id(n, std::vector<Int>(n, Int(0)));
    for (long i = 0; i < n; ++i) id[i][i] = 1;
    mat_pows_.push_back(id);
    for (long i = 1; i < n; ++i) mat_pows_.push_back(imat_mul(mat_pows_.back(), comp));
}

void ElementSearch::run(long max_elements,
                        const std::function<bool(const std::vector<long>&, const Int&)>& fn) const {
    long n = F_.degree();
    long seen = 0;
    // L-infinity shells keep the supply unbounded; max_elements is the budget
    for (long B = bound_;; ++B) {
        std::vector<long> c(n, -B);
        for (;;) {
            long mx = 0;
            for (long i = 0; i < n; ++i) mx = std::max(mx, c[i] < 0 ? -c[i] : c[i]);
            if (mx == B || B == bound_) {  // inner vectors were covered by earlier shells
                // skip non-primitive and sign-duplicate vectors
                long g = 0;
                long first = 0;
                for (long i = 0; i < n; ++i) {
                    g = gcd_long(g, c[i]);
                    if (first == 0 && c[i] != 0) first = c[i];
                }
                if (first > 0 && g == 1) {
                    IMat b(n, std::vector<Int>(n, Int(0)));
                    for (long i = 0; i < n; ++i)
                        for (long r = 0; r < n; ++r)
                            for (long s = 0; s < n; ++s) b[r][s] += c[i] * mat_pows_[i][r][s];
                    Int nm = imat_det(std::move(b));
                    if (nm != 0 && fn(c, nm)) return;
                    if (++seen >= max_elements) return;
                }
            }
            long i = 0;
            while (i < n && c[i] == B) c[i++] = -B;
            if (i == n) break;
            ++c[i];
        }
    }
}

CycloElement ElementSearch::materialize(const std::vector<long>& coeffs) const {
    CycloElement x = CycloElement::zero(F_.conductor());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        x = x + theta_pows_[i] * CycloElement::from_rational(F_.conductor(), Rat(coeffs[i]));
    }
    return x;
}

long ClassGroupData::column_of(long p, long index) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i].p == p && columns[i].index == index) return static_cast<long>(i);
    throw UsageError("place is not a presentation column");
}

FiniteLModule subquotient(const ZMat& gens, const ZMat& rels, long ell, int m) {
    ZMat in_coords = ZMat::zero(0, gens.rows);
    for (long i = 0; i < rels.rows; ++i) {
        std::vector<Int> x;
        if (!solve_left(gens, rels.a[i], ell, m, x))
            throw UsageError("subquotient: relation outside the generator lattice");
        in_coords.a.push_back(std::move(x));
        ++in_coords.rows;
    }
    ZMat K = left_kernel(gens, ell, m);
    for (auto& row : K.a) {
        in_coords.a.push_back(std::move(row));
        ++in_coords.rows;
    }
    return FiniteLModule(ell, m, std::move(in_coords));
}

ClassGroupData class_group(const AbelianField& F, Places& P, const EffortConfig& effort) {
    long ell = P.ell();
    int m = P.prec();
    ClassGroupData out;
    out.ell = ell;
    out.m = m;
    out.bound = minkowski_bound(F);
    std::set<long> primes = {ell};
    for (long p = 2; Int(p) <= out.bound; ++p)
        if (is_prime(p)) primes.insert(p);
    for (long p : primes) {
        const PlaceSet& s = P.above(p);
        out.column_primes.push_back(p);
        for (long i = 0; i < static_cast<long>(s.reps.size()); ++i) out.columns.push_back({p, i});
    }
    long cols = static_cast<long>(out.columns.size());
    out.relations = ZMat::zero(0, cols);
    auto add_row = [&](std::vector<Int> row, const CycloElement& x) {
        out.relations.a.push_back(std::move(row));
        ++out.relations.rows;
        out.relation_elements.push_back(x);
    };
    // div(p) rows: valuation e_p at every place above p
    for (long p : out.column_primes) {
        const PlaceSet& s = P.above(p);
        std::vector<Int> row(cols, Int(0));
        for (size_t j = 0; j < out.columns.size(); ++j)
            if (out.columns[j].p == p) row[j] = s.e;
        add_row(std::move(row), CycloElement::from_rational(F.conductor(), Rat(p)));
    }
    // relation search over smooth elements
    ElementSearch search(F, effort.coeff_bound);
    std::vector<long> last_inv;
    long stable = 0;
    bool settled = false;
    search.run(effort.max_elements, [&](const std::vector<long>& c, const Int& nm) {
        std::vector<std::pair<long, long>> fac;
        try {
            fac = factor_int(nm);
        } catch (const EffortError&) {
            return false;
        }
        for (auto [p, e] : fac)
            if (!primes.count(p)) return false;  // not smooth
        CycloElement x = search.materialize(c);
        std::vector<Int> row(cols, Int(0));
        for (long j = 0; j < cols; ++j)
            row[j] = P.ordinary_valuation(x, out.columns[j].p, out.columns[j].index);
        add_row(std::move(row), x);
        if (out.relations.rows >= cols) {
            FiniteLModule M(ell, m, out.relations);
            if (M.invariants() == last_inv) {
                if (++stable >= effort.extra_relations) {
                    settled = true;
                    return true;
                }
            } else {
                last_inv = M.invariants();
                stable = 0;
            }
        }
        return false;
    });
    out.cl = std::make_shared<FiniteLModule>(ell, m, out.relations);
    if (!settled && !out.cl->invariants().empty() &&
        out.cl->invariants().front() >= m)
        throw EffortError("class group relation lattice did not settle (rank defect?)");
    // Cl0 = kernel of class -> deg(divisor) into Z_ell / (degrees of the
    // principal rows). The admissible sublattice {v : deg(v) in ell^w Z_ell}
    // is free on g_j = e_j - (d_j/d_pivot) e_pivot (j != pivot) and
    // g0 = ell^(w-v0) e_pivot; relations rewritten in those coordinates.
    Int mod = pow_int(ell, static_cast<unsigned long>(m));
    std::vector<Int> degs(cols);
    for (long j = 0; j < cols; ++j) degs[j] = mod_pos(P.place_degree(out.columns[j].p).value(), mod);
    long v0 = m, piv = 0;
    for (long j = 0; j < cols; ++j) {
        long v = degs[j] == 0 ? m : valuation(degs[j], Int(ell));
        if (v < v0) {
            v0 = v;
            piv = j;
        }
    }
    if (v0 >= m) throw PrecisionError("degree map vanishes at precision");
    std::vector<Int> reldeg(out.relations.rows);
    long w = m;
    for (long r = 0; r < out.relations.rows; ++r) {
        Int s = 0;
        for (long j = 0; j < cols; ++j) s += out.relations.a[r][j] * degs[j];
        reldeg[r] = mod_pos(s, mod);
        long v = reldeg[r] == 0 ? m : valuation(reldeg[r], Int(ell));
        w = std::min(w, v);
    }
    Int u0inv;
    inv_mod(degs[piv] / pow_int(ell, static_cast<unsigned long>(v0)), mod, u0inv);
    out.log_degrees = degs;
    out.deg_pivot = piv;
    out.deg_v0 = v0;
    out.deg_w = w;
    out.deg_unit_inv = u0inv;
    ZMat rel0 = ZMat::zero(out.relations.rows, cols);
    Int lw = pow_int(ell, static_cast<unsigned long>(w));
    for (long r = 0; r < out.relations.rows; ++r) {
        for (long j = 0, c = 0; j < cols; ++j) {
            if (j == piv) continue;
            rel0.a[r][c++] = out.relations.a[r][j];
        }
        // g0-coordinate = deg(rel)/(u0 * ell^w), exact mod ell^(m-w)
        rel0.a[r][cols - 1] = mod_pos(reldeg[r] / lw * u0inv, mod);
    }
    out.cl0 = std::make_shared<FiniteLModule>(ell, m, std::move(rel0));
    // Cl' = Cl / <places above ell>
    ZMat rp = out.relations;
    for (long j = 0; j < cols; ++j) {
        if (out.columns[j].p != ell) continue;
        std::vector<Int> row(cols, Int(0));
        row[j] = 1;
        rp.a.push_back(std::move(row));
        ++rp.rows;
    }
    out.clp = std::make_shared<FiniteLModule>(ell, m, std::move(rp));
    return out;
}

}  // namespace culog
