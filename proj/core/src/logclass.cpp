#include "culog/logclass.hpp"

#include <algorithm>
#include <set>

#include "culog/quadratic.hpp"

namespace culog {

namespace {

// nu-tilde row of x over the presentation columns, ignoring any support
// outside them (callers that need exactness check support separately).
DivisorVec divisor_row(const LogClassData& L, Places& P, const CycloElement& x, const Int& mod) {
    DivisorVec row(L.columns.size(), Int(0));
    for (size_t j = 0; j < L.columns.size(); ++j) {
        const auto& c = L.columns[j];
        row[j] = mod_pos(P.log_valuation(x, c.p, c.index).value(), mod);
    }
    return row;
}

bool is_zero_vec(const std::vector<Int>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

long LogClassData::column_of(long p, long index) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i].p == p && columns[i].index == index) return static_cast<long>(i);
    throw UsageError("place is not a presentation column");
}

LogClassData log_class_group(const AbelianField& F, Places& P, const ClassGroupData& cg,
                             const LogClassOptions& opt) {
    long ell = P.ell();
    int m = P.prec();
    Int mod = pow_int(ell, static_cast<unsigned long>(m));
    LogClassData L;
    L.ell = ell;
    L.m = m;
    std::set<long> prime_set(cg.column_primes.begin(), cg.column_primes.end());
    long added = 0;
    for (long p = 2; added < opt.extra_generator_primes; ++p) {
        if (!is_prime(p) || prime_set.count(p)) continue;
        prime_set.insert(p);
        ++added;
    }
    for (long p : prime_set) {
        L.support_primes.push_back(p);
        const PlaceSet& s = P.above(p);
        for (long i = 0; i < static_cast<long>(s.reps.size()); ++i) L.columns.push_back({p, i});
    }
    std::sort(L.columns.begin(), L.columns.end());
    // column degrees (with the optional unit rescaling of the ell block)
    Int u = mod_pos(opt.ell_degree_rescale, mod);
    if (u % ell == 0) throw UsageError("degree rescale must be a unit");
    Int uinv;
    inv_mod(u, mod, uinv);
    L.degrees.resize(L.columns.size());
    for (size_t j = 0; j < L.columns.size(); ++j) {
        Int d = P.place_degree(L.columns[j].p).value();
        if (L.columns[j].p == ell) d = mod_pos(d * u, mod);
        L.degrees[j] = mod_pos(d, mod);
    }
    // generating family: units, relation elements, and conjugates of both
    std::vector<std::pair<CycloElement, std::string>> base;
    if (F.degree() == 2) {
        long d = 1;
        long f = F.conductor();
        // recover squarefree d from the conductor (f = d or 4d)
        d = (f % 4 == 0) ? f / 4 : f;
        base.push_back({fundamental_unit_cyclo(F, d), "eps"});
    }
    for (size_t i = 0; i < opt.extra_units.size(); ++i) {
        Rat n = absolute_norm(opt.extra_units[i], F);
        if (n != 1 && n != -1) throw UsageError("supplied unit has norm != +-1");
        base.push_back({opt.extra_units[i], "unit" + std::to_string(i)});
    }
    for (size_t i = 0; i < cg.relation_elements.size(); ++i)
        base.push_back({cg.relation_elements[i], "rel" + std::to_string(i)});
    if (opt.extra_generator_primes > 0) {
        // the enlarged columns need relations of their own: div(p) plus a
        // smooth-element search that touches the new primes
        std::set<long> old_primes(cg.column_primes.begin(), cg.column_primes.end());
        std::vector<long> fresh;
        for (long p : L.support_primes)
            if (!old_primes.count(p)) fresh.push_back(p);
        for (long p : fresh)
            base.push_back({CycloElement::from_rational(F.conductor(), Rat(p)), "div" + std::to_string(p)});
        ElementSearch search(F, opt.effort.coeff_bound);
        long accepted = 0;
        search.run(opt.effort.max_elements, [&](const std::vector<long>& c, const Int& nm) {
            std::vector<std::pair<long, long>> fac;
            try {
                fac = factor_int(nm);
            } catch (const EffortError&) {
                return false;
            }
            bool touches = false;
            for (auto [p, e] : fac) {
                if (std::find(L.support_primes.begin(), L.support_primes.end(), p) ==
                    L.support_primes.end())
                    return false;
                if (!old_primes.count(p)) touches = true;
            }
            if (!touches) return false;
            base.push_back({search.materialize(c), "ext" + std::to_string(accepted)});
            return ++accepted >= opt.effort.extra_relations;
        });
    }
    L.rows = ZMat::zero(0, static_cast<long>(L.columns.size()));
    for (const auto& [x, label] : base) {
        DivisorVec row = divisor_row(L, P, x, mod);
        if (x.is_zero()) continue;
        for (const auto& tau : F.galois_group()) {
            // row of tau(x): entry j = row at the sigma^{-1}-image place
            DivisorVec trow(L.columns.size());
            std::map<long, std::vector<long>> perms;
            for (size_t j = 0; j < L.columns.size(); ++j) {
                long p = L.columns[j].p;
                if (!perms.count(p)) perms[p] = P.galois_permutation(p, F.inv(tau));
                trow[j] = row[L.column_of(p, perms[p][L.columns[j].index])];
            }
            if (is_zero_vec(trow)) continue;
            L.rows.a.push_back(std::move(trow));
            ++L.rows.rows;
            L.row_labels.push_back(label + (tau.residue == 1 ? "" : "^s" + std::to_string(tau.residue)));
        }
    }
    if (u != 1) {
        for (long r = 0; r < L.rows.rows; ++r)
            for (size_t j = 0; j < L.columns.size(); ++j)
                if (L.columns[j].p == ell) L.rows.a[r][j] = mod_pos(L.rows.a[r][j] * uinv, mod);
    }
    L.cl_star = std::make_shared<FiniteLModule>(ell, m, L.rows);
    // exact degree-zero sublattice: pivot at the column of minimal-valuation
    // degree; basis e_j - (d_j/d_pivot) e_pivot, j != pivot. The quotient by
    // the rows is presented on the non-pivot coordinates (the projection is a
    // bijection from the sublattice).
    long n = static_cast<long>(L.columns.size());
    long v0 = m;
    for (long j = 0; j < n; ++j) {
        long v = L.degrees[j] == 0 ? m : culog::valuation(L.degrees[j], Int(ell));
        if (v < v0) {
            v0 = v;
            L.deg_pivot = j;
        }
    }
    if (v0 >= m) throw PrecisionError("degree map vanishes at precision");
    Int u0inv;
    inv_mod(L.degrees[L.deg_pivot] / pow_int(ell, static_cast<unsigned long>(v0)), mod, u0inv);
    Int modv = pow_int(ell, static_cast<unsigned long>(m - v0));
    L.deg_kernel = ZMat::zero(n - 1, n);
    for (long j = 0, r = 0; j < n; ++j) {
        if (j == L.deg_pivot) continue;
        L.deg_kernel.a[r][j] = 1;
        // the ratio is exact only mod ell^(m-v0); informational
        L.deg_kernel.a[r][L.deg_pivot] =
            mod_pos(-(L.degrees[j] / pow_int(ell, static_cast<unsigned long>(v0))) * u0inv, modv);
        ++r;
    }
    ZMat proj = ZMat::zero(L.rows.rows, n - 1);
    for (long r = 0; r < L.rows.rows; ++r) {
        Int dg = 0;
        for (long j = 0; j < n; ++j) dg += L.rows.a[r][j] * L.degrees[j];
        if (mod_pos(dg, mod) != 0)
            throw PrecisionError("principal log divisor of nonzero degree at precision");
        for (long j = 0, c = 0; j < n; ++j) {
            if (j == L.deg_pivot) continue;
            proj.a[r][c++] = L.rows.a[r][j];
        }
    }
    L.cl_tilde = std::make_shared<FiniteLModule>(ell, m, std::move(proj));
    if (!L.cl_tilde->invariants().empty() && L.cl_tilde->invariants().front() >= m)
        throw EffortError("log class group presentation rank defect at precision");
    return L;
}

DivisorVec log_divisor_on_columns(const LogClassData& L, Places& P, const CycloElement& x) {
    for (long p : P.support(x)) {
        if (p == L.ell) continue;
        if (std::find(L.support_primes.begin(), L.support_primes.end(), p) ==
            L.support_primes.end())
            throw UsageError("support outside the presentation columns: p=" + std::to_string(p));
    }
    Int mod = pow_int(L.ell, static_cast<unsigned long>(L.m));
    return divisor_row(L, P, x, mod);
}

std::vector<Int> class_of_divisor(const LogClassData& L, const DivisorVec& d) {
    return L.cl_star->coords(d);
}

DivisorVec galois_act_divisor(const LogClassData& L, Places& P, GaloisElement tau,
                              const DivisorVec& d) {
    DivisorVec out(d.size());
    std::map<long, std::vector<long>> perms;
    for (size_t j = 0; j < L.columns.size(); ++j) {
        long p = L.columns[j].p;
        if (!perms.count(p)) perms[p] = P.galois_permutation(p, P.field().inv(tau));
        out[j] = d[L.column_of(p, perms[p][L.columns[j].index])];
    }
    return out;
}

namespace {

bool classes_equal_mod(const FiniteLModule& M, const std::vector<Int>& a, const std::vector<Int>& b,
                       int mc) {
    auto ca = M.coords(a);
    auto cb = M.coords(b);
    for (size_t i = 0; i < ca.size(); ++i) {
        long e = std::min<long>(M.invariants()[i], mc);
        if (mod_pos(ca[i] - cb[i], pow_int(M.ell(), e)) != 0) return false;
    }
    return true;
}

}  // namespace

AuxPrimeResult find_auxiliary_prime(const AbelianField& F, Places& P, const LogClassData& L,
                                    const DivisorVec& target, int mc, long budget,
                                    const EffortConfig& effort) {
    long ell = L.ell;
    Int mod = pow_int(ell, static_cast<unsigned long>(L.m));
    Int step = pow_int(ell, static_cast<unsigned long>(mc));
    if (!step.fits_slong_p()) throw UsageError("auxiliary modulus too large");
    long st = step.get_si();
    ElementSearch search(F, effort.coeff_bound);
    AuxPrimeResult res;
    for (long k = 1; k <= budget; ++k) {
        long p = 1 + k * st;
        res.candidates_tried = k;
        if (!is_prime(p)) continue;
        if (F.conductor() % p == 0) continue;
        if (!F.subgroup_contains(p % F.conductor()) && F.conductor() > 1) continue;
        if (std::find(L.support_primes.begin(), L.support_primes.end(), p) !=
            L.support_primes.end())
            continue;
        // reduce one place above p to the presentation columns
        bool found = false;
        std::vector<long> coeffs;
        search.run(effort.max_elements, [&](const std::vector<long>& c, const Int& nm) {
            Int n = abs(nm);
            if (n % p != 0) return false;
            n /= p;
            if (n % p == 0) return false;
            std::vector<std::pair<long, long>> fac;
            try {
                fac = factor_int(n);
            } catch (const EffortError&) {
                return false;
            }
            for (auto [q, e] : fac)
                if (std::find(L.support_primes.begin(), L.support_primes.end(), q) ==
                    L.support_primes.end())
                    return false;
            coeffs = c;
            found = true;
            return true;
        });
        if (!found) continue;
        CycloElement x = search.materialize(coeffs);
        const PlaceSet& sp = P.above(p);
        long i0 = -1;
        for (long i = 0; i < static_cast<long>(sp.reps.size()); ++i)
            if (P.ordinary_valuation(x, p, i) == 1) {
                i0 = i;
                break;
            }
        if (i0 < 0) continue;
        DivisorVec rest(L.columns.size());
        {
            DivisorVec r = divisor_row(L, P, x, mod);
            for (size_t j = 0; j < r.size(); ++j) rest[j] = mod_pos(-r[j], mod);
        }
        // [p-place_j] = [tau_j(-rest)] with tau_j = rep_j * rep_i0^{-1}
        for (long j = 0; j < static_cast<long>(sp.reps.size()); ++j) {
            GaloisElement tau = F.mul(sp.reps[j], F.inv(sp.reps[i0]));
            DivisorVec cls = galois_act_divisor(L, P, tau, rest);
            if (classes_equal_mod(*L.cl_star, cls, target, mc)) {
                res.p = p;
                res.place_index = j;
                res.place_class_divisor = cls;
                res.reducer = x;
                return res;
            }
        }
    }
    throw EffortError("auxiliary prime budget exhausted");
}

}  // namespace culog
