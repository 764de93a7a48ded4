#include "culog/annihilate.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace culog {

GroupAlgebra::GroupAlgebra(const AbelianField& F, long ell, int m, long d)
    : F_(F), R_(ell, d, m) {}

GroupAlgebraElement GroupAlgebra::zero() const {
    return {prec(), std::vector<LocalElt>(F_.degree(), R_.zero())};
}

GroupAlgebraElement GroupAlgebra::one() const {
    GroupAlgebraElement a = zero();
    a.coeff[F_.coset_index(F_.canonical(1))] = R_.one();
    return a;
}

GroupAlgebraElement GroupAlgebra::add(const GroupAlgebraElement& a,
                                      const GroupAlgebraElement& b) const {
    GroupAlgebraElement r = zero();
    r.m = std::min(a.m, b.m);
    for (size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = R_.add(a.coeff[i], b.coeff[i]);
    return r;
}

GroupAlgebraElement GroupAlgebra::mul(const GroupAlgebraElement& a,
                                      const GroupAlgebraElement& b) const {
    GroupAlgebraElement r = zero();
    r.m = std::min(a.m, b.m);
    const auto& G = F_.galois_group();
    for (size_t i = 0; i < G.size(); ++i) {
        if (R_.is_zero(a.coeff[i])) continue;
        for (size_t j = 0; j < G.size(); ++j) {
            long k = F_.coset_index(F_.mul(G[i], G[j]));
            r.coeff[k] = R_.add(r.coeff[k], R_.mul(a.coeff[i], b.coeff[j]));
        }
    }
    return r;
}

GroupAlgebraElement GroupAlgebra::scale(const GroupAlgebraElement& a, const LocalElt& c) const {
    GroupAlgebraElement r = a;
    for (auto& x : r.coeff) x = R_.mul(x, c);
    return r;
}

GroupAlgebraElement GroupAlgebra::translate(GaloisElement tau, const GroupAlgebraElement& a) const {
    GroupAlgebraElement r = zero();
    r.m = a.m;
    const auto& G = F_.galois_group();
    for (size_t i = 0; i < G.size(); ++i)
        r.coeff[F_.coset_index(F_.mul(tau, G[i]))] = a.coeff[i];
    return r;
}

LocalElt GroupAlgebra::augmentation(const GroupAlgebraElement& a) const {
    LocalElt s = R_.zero();
    for (const auto& x : a.coeff) s = R_.add(s, x);
    return s;
}

bool GroupAlgebra::equal(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
    Int mod = pow_int(ell(), static_cast<unsigned long>(std::min(a.m, b.m)));
    for (size_t i = 0; i < a.coeff.size(); ++i)
        for (long k = 0; k < R_.degree(); ++k)
            if (mod_pos(a.coeff[i].c[k] - b.coeff[i].c[k], mod) != 0) return false;
    return true;
}

std::string GroupAlgebra::to_string(const GroupAlgebraElement& a) const {
    std::string out;
    const auto& G = F_.galois_group();
    for (size_t i = 0; i < G.size(); ++i) {
        if (R_.is_zero(a.coeff[i])) continue;
        if (!out.empty()) out += " + ";
        out += "(" + R_.to_string(a.coeff[i]) + ")*s" + std::to_string(G[i].residue);
    }
    return out.empty() ? "0" : out;
}

ThetaMap::ThetaMap(const AbelianField& F, long ell, int m)
    : A_(F, ell, m, factor_prime(F, ell).fdeg) {
    if (F.conductor() % ell == 0)
        throw UsageError("theta needs ell unramified (ell divides the conductor)");
    emb_ = std::make_unique<PadicEmbedding>(F, ell, A_.ring().degree(), m + kPrecisionGuard);
}

const LocalRing& ThetaMap::guarded_ring() const { return emb_->ring(); }

LocalElt ThetaMap::log_guarded(const CycloElement& x) const {
    auto img = emb_->eval(x);
    return emb_->ring().log_unit(img.unit);
}

LocalElt ThetaMap::log_lambda(const CycloElement& x) const {
    LocalElt lg = log_guarded(x);
    Int mod = pow_int(A_.ell(), static_cast<unsigned long>(A_.prec()));
    for (auto& c : lg.c) c = mod_pos(c, mod);
    return lg;
}

GroupAlgebraElement ThetaMap::theta(const CycloElement& eps) const {
    GroupAlgebraElement a = A_.zero();
    const auto& F = A_.field();
    for (const auto& s : F.galois_group())
        a.coeff[F.coset_index(F.inv(s))] = log_lambda(eps.galois_act(s));
    return a;
}

ThetaMap::Solomon ThetaMap::solomon() const {
    Solomon S;
    GroupAlgebraElement th = theta(eta(A_.field()));
    S.integral = true;
    const LocalRing& R = A_.ring();
    for (const auto& c : th.coeff)
        if (!R.is_zero(c) && R.valuation(c) < 1) S.integral = false;
    S.elt = th;
    S.elt.m = A_.prec() - 1;
    Int mod = pow_int(A_.ell(), static_cast<unsigned long>(A_.prec() - 1));
    for (auto& c : S.elt.coeff)
        for (auto& x : c.c) x = mod_pos(x / A_.ell(), mod);
    return S;
}

GroupAlgebraElement rho_apply(const GroupAlgebra& A, const GaloisMorphism& rho,
                              const CycloElement& eps) {
    if (A.ring().degree() != 1) throw UsageError("rho_apply expects a scalar group ring");
    GroupAlgebraElement a = A.zero();
    a.m = std::min(A.prec(), rho.prec);
    const auto& F = A.field();
    for (const auto& s : F.galois_group())
        a.coeff[F.coset_index(F.inv(s))] = A.ring().from_int(rho.c(eps.galois_act(s)));
    return a;
}

RhoTable rho_table(const GaloisMorphism& rho, const CircularBasis& B, const AbelianField& F) {
    RhoTable t;
    t.prec = rho.prec;
    long f = F.conductor();
    const auto& G = F.galois_group();
    for (const auto& base : B.etas) {
        CycloElement e = base.conductor_tag() == f ? base : base.lift_to(f);
        std::vector<Int> row;
        for (const auto& g : G) row.push_back(rho.c(e.galois_act(g)));
        t.u.push_back(std::move(row));
    }
    return t;
}

GroupAlgebraElement rho_combine(const GroupAlgebra& A, const RhoTable& t,
                                const std::vector<Int>& alpha) {
    if (A.ring().degree() != 1) throw UsageError("rho_combine expects a scalar group ring");
    GroupAlgebraElement a = A.zero();
    a.m = std::min(A.prec(), t.prec);
    const auto& F = A.field();
    const auto& G = F.galois_group();
    Int mod = pow_int(A.ell(), static_cast<unsigned long>(a.m));
    if (alpha.size() != t.u.size() * G.size()) throw UsageError("exponent vector length mismatch");
    for (size_t si = 0; si < G.size(); ++si) {
        Int s = 0;
        for (size_t k = 0; k < t.u.size(); ++k)
            for (size_t ti = 0; ti < G.size(); ++ti)
                s += alpha[k * G.size() + ti] * t.u[k][F.coset_index(F.mul(G[ti], G[si]))];
        a.coeff[F.coset_index(F.inv(G[si]))] = A.ring().from_int(mod_pos(s, mod));
    }
    return a;
}

ThetaTable theta_table(const ThetaMap& T, const CircularBasis& B) {
    ThetaTable t;
    const AbelianField& F = T.algebra().field();
    long f = F.conductor();
    for (const auto& base : B.etas) {
        CycloElement e = base.conductor_tag() == f ? base : base.lift_to(f);
        std::vector<LocalElt> row;
        for (const auto& g : F.galois_group()) row.push_back(T.log_guarded(e.galois_act(g)));
        t.u.push_back(std::move(row));
    }
    return t;
}

GroupAlgebraElement theta_combine(const ThetaMap& T, const ThetaTable& t,
                                  const std::vector<Int>& alpha, long denom, bool* ok) {
    const GroupAlgebra& A = T.algebra();
    const AbelianField& F = A.field();
    const auto& G = F.galois_group();
    const LocalRing& Rg = T.guarded_ring();
    if (ok) *ok = true;
    GroupAlgebraElement a = A.zero();
    a.m = A.prec() - static_cast<int>(denom);
    Int mod = pow_int(A.ell(), static_cast<unsigned long>(a.m));
    Int ld = pow_int(A.ell(), static_cast<unsigned long>(denom));
    if (alpha.size() != t.u.size() * G.size()) throw UsageError("exponent vector length mismatch");
    for (size_t si = 0; si < G.size(); ++si) {
        LocalElt y = Rg.zero();
        for (size_t k = 0; k < t.u.size(); ++k)
            for (size_t ti = 0; ti < G.size(); ++ti) {
                const Int& c = alpha[k * G.size() + ti];
                if (c == 0) continue;
                y = Rg.add(y, Rg.scale(t.u[k][F.coset_index(F.mul(G[ti], G[si]))], c));
            }
        if (denom > 0) {
            if (!Rg.is_zero(y) && Rg.valuation(y) < denom) {
                if (ok) *ok = false;
                return a;
            }
        }
        LocalElt r = A.ring().zero();
        for (long j = 0; j < Rg.degree(); ++j) r.c[j] = mod_pos(y.c[j] / ld, mod);
        a.coeff[F.coset_index(F.inv(G[si]))] = std::move(r);
    }
    return a;
}

GaloisMorphism rho_from_dual_basis(std::shared_ptr<ThetaMap> T, AlphaElt alpha, long i) {
    const GroupAlgebra& A = T->algebra();
    long ell = A.ell();
    int m = A.prec();
    GaloisMorphism rho;
    rho.prec = m - static_cast<int>(alpha.denom_pow);
    rho.label = "dual[i=" + std::to_string(i) + ",denom=" + std::to_string(alpha.denom_pow) + "]";
    Int mod = pow_int(ell, static_cast<unsigned long>(rho.prec));
    rho.c = [T, alpha, i, mod, ell](const CycloElement& x) {
        // work in the guarded ring so the division below stays exact
        const LocalRing& R = T->guarded_ring();
        LocalElt lg = T->log_guarded(x);
        LocalElt num = R.zero();
        num.c = alpha.num.c;  // same modulus polynomial, lifted verbatim
        LocalElt y = R.mul(num, lg);
        if (alpha.denom_pow > 0) {
            if (!R.is_zero(y) && R.valuation(y) < alpha.denom_pow)
                throw PrecisionError("alpha*theta not integral on this element");
            y = R.shift_down(y, alpha.denom_pow);
        }
        PadicValue t = R.trace(R.mul(R.dual_basis()[i], y));
        return mod_pos(t.value(), mod);
    };
    return rho;
}

std::vector<GaloisMorphism> morphism_battery(const AbelianField& F, long ell, int m,
                                             long aux_primes, long random_combos, uint64_t seed) {
    std::vector<GaloisMorphism> pool;
    if (F.conductor() % ell != 0) {
        auto T = std::make_shared<ThetaMap>(F, ell, m);
        for (long denom : {0L, 1L})
            for (long i = 0; i < T->residue_degree(); ++i)
                pool.push_back(rho_from_dual_basis(T, {T->algebra().ring().one(), denom}, i));
    }
    Int lt = pow_int(ell, static_cast<unsigned long>(m));
    if (!lt.fits_slong_p()) throw UsageError("residue modulus too large");
    long f = std::max(F.conductor(), 1L);
    long L = f / gcd_long(f, lt.get_si()) * lt.get_si();
    long found = 0;
    for (long q = 1 + L; found < aux_primes; q += L) {
        if (!is_prime(q)) continue;
        auto R = std::make_shared<ResidueFunctional>(make_residue_functional(f, q, ell, m));
        GaloisMorphism rho;
        rho.prec = m;
        rho.label = "ind[q=" + std::to_string(q) + "]";
        rho.c = [R](const CycloElement& x) { return (*R)(x); };
        pool.push_back(std::move(rho));
        ++found;
    }
    std::mt19937_64 rng(seed);
    Int mod = pow_int(ell, static_cast<unsigned long>(m));
    long base = static_cast<long>(pool.size());
    for (long k = 0; k < random_combos && base > 0; ++k) {
        auto parts = std::make_shared<std::vector<GaloisMorphism>>(pool.begin(),
                                                                  pool.begin() + base);
        auto weights = std::make_shared<std::vector<Int>>();
        int prec = m;
        for (long i = 0; i < base; ++i) {
            weights->push_back(Int(static_cast<unsigned long>(rng() % 1000000007)) % mod);
            prec = std::min(prec, (*parts)[i].prec);
        }
        GaloisMorphism rho;
        rho.prec = prec;
        rho.label = "mix[seed=" + std::to_string(seed) + ",k=" + std::to_string(k) + "]";
        Int pm = pow_int(ell, static_cast<unsigned long>(prec));
        rho.c = [parts, weights, pm](const CycloElement& x) {
            Int s = 0;
            for (size_t i = 0; i < parts->size(); ++i) s += (*weights)[i] * (*parts)[i].c(x);
            return mod_pos(s, pm);
        };
        pool.push_back(std::move(rho));
    }
    return pool;
}

ActionModule cl_tilde_action(const AbelianField& F, Places& P, const LogClassData& L) {
    ActionModule M;
    M.mod = L.cl_tilde;
    for (long r = 0; r < L.deg_kernel.rows; ++r) M.gen_divisors.push_back(L.deg_kernel.a[r]);
    M.act = [&L, &P](GaloisElement tau, const DivisorVec& d) {
        return galois_act_divisor(L, P, tau, d);
    };
    Int mod = pow_int(L.ell, static_cast<unsigned long>(L.m));
    M.cls = [&L, mod](const DivisorVec& d) {
        Int deg = 0;
        for (size_t j = 0; j < d.size(); ++j) deg += d[j] * L.degrees[j];
        if (mod_pos(deg, mod) != 0) throw UsageError("divisor of nonzero degree in cl_tilde");
        std::vector<Int> proj;
        for (size_t j = 0; j < d.size(); ++j)
            if (static_cast<long>(j) != L.deg_pivot) proj.push_back(mod_pos(d[j], mod));
        return L.cl_tilde->coords(proj);
    };
    return M;
}

ActionModule cl0_action(const AbelianField& F, Places& P, const ClassGroupData& cg) {
    ActionModule M;
    M.mod = cg.cl0;
    long n = static_cast<long>(cg.columns.size());
    Int mod = pow_int(cg.ell, static_cast<unsigned long>(cg.m));
    Int lv0 = pow_int(cg.ell, static_cast<unsigned long>(cg.deg_v0));
    Int modv = pow_int(cg.ell, static_cast<unsigned long>(cg.m - cg.deg_v0));
    for (long j = 0; j < n; ++j) {
        if (j == cg.deg_pivot) continue;
        DivisorVec g(n, Int(0));
        g[j] = 1;
        g[cg.deg_pivot] = mod_pos(-(cg.log_degrees[j] / lv0) * cg.deg_unit_inv, modv);
        M.gen_divisors.push_back(std::move(g));
    }
    DivisorVec g0(n, Int(0));
    g0[cg.deg_pivot] = pow_int(cg.ell, static_cast<unsigned long>(cg.deg_w - cg.deg_v0));
    M.gen_divisors.push_back(std::move(g0));
    M.act = [&cg, &P](GaloisElement tau, const DivisorVec& d) {
        DivisorVec out(d.size());
        std::map<long, std::vector<long>> perms;
        for (size_t j = 0; j < cg.columns.size(); ++j) {
            long p = cg.columns[j].p;
            if (!perms.count(p)) perms[p] = P.galois_permutation(p, P.field().inv(tau));
            out[j] = d[cg.column_of(p, perms[p][cg.columns[j].index])];
        }
        return out;
    };
    Int lw = pow_int(cg.ell, static_cast<unsigned long>(cg.deg_w));
    M.cls = [&cg, mod, lw](const DivisorVec& d) {
        Int deg = 0;
        for (size_t j = 0; j < d.size(); ++j) deg += d[j] * cg.log_degrees[j];
        deg = mod_pos(deg, mod);
        if (deg % lw != 0) throw UsageError("divisor outside Cl0 (degree valuation too low)");
        std::vector<Int> c;
        for (size_t j = 0; j < d.size(); ++j)
            if (static_cast<long>(j) != cg.deg_pivot) c.push_back(mod_pos(d[j], mod));
        c.push_back(mod_pos(deg / lw * cg.deg_unit_inv, mod));
        return cg.cl0->coords(c);
    };
    return M;
}

AnnihilationTable annihilation_check(const GroupAlgebra& A,
                                     const std::vector<GroupAlgebraElement>& as,
                                     const ActionModule& M, int prec_cap) {
    AnnihilationTable T;
    const auto& F = A.field();
    const auto& G = F.galois_group();
    long d = A.ring().degree();
    long ell = A.ell();
    // sigma(D) for every generator divisor and every sigma, computed once
    std::vector<std::vector<DivisorVec>> orbit(M.gen_divisors.size());
    for (size_t g = 0; g < M.gen_divisors.size(); ++g)
        for (const auto& s : G) orbit[g].push_back(M.act(s, M.gen_divisors[g]));
    for (size_t ai = 0; ai < as.size(); ++ai) {
        const GroupAlgebraElement& a = as[ai];
        int cap = std::min(prec_cap, a.m);
        for (size_t g = 0; g < M.gen_divisors.size(); ++g) {
            AnnihilationVerdict v;
            v.a_index = static_cast<long>(ai);
            v.gen_index = static_cast<long>(g);
            v.pass = true;
            for (long layer = 0; layer < d && v.pass; ++layer) {
                DivisorVec acc(M.gen_divisors[g].size(), Int(0));
                bool nonzero = false;
                for (size_t si = 0; si < G.size(); ++si) {
                    const Int& c = a.coeff[si].c[layer];
                    if (c == 0) continue;
                    nonzero = true;
                    for (size_t j = 0; j < acc.size(); ++j) acc[j] += c * orbit[g][si][j];
                }
                if (!nonzero) continue;
                auto coords = M.cls(acc);
                for (size_t i = 0; i < coords.size(); ++i) {
                    long e = std::min<long>(M.mod->invariants()[i], cap);
                    if (mod_pos(coords[i], pow_int(ell, static_cast<unsigned long>(e))) != 0) {
                        v.pass = false;
                        v.residual = coords;
                        break;
                    }
                }
            }
            ++T.checks;
            if (!v.pass) {
                ++T.failures;
                T.pass = false;
            }
            T.entries.push_back(std::move(v));
        }
    }
    return T;
}

namespace {

TpcReport tpc_pass(const AbelianField& F, long ell, int m, uint64_t seed, bool ordinary) {
    TpcReport R;
    R.ell = ell;
    R.m = m;
    Places P(F, ell, m);
    ClassGroupData cg = class_group(F, P);
    CircularBasis B = circular_basis(F);
    CircularKernel K =
        ordinary ? circular_ordinary_units(B, F, P) : circular_log_units(B, F, P);
    R.eps_count = K.gens.rows;
    auto battery = morphism_battery(F, ell, m, 2, 3, seed);
    R.rho_count = static_cast<long>(battery.size());
    GroupAlgebra A(F, ell, m, 1);
    std::vector<GroupAlgebraElement> as;
    for (const auto& rho : battery) {
        RhoTable t = rho_table(rho, B, F);
        for (long r = 0; r < K.gens.rows; ++r) as.push_back(rho_combine(A, t, K.gens.a[r]));
    }
    LogClassData L;
    ActionModule M;
    if (ordinary) {
        M = cl0_action(F, P, cg);
    } else {
        L = log_class_group(F, P, cg);
        M = cl_tilde_action(F, P, L);
    }
    R.module = M.mod->structure();
    AnnihilationTable T = annihilation_check(A, as, M, m);
    R.checks = T.checks;
    R.failures = T.failures;
    R.pass = T.pass;
    return R;
}

}  // namespace

TpcReport tpc_check(const AbelianField& F, long ell, int m, uint64_t seed) {
    TpcReport R = tpc_pass(F, ell, m, seed, false);
    if (R.failures > 0) {
        TpcReport retry = tpc_pass(F, ell, m + 4, seed, false);
        retry.violation = retry.failures > 0;
        return retry;
    }
    return R;
}

TpcReport cor10_check(const AbelianField& F, long ell, int m, uint64_t seed) {
    TpcReport R = tpc_pass(F, ell, m, seed, true);
    if (R.failures > 0) {
        TpcReport retry = tpc_pass(F, ell, m + 4, seed, true);
        retry.violation = retry.failures > 0;
        return retry;
    }
    return R;
}

namespace {

SolomonReport solomon_pass(const AbelianField& F, long ell, int m) {
    SolomonReport R;
    R.ell = ell;
    R.m = m;
    Places P(F, ell, m);
    ClassGroupData cg = class_group(F, P);
    LogClassData L = log_class_group(F, P, cg);
    CircularBasis B = circular_basis(F);
    CircularKernel K = circular_log_units(B, F, P);
    R.eps_count = K.gens.rows;
    ThetaMap T(F, ell, m);
    R.d = T.residue_degree();
    R.integral = T.solomon().integral;
    const GroupAlgebra& A = T.algebra();
    ThetaTable tt = theta_table(T, B);
    std::vector<GroupAlgebraElement> as;
    for (long denom : {0L, 1L}) {
        bool ok = true;
        std::vector<GroupAlgebraElement> batch;
        for (long r = 0; r < K.gens.rows && ok; ++r)
            batch.push_back(theta_combine(T, tt, K.gens.a[r], denom, &ok));
        if (!ok) continue;  // alpha fails the integrality precondition
        ++R.alpha_count;
        for (auto& a : batch) as.push_back(std::move(a));
    }
    ActionModule M = cl_tilde_action(F, P, L);
    AnnihilationTable tab = annihilation_check(A, as, M, m);
    R.checks = tab.checks;
    R.failures = tab.failures;
    R.pass = tab.pass;
    return R;
}

}  // namespace

SolomonReport solomon_check(const AbelianField& F, long ell, int m) {
    SolomonReport R = solomon_pass(F, ell, m);
    if (R.failures > 0) {
        SolomonReport retry = solomon_pass(F, ell, m + 4);
        retry.violation = retry.failures > 0;
        return retry;
    }
    return R;
}

}  // namespace culog
