#include "culog/places.hpp"

#include <algorithm>
#include <set>

namespace culog {

namespace {

constexpr long kTrialBound = 1000000;

}  // namespace

std::vector<std::pair<long, long>> factor_int(Int n) {
    if (n == 0) throw UsageError("factor_int of zero");
    if (n < 0) n = -n;
    std::vector<std::pair<long, long>> out;
    for (long p = 2; p <= kTrialBound && Int(p) * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) {
            long e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) {
        if (!is_prime(n) || !n.fits_slong_p())
            throw EffortError("cofactor too large to factor: " + n.get_str());
        out.push_back({n.get_si(), 1});
    }
    return out;
}

Places::Places(const AbelianField& F, long ell, int m) : F_(F), ell_(ell), m_(m) {
    if (m < 1) throw UsageError("precision must be positive");
}

Places::PrimeData& Places::data(long p) const {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    PrimeData d;
    auto dec = F_.decomposition_data(p);
    d.set.p = p;
    d.set.subgroup = dec.subgroup;
    d.dec_field = dec.fixed_field;
    // inertia = image in G_F of the residues congruent to 1 mod f/p^a
    long f = F_.conductor();
    long pa = 1;
    while (f % (pa * p) == 0) pa *= p;
    std::set<GaloisElement> inertia;
    long cof = f / pa;
    if (pa == 1) {
        inertia.insert(F_.canonical(1));
    } else {
        for (long t = 0; t < pa; ++t) {
            long x = (1 + t * cof) % f;
            if (x == 0) x = f;
            if (gcd_long(x, f) == 1) inertia.insert(F_.canonical(x));
        }
    }
    d.set.e = static_cast<long>(inertia.size());
    d.set.fdeg = static_cast<long>(d.set.subgroup.size()) / d.set.e;
    // greedy coset transversal, identity first
    std::set<GaloisElement> seen;
    for (const auto& s : F_.galois_group()) {
        bool covered = false;
        for (const auto& t : d.set.subgroup)
            if (seen.count(F_.mul(s, t))) covered = true;
        if (covered) continue;
        d.set.reps.push_back(s);
        seen.insert(s);
    }
    return cache_.emplace(p, std::move(d)).first->second;
}

void Places::ensure_embedding(PrimeData& d, int prec) const {
    if (d.emb && d.emb_prec >= prec) return;
    d.emb = std::make_unique<PadicEmbedding>(*d.dec_field, d.set.p, 1, prec);
    d.emb_prec = prec;
}

const PlaceSet& Places::above(long p) const { return data(p).set; }

CycloElement Places::partial_norm(const PrimeData& d, const CycloElement& x) const {
    CycloElement acc = CycloElement::one(x.conductor_tag());
    for (const auto& s : d.set.subgroup) acc = acc * x.galois_act(s);
    return acc;
}

PadicEmbedding::Image Places::embed_norm(PrimeData& d, const CycloElement& x, long i) const {
    if (i < 0 || i >= static_cast<long>(d.set.reps.size()))
        throw UsageError("place index out of range");
    long f = F_.conductor();
    CycloElement xl = (x.conductor_tag() == f || f % x.conductor_tag() != 0) ? x : x.lift_to(f);
    CycloElement y = xl.galois_act(F_.inv(d.set.reps[i]));
    CycloElement nrm = partial_norm(d, y);
    int prec = d.emb_prec ? d.emb_prec
                          : (d.set.p == ell_ ? m_ + 2 * kPrecisionGuard : kDefaultPrecision);
    for (;;) {
        ensure_embedding(d, prec);
        try {
            return d.emb->eval(nrm);
        } catch (const PrecisionError&) {
            if (prec >= 512) throw;
            prec *= 2;
        }
    }
}

long Places::ordinary_valuation(const CycloElement& x, long p, long i) const {
    auto& d = data(p);
    auto img = embed_norm(d, x, i);
    if (img.val % d.set.fdeg != 0)
        throw UsageError("local norm valuation not divisible by residue degree");
    return img.val / d.set.fdeg;
}

void Places::compute_ell_degree(PrimeData& d) const {
    if (d.deg_ready) return;
    long p = d.set.p;
    if (p != ell_) {
        d.degree = iwasawa_log(Int(p), ell_, m_).scale(d.set.fdeg);
        d.deg_ready = true;
        return;
    }
    // deg lambda = ell^v, v the minimal valuation of Log(N_lambda(x)) over a
    // family generating the local units: theta - j and 1 + ell*theta^i.
    long f = F_.conductor();
    CycloElement theta = CycloElement::zero(f);
    for (long a : F_.subgroup()) theta = theta + CycloElement::zeta_power(f, a);
    std::vector<CycloElement> family;
    for (long j = 0; j <= 2 * ell_ + 1; ++j)
        family.push_back(theta - CycloElement::from_rational(f, Rat(j)));
    CycloElement tp = CycloElement::one(f);
    for (long i = 0; i < F_.degree(); ++i) {
        family.push_back(CycloElement::one(f) + tp * CycloElement::from_rational(f, Rat(ell_)));
        tp = tp * theta;
    }
    long vmin = -1;
    for (const auto& g : family) {
        if (g.is_zero()) continue;
        PadicEmbedding::Image img;
        try {
            img = embed_norm(d, g, 0);
        } catch (const PrecisionError&) {
            continue;
        }
        PadicValue u(ell_, img.unit.c[0], std::min<int>(d.emb_prec - img.val, d.emb_prec));
        PadicValue lg = padic_log_unit(u);
        if (lg.is_zero()) continue;
        long v = lg.valuation();
        if (vmin < 0 || v < vmin) vmin = v;
        if (vmin == 0) break;
    }
    if (vmin < 0) throw EffortError("could not normalize deg lambda at precision");
    d.deg_shift = vmin;
    d.degree = PadicValue(ell_, pow_int(ell_, vmin), m_);
    d.deg_ready = true;
}

PadicValue Places::place_degree(long p) const {
    auto& d = data(p);
    compute_ell_degree(d);
    return d.degree;
}

PadicValue Places::log_valuation(const CycloElement& x, long p, long i) const {
    auto& d = data(p);
    if (p != ell_) return PadicValue(ell_, Int(ordinary_valuation(x, p, i)), m_);
    compute_ell_degree(d);
    for (;;) {
        auto img = embed_norm(d, x, i);
        PadicValue u(ell_, img.unit.c[0], std::min<int>(d.emb_prec - img.val, d.emb_prec));
        PadicValue lg = padic_log_unit(u);
        if (lg.valuation() < d.deg_shift)
            throw UsageError("log valuation not integral against deg lambda");
        PadicValue r = (-lg).shift_down(d.deg_shift);
        // elements deep in lambda (large img.val) eat precision: retry higher
        if (r.prec() >= m_) return r.reduced(m_);
        if (d.emb_prec >= 512) throw PrecisionError("log valuation below target precision");
        ensure_embedding(d, 2 * d.emb_prec);
    }
}

std::vector<PadicValue> Places::log_valuations(const CycloElement& x, long p) const {
    auto& d = data(p);
    std::vector<PadicValue> out;
    for (long i = 0; i < static_cast<long>(d.set.reps.size()); ++i)
        out.push_back(log_valuation(x, p, i));
    return out;
}

std::vector<long> Places::galois_permutation(long p, GaloisElement tau) const {
    auto& d = data(p);
    long n = static_cast<long>(d.set.reps.size());
    std::set<GaloisElement> D(d.set.subgroup.begin(), d.set.subgroup.end());
    std::vector<long> perm(n, -1);
    for (long i = 0; i < n; ++i) {
        GaloisElement s = F_.mul(tau, d.set.reps[i]);
        for (long j = 0; j < n; ++j) {
            if (D.count(F_.mul(F_.inv(d.set.reps[j]), s))) {
                perm[i] = j;
                break;
            }
        }
        if (perm[i] < 0) throw UsageError("coset transversal inconsistent");
    }
    return perm;
}

std::vector<long> Places::support(const CycloElement& x) const {
    if (x.is_zero()) throw UsageError("support of zero");
    Rat n = absolute_norm(x, F_);
    std::set<long> primes;
    for (auto [p, e] : factor_int(n.get_num())) primes.insert(p);
    for (auto [p, e] : factor_int(n.get_den())) primes.insert(p);
    return {primes.begin(), primes.end()};
}

PadicValue Places::divisor_degree(const CycloElement& x, const std::vector<long>& primes) const {
    PadicValue acc(ell_, 0, m_);
    for (long p : primes) {
        PadicValue dp = place_degree(p);
        for (const auto& v : log_valuations(x, p)) acc = acc + v * dp;
    }
    return acc;
}

}  // namespace culog
