#include "culog/embed.hpp"

#include <algorithm>
#include <set>

namespace culog {

namespace {

// Candidate primitive elements: the Gaussian period theta = sum_{a in H}
// zeta^a, then theta + c*theta^2 for c = 1, 2, ... when conjugates collide or
// the minimal polynomial fails to be squarefree mod p.
CycloElement period_candidate(const AbelianField& F, long c) {
    long f = F.conductor();
    CycloElement theta = CycloElement::zero(f);
    for (long a : F.subgroup()) theta = theta + CycloElement::zeta_power(f, a);
    if (c == 0) return theta;
    return theta + (theta * theta) * CycloElement::from_rational(f, Rat(c));
}

std::vector<CycloElement> conjugates(const AbelianField& F, const CycloElement& theta) {
    std::vector<CycloElement> out;
    for (const auto& s : F.galois_group()) out.push_back(theta.galois_act(s));
    return out;
}

bool all_distinct(const std::vector<CycloElement>& v) {
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] == v[j]) return false;
    return true;
}

// prod (x - theta_sigma), coefficients must come out rational integers.
std::vector<Int> minimal_polynomial(long f, const std::vector<CycloElement>& conj) {
    std::vector<CycloElement> coeff = {CycloElement::one(f)};  // leading first
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
        const auto& c = coeff[coeff.size() - 1 - i];  // a_0 first
        if (!c.is_rational()) throw UsageError("period minimal polynomial not rational");
        Rat q = c.rational_value();
        if (q.get_den() != 1) throw UsageError("period minimal polynomial not integral");
        out[i] = q.get_num();
    }
    return out;
}

}  // namespace

PadicEmbedding::PadicEmbedding(const AbelianField& F, long p, long d, int prec)
    : F_(F), ring_(p, d, prec) {
    long n = F.degree();
    long f = F.conductor();
    for (long c = 0;; ++c) {
        if (c > 24) throw EffortError("no primitive element with squarefree reduction found");
        CycloElement theta = period_candidate(F, c);
        auto conj = conjugates(F, theta);
        if (!all_distinct(conj)) continue;
        auto g = minimal_polynomial(f, conj);
        auto roots = ring_.roots_of(g);
        if (roots.empty()) continue;
        theta_ = theta;
        minpoly_ = std::move(g);
        root_ = roots.front();
        nroots_ = static_cast<long>(roots.size());
        break;
    }
    // columns theta^0..theta^(n-1) on the power basis of Q(zeta_f)
    long dim = static_cast<long>(poly_deg(cyclotomic(f)));
    if (dim < 1) dim = 1;
    basis_.assign(dim, std::vector<Rat>(n, Rat(0)));
    CycloElement pw = CycloElement::one(f);
    for (long j = 0; j < n; ++j) {
        for (size_t i = 0; i < pw.num().size(); ++i)
            basis_[i][j] = Rat(pw.num()[i]) / Rat(pw.den());
        pw = pw * theta_;
    }
    // pick n independent rows once and invert that block, so that later
    // coordinate extraction is a matrix-vector product
    RatMatrix work = basis_;
    long r = 0;
    std::vector<long> perm(dim);
    for (long i = 0; i < dim; ++i) perm[i] = i;
    for (long c = 0; c < n; ++c) {
        long pr = r;
        while (pr < dim && work[pr][c] == 0) ++pr;
        if (pr == dim) throw UsageError("period powers not independent");
        std::swap(work[pr], work[r]);
        std::swap(perm[pr], perm[r]);
        Rat inv = 1 / work[r][c];
        for (long j = 0; j < n; ++j) work[r][j] *= inv;
        for (long i = 0; i < dim; ++i) {
            if (i == r || work[i][c] == 0) continue;
            Rat mfac = work[i][c];
            for (long j = 0; j < n; ++j) work[i][j] -= mfac * work[r][j];
        }
        pivot_rows_.push_back(perm[r]);
        ++r;
    }
    RatMatrix block(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) block[i][j] = basis_[pivot_rows_[i]][j];
    // invert block by Gauss-Jordan
    solver_.assign(n, std::vector<Rat>(n, Rat(0)));
    for (long i = 0; i < n; ++i) solver_[i][i] = 1;
    for (long c = 0; c < n; ++c) {
        long pr = c;
        while (pr < n && block[pr][c] == 0) ++pr;
        if (pr == n) throw UsageError("pivot block singular");
        std::swap(block[pr], block[c]);
        std::swap(solver_[pr], solver_[c]);
        Rat inv = 1 / block[c][c];
        for (long j = 0; j < n; ++j) {
            block[c][j] *= inv;
            solver_[c][j] *= inv;
        }
        for (long i = 0; i < n; ++i) {
            if (i == c || block[i][c] == 0) continue;
            Rat mfac = block[i][c];
            for (long j = 0; j < n; ++j) {
                block[i][j] -= mfac * block[c][j];
                solver_[i][j] -= mfac * solver_[c][j];
            }
        }
    }
}

std::vector<Rat> PadicEmbedding::coordinates(const CycloElement& x) const {
    CycloElement y = x;
    if (y.conductor_tag() != F_.conductor()) {
        if (F_.conductor() % y.conductor_tag() == 0)
            y = y.lift_to(F_.conductor());
        else
            y = y.descend_to(F_.conductor());
    }
    std::vector<Rat> b(basis_.size(), Rat(0));
    for (size_t i = 0; i < y.num().size(); ++i) b[i] = Rat(y.num()[i]) / Rat(y.den());
    long n = F_.degree();
    std::vector<Rat> q(n, Rat(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) q[i] += solver_[i][j] * b[pivot_rows_[j]];
    // consistency on the remaining rows certifies membership in the field
    for (size_t i = 0; i < basis_.size(); ++i) {
        Rat acc(0);
        for (long j = 0; j < n; ++j) acc += basis_[i][j] * q[j];
        if (acc != b[i]) throw UsageError("element not in the embedded field");
    }
    return q;
}

PadicEmbedding::Image PadicEmbedding::eval(const CycloElement& x) const {
    if (x.is_zero()) throw UsageError("embedding of zero");
    auto q = coordinates(x);
    Int D = 1;
    for (const auto& c : q) D = lcm(D, c.get_den());
    long p = ring_.ell();
    long t = culog::valuation(D, Int(p));
    LocalElt acc = ring_.zero();
    LocalElt rp = ring_.one();
    for (size_t j = 0; j < q.size(); ++j) {
        Int cj = q[j].get_num() * (D / q[j].get_den());
        acc = ring_.add(acc, ring_.scale(rp, cj));
        if (j + 1 < q.size()) rp = ring_.mul(rp, root_);
    }
    long v = ring_.valuation(acc);
    if (v >= ring_.prec()) throw PrecisionError("embedded image vanishes at precision");
    LocalElt u = ring_.shift_down(acc, v);
    Int D0 = D / pow_int(p, t);
    Int D0i;
    inv_mod(D0, ring_.modulus_int(), D0i);
    return {v - t, ring_.scale(u, D0i)};
}

LocalElt PadicEmbedding::eval_integral(const CycloElement& x) const {
    if (x.is_zero()) return ring_.zero();
    auto q = coordinates(x);
    Int D = 1;
    for (const auto& c : q) D = lcm(D, c.get_den());
    if (D % ring_.ell() == 0) throw UsageError("element not p-integral");
    Int Di;
    inv_mod(D, ring_.modulus_int(), Di);
    LocalElt acc = ring_.zero();
    LocalElt rp = ring_.one();
    for (size_t j = 0; j < q.size(); ++j) {
        Int cj = q[j].get_num() * (D / q[j].get_den());
        acc = ring_.add(acc, ring_.scale(rp, cj));
        if (j + 1 < q.size()) rp = ring_.mul(rp, root_);
    }
    return ring_.scale(acc, Di);
}

PadicValue PadicEmbedding::eval_scalar(const CycloElement& x) const {
    if (ring_.degree() != 1) throw UsageError("eval_scalar requires a split place");
    LocalElt e = eval_integral(x);
    return PadicValue(ring_.ell(), e.c[0], ring_.prec());
}

PadicEmbedding hensel_embed(const AbelianField& K, long p, int prec) {
    return PadicEmbedding(K, p, 1, prec);
}

}  // namespace culog
