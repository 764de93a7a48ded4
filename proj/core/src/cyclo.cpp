#include "culog/cyclo.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "culog/errors.hpp"
#include "culog/ratlin.hpp"

namespace culog {

namespace {

void guard_size(const Poly& p) {
    for (const auto& c : p)
        if (mpz_sizeinbase(c.get_mpz_t(), 10) > static_cast<size_t>(kCoeffDigitGuard))
            throw CapError("cyclotomic coefficient exceeded the digit guard");
}

// Rational polynomial helpers for inversion mod Phi_f.
using RPoly = std::vector<Rat>;

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly rmul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    rtrim(r);
    return r;
}

RPoly rsub(const RPoly& a, const RPoly& b) {
    RPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    rtrim(r);
    return r;
}

// a = q*b + r
void rdivmod(RPoly a, const RPoly& b, RPoly& q, RPoly& r) {
    q.clear();
    rtrim(a);
    long db = static_cast<long>(b.size()) - 1;
    if (db < 0) throw std::invalid_argument("rdivmod: zero divisor");
    long da = static_cast<long>(a.size()) - 1;
    if (da < db) {
        r = a;
        return;
    }
    q.assign(da - db + 1, Rat(0));
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long d = static_cast<long>(a.size()) - 1;
        Rat c = a.back() / b.back();
        q[d - db] = c;
        for (long i = 0; i <= db; ++i) a[d - db + i] -= c * b[i];
        rtrim(a);
    }
    r = a;
}

}  // namespace

CycloElement::CycloElement(long f, Poly num, Int den) : f_(f), num_(std::move(num)), den_(den) {
    if (den_ == 0) throw UsageError("zero denominator");
    const Poly& phi = cyclotomic(f_ > 1 ? f_ : 1);
    if (f_ > 1 && poly_deg(num_) >= poly_deg(phi)) num_ = poly_rem_monic(std::move(num_), phi);
    normalize();
}

void CycloElement::normalize() {
    poly_trim(num_);
    if (num_.empty()) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    Int g = poly_content(num_);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g > 1) {
        for (auto& c : num_) c /= g;
        den_ /= g;
    }
    guard_size(num_);
}

CycloElement CycloElement::from_rational(long f, const Rat& q) {
    if (q == 0) return zero(f);
    return CycloElement(f, {q.get_num()}, q.get_den());
}

CycloElement CycloElement::zeta_power(long f, long k) {
    k = ((k % f) + f) % f;
    Poly p(k + 1, Int(0));
    p[k] = 1;
    return CycloElement(f, std::move(p), 1);
}

Rat CycloElement::rational_value() const {
    if (!is_rational()) throw UsageError("element is not rational");
    if (num_.empty()) return Rat(0);
    Rat r(num_[0], den_);
    r.canonicalize();
    return r;
}

CycloElement CycloElement::operator+(const CycloElement& o) const {
    if (f_ != o.f_) throw UsageError("conductor tag mismatch in +");
    Poly n = poly_add(poly_scale(num_, o.den_), poly_scale(o.num_, den_));
    return CycloElement(f_, std::move(n), den_ * o.den_);
}

CycloElement CycloElement::operator-(const CycloElement& o) const {
    if (f_ != o.f_) throw UsageError("conductor tag mismatch in -");
    Poly n = poly_sub(poly_scale(num_, o.den_), poly_scale(o.num_, den_));
    return CycloElement(f_, std::move(n), den_ * o.den_);
}

CycloElement CycloElement::operator*(const CycloElement& o) const {
    if (f_ != o.f_) throw UsageError("conductor tag mismatch in *");
    return CycloElement(f_, poly_mul(num_, o.num_), den_ * o.den_);
}

CycloElement CycloElement::operator/(const CycloElement& o) const { return *this * o.inverse(); }

CycloElement CycloElement::operator-() const {
    Poly n = num_;
    for (auto& c : n) c = -c;
    return CycloElement(f_, std::move(n), den_);
}

bool CycloElement::operator==(const CycloElement& o) const {
    if (f_ != o.f_) throw UsageError("conductor tag mismatch in ==");
    return poly_sub(poly_scale(num_, o.den_), poly_scale(o.num_, den_)).empty();
}

CycloElement CycloElement::inverse() const {
    if (is_zero()) throw UsageError("division by zero in Q(zeta)");
    if (is_rational()) return from_rational(f_, 1 / rational_value());
    // extended Euclid over Q against Phi_f
    const Poly& phi = cyclotomic(f_);
    RPoly r0(phi.size()), r1(num_.size());
    for (size_t i = 0; i < phi.size(); ++i) r0[i] = Rat(phi[i]);
    for (size_t i = 0; i < num_.size(); ++i) r1[i] = Rat(num_[i], den_);
    RPoly s0 = {}, s1 = {Rat(1)};
    while (true) {
        RPoly q, r;
        rdivmod(r0, r1, q, r);
        RPoly s2 = rsub(s0, rmul(q, s1));
        if (r.empty()) break;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 = gcd (a nonzero constant, Phi_f irreducible), inverse = s1 / r1
    if (r1.size() != 1) throw UsageError("inverse: gcd not constant (corrupt element?)");
    Rat c = r1[0];
    // clear denominators
    Int den_lcm = 1;
    for (auto& x : s1) {
        x /= c;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
    Poly n(s1.size());
    for (size_t i = 0; i < s1.size(); ++i) {
        Rat t = s1[i] * Rat(den_lcm);
        n[i] = t.get_num();
    }
    return CycloElement(f_, std::move(n), den_lcm);
}

CycloElement CycloElement::pow(const Int& e) const {
    if (e == 0) return one(f_);
    CycloElement base = e < 0 ? inverse() : *this;
    Int k = abs(e);
    CycloElement acc = one(f_);
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

CycloElement CycloElement::galois_act(long a) const {
    a = ((a % f_) + f_) % f_;
    if (f_ > 1 && gcd_long(a, f_) != 1) throw UsageError("galois_act: exponent not coprime");
    if (f_ <= 1 || a == 1) return *this;
    Poly big(f_, Int(0));
    for (size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        big[(a * static_cast<long>(i)) % f_] += num_[i];
    }
    return CycloElement(f_, std::move(big), den_);
}

CycloElement CycloElement::lift_to(long n) const {
    if (n == f_) return *this;
    if (n % f_ != 0) throw UsageError("lift_to: target not a multiple of conductor");
    long step = n / f_;
    Poly big(static_cast<size_t>(poly_deg(num_) * step + 1), Int(0));
    if (num_.empty()) return zero(n);
    for (size_t i = 0; i < num_.size(); ++i) big[i * step] = num_[i];
    return CycloElement(n, std::move(big), den_);
}

CycloElement CycloElement::descend_to(long m) const {
    if (m == f_) return *this;
    if (f_ % m != 0) throw UsageError("descend_to: target does not divide conductor");
    long pm = m > 1 ? euler_phi(m) : 1;
    long pf = f_ > 1 ? euler_phi(f_) : 1;
    // columns = lifts of the Q(zeta_m) power basis
    RatMatrix A(pf, std::vector<Rat>(pm, Rat(0)));
    for (long j = 0; j < pm; ++j) {
        CycloElement bj = zeta_power(m > 1 ? m : 1, j % std::max(m, 1L));
        if (m <= 1) bj = one(1);
        CycloElement lifted = m > 1 ? bj.lift_to(f_) : one(f_);
        for (long i = 0; i <= poly_deg(lifted.num()); ++i)
            A[i][j] = Rat(lifted.num()[i], lifted.den());
    }
    std::vector<Rat> b(pf, Rat(0));
    for (long i = 0; i <= poly_deg(num_); ++i) {
        b[i] = Rat(num_[i], den_);
        b[i].canonicalize();
    }
    std::vector<Rat> x;
    if (!solve_rational(A, b, x)) throw UsageError("descend_to: element not in the subfield");
    Int den_lcm = 1;
    for (auto& q : x) {
        q.canonicalize();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    Poly n(x.size());
    for (size_t i = 0; i < x.size(); ++i) n[i] = Rat(x[i] * Rat(den_lcm)).get_num();
    return CycloElement(m, std::move(n), den_lcm);
}

bool CycloElement::invariant_under(const AbelianField& K) const {
    if (K.conductor() != f_) throw UsageError("invariant_under: conductor mismatch");
    for (long h : K.subgroup())
        if (!(galois_act(h) == *this)) return false;
    return true;
}

std::string CycloElement::to_string() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "0 (f=" << f_ << ")";
        return os.str();
    }
    // display lift: peel multiples of z^j * Phi_f while that shrinks the total
    // coefficient mass, so eta-like products print as sums of (1 - z^a)
    std::vector<Int> num(f_, Int(0));
    for (size_t i = 0; i < num_.size(); ++i) num[i] = num_[i];
    const Poly& phi = cyclotomic(f_);
    long span = f_ - static_cast<long>(phi.size()) + 1;  // max deg of the multiplier + 1
    auto mass = [](const Int& x) { return abs(x); };
    for (bool moved = true; moved;) {
        moved = false;
        for (long j = 0; j < span; ++j)
            for (int s : {-1, 1}) {
                Int delta = 0;
                for (size_t i = 0; i < phi.size(); ++i)
                    delta += mass(num[j + i] + s * phi[i]) - mass(num[j + i]);
                if (delta < 0) {
                    for (size_t i = 0; i < phi.size(); ++i) num[j + i] += s * phi[i];
                    moved = true;
                }
            }
    }
    while (!num.empty() && num.back() == 0) num.pop_back();
    bool first = true;
    for (size_t i = 0; i < num.size(); ++i) {
        if (num[i] == 0) continue;
        Int c = num[i];
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (den_ != 1) os << " / " << den_.get_str();
    os << " (f=" << f_ << ")";
    return os.str();
}

void GroupWord::add(long residue, const Int& e) {
    for (auto& [r, c] : terms)
        if (r == residue) {
            c += e;
            return;
        }
    terms.push_back({residue, e});
}

CycloElement FormalProduct::evaluate() const {
    if (factors.empty()) throw UsageError("empty formal product has no conductor");
    long f = factors[0].first.conductor_tag();
    CycloElement acc = CycloElement::one(f);
    for (const auto& [base, word] : factors) {
        for (const auto& [residue, e] : word.terms) {
            if (e == 0) continue;
            acc = acc * base.galois_act(residue).pow(e);
        }
    }
    return acc;
}

CycloElement eta(const AbelianField& K) {
    long f = K.conductor();
    if (f <= 1) throw UsageError("eta undefined for conductor 1");
    CycloElement acc = CycloElement::one(f);
    for (long a : K.subgroup()) {
        CycloElement factor = CycloElement::one(f) - CycloElement::zeta_power(f, a);
        acc = acc * factor;
    }
    return acc;
}

FormalProduct eta_twisted(const AbelianField& F, long ell) {
    if (F.conductor() % ell == 0)
        throw UsageError("eta_twisted: ell divides the conductor; use eta directly");
    GaloisElement sigma = F.artin_symbol(ell);
    GaloisElement sigma_inv = F.inv(sigma);
    FormalProduct p;
    GroupWord w;
    w.add(1, 1);
    w.add(sigma_inv.residue, -1);
    p.factors.push_back({eta(F), std::move(w)});
    return p;
}

std::vector<long> relative_transversal(const AbelianField& K, const AbelianField& L) {
    if (!K.contains(L)) throw UsageError("relative_norm: L is not a subfield of K");
    long f = K.conductor();
    if (f <= 1) return {1};
    std::set<long> taken;
    std::vector<long> reps;
    for (long a = 1; a < f; ++a) {
        if (gcd_long(a, f) != 1) continue;
        if (taken.count(a)) continue;
        bool in_HL = L.conductor() <= 1 || L.subgroup_contains(a % L.conductor());
        if (!in_HL) continue;
        reps.push_back(a);
        for (long h : K.subgroup()) taken.insert((a * h) % f);
    }
    return reps;
}

CycloElement relative_norm_lifted(const CycloElement& x, const AbelianField& K,
                                  const AbelianField& L) {
    if (x.conductor_tag() != K.conductor()) throw UsageError("relative_norm: conductor mismatch");
    CycloElement acc = CycloElement::one(std::max(K.conductor(), 1L));
    for (long a : relative_transversal(K, L)) acc = acc * x.galois_act(a);
    return acc;
}

CycloElement relative_norm(const CycloElement& x, const AbelianField& K, const AbelianField& L) {
    CycloElement big = relative_norm_lifted(x, K, L);
    return big.descend_to(std::max(L.conductor(), 1L));
}

Rat absolute_norm(const CycloElement& x, const AbelianField& K) {
    CycloElement acc = CycloElement::one(std::max(K.conductor(), 1L));
    long f = K.conductor();
    if (f <= 1) return x.rational_value();
    CycloElement y = x.conductor_tag() == f ? x : x.lift_to(f);
    for (const auto& g : K.galois_group()) acc = acc * y.galois_act(g.residue);
    if (!acc.is_rational()) throw UsageError("absolute norm did not land in Q (corrupt input?)");
    return acc.rational_value();
}

bool eta_norm_identity(const AbelianField& K, const AbelianField& L) {
    if (L.conductor() <= 1 || !K.contains(L)) throw UsageError("eta_norm_identity needs Q < L <= K");
    CycloElement lhs = relative_norm(eta(K), K, L);
    // expand prod_p (1 - sigma_p^-1) into signed group elements
    std::vector<std::pair<GaloisElement, int>> terms = {{L.canonical(1), 1}};
    long rest = K.conductor();
    for (long p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        if (L.conductor() % p == 0) continue;
        GaloisElement spi = L.inv(L.artin_symbol(p));
        std::vector<std::pair<GaloisElement, int>> next;
        for (const auto& [g, s] : terms) {
            next.push_back({g, s});
            next.push_back({L.mul(g, spi), -s});
        }
        terms = std::move(next);
    }
    CycloElement etaL = eta(L);
    CycloElement left = lhs, right = CycloElement::one(L.conductor());
    for (const auto& [g, s] : terms) {
        CycloElement c = etaL.galois_act(g);
        if (s > 0) right = right * c;
        else left = left * c;
    }
    return left == right;
}

}  // namespace culog
