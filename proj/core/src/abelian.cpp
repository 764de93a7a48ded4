#include "culog/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace culog {

namespace {

std::vector<long> units_mod(long f) {
    std::vector<long> u;
    for (long a = 1; a < f; ++a)
        if (gcd_long(a, f) == 1) u.push_back(a);
    if (f == 1) u.push_back(1);  // the trivial group, represented by 1
    return u;
}

std::set<long> closure_set(long f, const std::set<long>& gens) {
    std::set<long> s = {1};
    std::vector<long> frontier(gens.begin(), gens.end());
    for (long g : frontier) s.insert(g);
    while (!frontier.empty()) {
        std::vector<long> next;
        for (long a : frontier)
            for (long b : s) {
                long c = (a * b) % f;
                if (s.insert(c).second) next.push_back(c);
            }
        frontier = std::move(next);
    }
    return s;
}

}  // namespace

std::vector<long> subgroup_closure(long f, std::vector<long> gens) {
    if (f <= 1) return {1};
    std::set<long> g;
    for (long x : gens) {
        long r = ((x % f) + f) % f;
        if (gcd_long(r, f) != 1)
            throw UsageError("subgroup generator " + std::to_string(x) + " is not a unit mod " +
                             std::to_string(f));
        g.insert(r);
    }
    auto s = closure_set(f, g);
    return {s.begin(), s.end()};
}

long true_conductor(long f, const std::vector<long>& H) {
    std::set<long> Hs(H.begin(), H.end());
    for (long fp : [&] {
             auto d = divisors(f);
             std::sort(d.begin(), d.end());
             return d;
         }()) {
        // kernel of (Z/f)^x -> (Z/f')^x contained in H?
        bool ok = true;
        for (long x = 1; x < f && ok; ++x) {
            if (gcd_long(x, f) != 1) continue;
            if (x % std::max(fp, 1L) == 1 % std::max(fp, 1L) && !Hs.count(x)) ok = false;
        }
        if (ok) return fp;
    }
    return f;
}

AbelianField AbelianField::from_subgroup(long f, const std::vector<long>& gens,
                                         const FieldCaps& caps) {
    if (f <= 1) throw UsageError("conductor must be > 1");
    if (f > caps.conductor_cap)
        throw CapError("conductor " + std::to_string(f) + " exceeds cap " +
                       std::to_string(caps.conductor_cap));
    auto H = subgroup_closure(f, gens);
    if (!std::binary_search(H.begin(), H.end(), (f - 1) % f))
        throw UsageError("subgroup misses -1 mod " + std::to_string(f) + "; field not totally real");
    long tc = true_conductor(f, H);
    if (tc != f)
        throw UsageError("conductor " + std::to_string(f) + " is not minimal; true conductor is " +
                         std::to_string(tc));
    AbelianField F;
    F.f_ = f;
    F.H_ = H;
    F.degree_ = euler_phi(f) / static_cast<long>(H.size());
    if (F.degree_ > caps.degree_cap)
        throw CapError("degree " + std::to_string(F.degree_) + " exceeds cap " +
                       std::to_string(caps.degree_cap));
    F.build_cosets();
    return F;
}

AbelianField AbelianField::from_subgroup_minimized(long f, const std::vector<long>& gens,
                                                   const FieldCaps& caps) {
    auto H = subgroup_closure(f, gens);
    long tc = f <= 1 ? 1 : true_conductor(f, H);
    if (tc <= 2) {
        AbelianField Q;
        Q.f_ = 1;
        Q.H_ = {1};
        Q.degree_ = 1;
        Q.build_cosets();
        return Q;
    }
    if (tc == f) return from_subgroup(f, gens, caps);
    std::vector<long> gens2;
    gens2.reserve(H.size());
    for (long h : H) gens2.push_back(h % tc);
    return from_subgroup(tc, gens2, caps);
}

AbelianField AbelianField::real_quadratic(long d, const FieldCaps& caps) {
    if (d <= 1) throw UsageError("d must be > 1");
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) throw UsageError("d must be squarefree");
    long D = (d % 4 == 1) ? d : 4 * d;
    std::vector<long> gens;
    Int Dz(D);
    for (long a = 1; a < D; ++a) {
        if (gcd_long(a, D) != 1) continue;
        Int az(a);
        if (mpz_kronecker(Dz.get_mpz_t(), az.get_mpz_t()) == 1) gens.push_back(a);
    }
    return from_subgroup(D, gens, caps);
}

AbelianField AbelianField::max_real_cyclotomic(long n, const FieldCaps& caps) {
    if (n <= 2) throw UsageError("n must be > 2");
    return from_subgroup(n, {n - 1}, caps);
}

void AbelianField::build_cosets() {
    cosets_.clear();
    if (f_ <= 1) {
        cosets_ = {GaloisElement{1}};
        return;
    }
    std::set<long> Hs(H_.begin(), H_.end());
    std::set<long> seen;
    for (long a : units_mod(f_)) {
        if (seen.count(a)) continue;
        long rep = f_;
        for (long h : H_) {
            long c = (a * h) % f_;
            seen.insert(c);
            rep = std::min(rep, c);
        }
        cosets_.push_back(GaloisElement{rep});
    }
    std::sort(cosets_.begin(), cosets_.end());
}

GaloisElement AbelianField::canonical(long residue) const {
    if (f_ <= 1) return GaloisElement{1};
    long r = ((residue % f_) + f_) % f_;
    if (gcd_long(r, f_) != 1)
        throw UsageError("residue " + std::to_string(residue) + " not a unit mod " +
                         std::to_string(f_));
    long rep = f_;
    for (long h : H_) rep = std::min(rep, (r * h) % f_);
    return GaloisElement{rep};
}

GaloisElement AbelianField::mul(GaloisElement a, GaloisElement b) const {
    if (f_ <= 1) return GaloisElement{1};
    return canonical((a.residue * b.residue) % f_);
}

GaloisElement AbelianField::inv(GaloisElement a) const {
    if (f_ <= 1) return GaloisElement{1};
    Int x;
    if (!inv_mod(Int(a.residue), Int(f_), x)) throw UsageError("non-unit residue");
    return canonical(x.get_si());
}

long AbelianField::order(GaloisElement a) const {
    long n = 1;
    GaloisElement e = a;
    GaloisElement id = canonical(1);
    while (!(e == id)) {
        e = mul(e, a);
        ++n;
    }
    return n;
}

long AbelianField::coset_index(GaloisElement a) const {
    auto it = std::lower_bound(cosets_.begin(), cosets_.end(), a);
    if (it == cosets_.end() || !(*it == a)) throw UsageError("not a canonical coset rep");
    return static_cast<long>(it - cosets_.begin());
}

bool AbelianField::subgroup_contains(long residue) const {
    if (f_ <= 1) return true;
    long r = ((residue % f_) + f_) % f_;
    return std::binary_search(H_.begin(), H_.end(), r);
}

GaloisElement AbelianField::artin_symbol(long p) const {
    if (f_ > 1 && f_ % p == 0)
        throw UsageError("prime " + std::to_string(p) + " divides conductor " + std::to_string(f_));
    return canonical(p);
}

DecompositionData AbelianField::decomposition_data(long ell) const {
    DecompositionData D;
    if (f_ <= 1) {
        D.subgroup = {GaloisElement{1}};
        D.places_above = 1;
        D.fixed_field = std::make_shared<AbelianField>(*this);
        return D;
    }
    long la = 1;
    long f2 = f_;
    while (f2 % ell == 0) {
        f2 /= ell;
        la *= ell;
    }
    std::vector<long> gens(H_.begin(), H_.end());
    // (Z/ell^a)^x component: residues congruent to 1 mod f/ell^a.
    for (long x = 1; x < f_; ++x)
        if (gcd_long(x, f_) == 1 && x % f2 == 1 % f2) gens.push_back(x);
    // the Frobenius part: y = ell mod f2, y = 1 mod ell^a (CRT).
    if (f2 > 1) {
        long y;
        if (la == 1) {
            y = ell % f_;
        } else {
            // solve y = ell mod f2, y = 1 mod la
            Int inv_la;
            inv_mod(Int(la % f2), Int(f2), inv_la);
            Int t = mod_pos(Int(ell % f2 - 1) * inv_la, Int(f2));
            y = ((1 + t.get_si() * la) % f_ + f_) % f_;
        }
        gens.push_back(y);
    }
    auto S = subgroup_closure(f_, gens);
    std::set<long> seen;
    for (long s : S) {
        auto c = canonical(s);
        if (seen.insert(c.residue).second) D.subgroup.push_back(c);
    }
    std::sort(D.subgroup.begin(), D.subgroup.end());
    D.places_above = euler_phi(f_) / static_cast<long>(S.size());
    D.fixed_field = std::make_shared<AbelianField>(fixed_field(D.subgroup));
    return D;
}

AbelianField AbelianField::fixed_field(const std::vector<GaloisElement>& sub) const {
    if (f_ <= 1) return *this;
    std::set<long> subset;
    for (auto g : sub) subset.insert(g.residue);
    std::vector<long> Hgens;
    for (long x = 1; x < f_; ++x) {
        if (gcd_long(x, f_) != 1) continue;
        if (subset.count(canonical(x).residue)) Hgens.push_back(x);
    }
    FieldCaps loose;
    loose.conductor_cap = f_;
    loose.degree_cap = degree_;
    return from_subgroup_minimized(f_, Hgens, loose);
}

bool AbelianField::contains(const AbelianField& other) const {
    if (other.f_ <= 1) return true;
    if (f_ % other.f_ != 0) return false;
    // H_this must land inside H_other under reduction mod f_other.
    for (long h : H_)
        if (!other.subgroup_contains(h % other.f_)) return false;
    return true;
}

std::vector<std::vector<GaloisElement>> all_subgroups(const AbelianField& F) {
    const auto& G = F.galois_group();
    auto key = [](const std::vector<GaloisElement>& v) {
        std::string k;
        for (auto g : v) k += std::to_string(g.residue) + ",";
        return k;
    };
    std::vector<std::vector<GaloisElement>> result;
    std::set<std::string> seen;
    std::vector<GaloisElement> triv = {F.canonical(1)};
    result.push_back(triv);
    seen.insert(key(triv));
    for (size_t i = 0; i < result.size(); ++i) {
        auto S = result[i];
        for (auto g : G) {
            // close S u {g}
            std::set<GaloisElement> s(S.begin(), S.end());
            if (s.count(g)) continue;
            std::vector<GaloisElement> frontier = {g};
            s.insert(g);
            while (!frontier.empty()) {
                std::vector<GaloisElement> next;
                for (auto a : frontier)
                    for (auto b : std::vector<GaloisElement>(s.begin(), s.end())) {
                        auto c = F.mul(a, b);
                        if (s.insert(c).second) next.push_back(c);
                    }
                frontier = std::move(next);
            }
            std::vector<GaloisElement> T(s.begin(), s.end());
            if (seen.insert(key(T)).second) result.push_back(std::move(T));
        }
    }
    return result;
}

std::vector<AbelianField> AbelianField::subfield_lattice() const {
    std::vector<AbelianField> out;
    for (const auto& S : all_subgroups(*this)) {
        AbelianField K = fixed_field(S);
        if (K.degree() > 1) out.push_back(std::move(K));
    }
    std::sort(out.begin(), out.end(), [](const AbelianField& a, const AbelianField& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
        return a.subgroup() < b.subgroup();
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const AbelianField& a, const AbelianField& b) { return a == b; }),
              out.end());
    return out;
}

std::string AbelianField::describe() const {
    std::ostringstream os;
    os << "f=" << f_ << ";H=";
    for (size_t i = 0; i < H_.size(); ++i) {
        if (i) os << ",";
        os << H_[i];
    }
    return os.str();
}

AbelianField parse_field_spec(const std::string& spec, const FieldCaps& caps) {
    auto fail = [&] { throw UsageError("bad field spec: " + spec); };
    if (spec.rfind("d=", 0) == 0) {
        long d = 0;
        try {
            d = std::stol(spec.substr(2));
        } catch (...) {
            fail();
        }
        return AbelianField::real_quadratic(d, caps);
    }
    if (spec.rfind("f=", 0) == 0) {
        auto semi = spec.find(';');
        if (semi == std::string::npos) fail();
        long f = 0;
        try {
            f = std::stol(spec.substr(2, semi - 2));
        } catch (...) {
            fail();
        }
        auto hpart = spec.substr(semi + 1);
        if (hpart.rfind("H=", 0) != 0) fail();
        std::vector<long> gens;
        std::stringstream ss(hpart.substr(2));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) gens.push_back(std::stol(tok));
        return AbelianField::from_subgroup(f, gens, caps);
    }
    fail();
    return AbelianField::real_quadratic(5);  // unreachable
}

std::vector<AbelianField> fields_of_conductor(long f, long degmax, const FieldCaps& caps) {
    std::vector<AbelianField> out;
    if (f <= 2) return out;
    long phi = euler_phi(f);
    // BFS over subgroups of (Z/f)^x containing -1.
    std::set<std::vector<long>> seen;
    std::vector<std::vector<long>> subs;
    auto base = subgroup_closure(f, {f - 1});
    subs.push_back(base);
    seen.insert(base);
    std::vector<long> units;
    for (long a = 1; a < f; ++a)
        if (gcd_long(a, f) == 1) units.push_back(a);
    for (size_t i = 0; i < subs.size(); ++i) {
        auto S = subs[i];
        for (long g : units) {
            if (std::binary_search(S.begin(), S.end(), g)) continue;
            auto gens = S;
            gens.push_back(g);
            auto T = subgroup_closure(f, gens);
            if (seen.insert(T).second) subs.push_back(std::move(T));
        }
    }
    for (const auto& S : subs) {
        long deg = phi / static_cast<long>(S.size());
        if (deg < 2 || deg > degmax) continue;
        if (true_conductor(f, S) != f) continue;
        out.push_back(AbelianField::from_subgroup(f, S, caps));
    }
    std::sort(out.begin(), out.end(), [](const AbelianField& a, const AbelianField& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.subgroup() < b.subgroup();
    });
    return out;
}

}  // namespace culog
