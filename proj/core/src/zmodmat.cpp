#include "culog/zmodmat.hpp"

#include <algorithm>

#include "culog/errors.hpp"

namespace culog {

ZMat ZMat::identity(long n) {
    ZMat m = zero(n, n);
    for (long i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
}

ZMat zmat_mul(const ZMat& x, const ZMat& y, const Int& mod) {
    if (x.cols != y.rows) throw UsageError("zmat_mul: shape mismatch");
    ZMat r = ZMat::zero(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            if (x.a[i][k] == 0) continue;
            for (long j = 0; j < y.cols; ++j)
                r.a[i][j] = mod_pos(r.a[i][j] + x.a[i][k] * y.a[k][j], mod);
        }
    return r;
}

std::vector<Int> zmat_apply_left(const std::vector<Int>& v, const ZMat& m, const Int& mod) {
    if (static_cast<long>(v.size()) != m.rows) throw UsageError("zmat_apply_left: shape mismatch");
    std::vector<Int> r(m.cols, Int(0));
    for (long i = 0; i < m.rows; ++i) {
        if (v[i] == 0) continue;
        for (long j = 0; j < m.cols; ++j) r[j] = mod_pos(r[j] + v[i] * m.a[i][j], mod);
    }
    return r;
}

namespace {

long val_of(const Int& x, long ell, int m) {
    if (x == 0) return m;
    return std::min<long>(valuation(x, Int(ell)), m);
}

struct SnfWork {
    ZMat A, U, Uinv, V, Vinv;
    Int mod;
    long ell;
    int m;

    void row_swap(long i, long j) {
        std::swap(A.a[i], A.a[j]);
        std::swap(U.a[i], U.a[j]);
        for (long r = 0; r < Uinv.rows; ++r) std::swap(Uinv.a[r][i], Uinv.a[r][j]);
    }
    void col_swap(long i, long j) {
        for (long r = 0; r < A.rows; ++r) std::swap(A.a[r][i], A.a[r][j]);
        for (long r = 0; r < V.rows; ++r) std::swap(V.a[r][i], V.a[r][j]);
        std::swap(Vinv.a[i], Vinv.a[j]);
    }
    // row i *= u (unit)
    void row_scale(long i, const Int& u) {
        Int ui;
        inv_mod(u, mod, ui);
        for (auto& x : A.a[i]) x = mod_pos(x * u, mod);
        for (auto& x : U.a[i]) x = mod_pos(x * u, mod);
        for (long r = 0; r < Uinv.rows; ++r) Uinv.a[r][i] = mod_pos(Uinv.a[r][i] * ui, mod);
    }
    // row i += c * row j
    void row_addmul(long i, long j, const Int& c) {
        for (long k = 0; k < A.cols; ++k) A.a[i][k] = mod_pos(A.a[i][k] + c * A.a[j][k], mod);
        for (long k = 0; k < U.cols; ++k) U.a[i][k] = mod_pos(U.a[i][k] + c * U.a[j][k], mod);
        for (long r = 0; r < Uinv.rows; ++r)
            Uinv.a[r][j] = mod_pos(Uinv.a[r][j] - c * Uinv.a[r][i], mod);
    }
    // col i += c * col j
    void col_addmul(long i, long j, const Int& c) {
        for (long r = 0; r < A.rows; ++r) A.a[r][i] = mod_pos(A.a[r][i] + c * A.a[r][j], mod);
        for (long r = 0; r < V.rows; ++r) V.a[r][i] = mod_pos(V.a[r][i] + c * V.a[r][j], mod);
        for (long k = 0; k < Vinv.cols; ++k)
            Vinv.a[j][k] = mod_pos(Vinv.a[j][k] - c * Vinv.a[i][k], mod);
    }
};

}  // namespace

SNF smith_normal_form(ZMat A, long ell, int m) {
    Int mod = pow_int(ell, static_cast<unsigned long>(m));
    for (auto& row : A.a)
        for (auto& x : row) x = mod_pos(x, mod);
    SnfWork w{std::move(A), ZMat::identity(0), ZMat::identity(0), ZMat::identity(0),
              ZMat::identity(0), mod, ell, m};
    w.U = ZMat::identity(w.A.rows);
    w.Uinv = ZMat::identity(w.A.rows);
    w.V = ZMat::identity(w.A.cols);
    w.Vinv = ZMat::identity(w.A.cols);
    long n = std::min(w.A.rows, w.A.cols);
    std::vector<long> diag;
    for (long t = 0; t < n; ++t) {
        // pivot of minimal valuation in the remaining block
        long bi = -1, bj = -1, bv = m;
        for (long i = t; i < w.A.rows; ++i)
            for (long j = t; j < w.A.cols; ++j) {
                long v = val_of(w.A.a[i][j], ell, m);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) {
            diag.push_back(m);
            continue;
        }
        if (bi != t) w.row_swap(t, bi);
        if (bj != t) w.col_swap(t, bj);
        Int piv = w.A.a[t][t];
        Int unit = piv / pow_int(ell, bv);
        Int uinv;
        inv_mod(unit, mod, uinv);
        w.row_scale(t, uinv);  // pivot becomes ell^bv
        Int pw = pow_int(ell, bv);
        for (long i = t + 1; i < w.A.rows; ++i) {
            if (w.A.a[i][t] == 0) continue;
            Int c = w.A.a[i][t] / pw;  // exact: the ring is local
            w.row_addmul(i, t, mod_pos(-c, mod));
        }
        for (long j = t + 1; j < w.A.cols; ++j) {
            if (w.A.a[t][j] == 0) continue;
            Int c = w.A.a[t][j] / pw;
            w.col_addmul(j, t, mod_pos(-c, mod));
        }
        diag.push_back(bv);
    }
    // min-valuation pivoting already yields ascending valuations
    return {std::move(diag), std::move(w.U), std::move(w.Uinv), std::move(w.V), std::move(w.Vinv)};
}

ZMat left_kernel(const ZMat& A, long ell, int m) {
    SNF s = smith_normal_form(A, ell, m);
    Int mod = pow_int(ell, static_cast<unsigned long>(m));
    ZMat out = ZMat::zero(0, A.rows);
    long len = static_cast<long>(s.diag_val.size());
    for (long j = 0; j < A.rows; ++j) {
        long v = j < len ? s.diag_val[j] : 0;
        if (j < len && v == 0) continue;  // ell^m * row is zero
        Int c = j < len ? pow_int(ell, m - v) : Int(1);
        std::vector<Int> row(A.rows);
        bool nz = false;
        for (long k = 0; k < A.rows; ++k) {
            row[k] = mod_pos(c * s.U.a[j][k], mod);
            if (row[k] != 0) nz = true;
        }
        if (nz) {
            out.a.push_back(std::move(row));
            ++out.rows;
        }
    }
    return out;
}

bool solve_left(const ZMat& A, const std::vector<Int>& b, long ell, int m, std::vector<Int>& x) {
    if (static_cast<long>(b.size()) != A.cols) throw UsageError("solve_left: shape mismatch");
    SNF s = smith_normal_form(A, ell, m);
    Int mod = pow_int(ell, static_cast<unsigned long>(m));
    std::vector<Int> bv = zmat_apply_left(b, s.V, mod);
    long len = static_cast<long>(s.diag_val.size());
    std::vector<Int> y(A.rows, Int(0));
    for (long j = 0; j < A.cols; ++j) {
        if (j < len) {
            long v = s.diag_val[j];
            if (val_of(bv[j], ell, m) < v) return false;
            if (j < A.rows) y[j] = bv[j] / pow_int(ell, v);
        } else if (mod_pos(bv[j], mod) != 0) {
            return false;
        }
    }
    x = zmat_apply_left(y, s.U, mod);
    return true;
}

long rank_mod_ell(const ZMat& A, long ell) {
    std::vector<std::vector<long>> a(A.rows, std::vector<long>(A.cols));
    for (long i = 0; i < A.rows; ++i)
        for (long j = 0; j < A.cols; ++j) a[i][j] = mpz_fdiv_ui(A.a[i][j].get_mpz_t(), ell);
    long rank = 0;
    for (long c = 0; c < A.cols && rank < A.rows; ++c) {
        long pr = -1;
        for (long r = rank; r < A.rows; ++r)
            if (a[r][c] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[pr], a[rank]);
        Int pi;
        inv_mod(Int(a[rank][c]), Int(ell), pi);
        long pinv = pi.get_si();
        for (long r = 0; r < A.rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            long f = (a[r][c] * pinv) % ell;
            for (long j = c; j < A.cols; ++j) a[r][j] = ((a[r][j] - f * a[rank][j]) % ell + ell) % ell;
        }
        ++rank;
    }
    return rank;
}

FiniteLModule::FiniteLModule(long ell, int m, ZMat relations)
    : ell_(ell), m_(m), mod_(pow_int(ell, static_cast<unsigned long>(m))), rel_(std::move(relations)) {
    snf_ = smith_normal_form(rel_, ell_, m_);
    long len = static_cast<long>(snf_.diag_val.size());
    struct Comp {
        long col;
        long e;
    };
    std::vector<Comp> comps;
    for (long j = 0; j < rel_.cols; ++j) {
        long e = j < len ? snf_.diag_val[j] : m_;
        if (e > 0) comps.push_back({j, e});
    }
    std::stable_sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) { return a.e > b.e; });
    for (const auto& c : comps) {
        inv_.push_back(c.e);
        inv_cols_.push_back(c.col);
    }
}

Int FiniteLModule::order() const {
    Int o = 1;
    for (long e : inv_) o *= pow_int(ell_, e);
    return o;
}

std::vector<Int> FiniteLModule::coords(const std::vector<Int>& v) const {
    if (static_cast<long>(v.size()) != rel_.cols) throw UsageError("module coords: shape mismatch");
    std::vector<Int> t = zmat_apply_left(v, snf_.V, mod_);
    std::vector<Int> out(inv_.size());
    for (size_t i = 0; i < inv_.size(); ++i)
        out[i] = mod_pos(t[inv_cols_[i]], pow_int(ell_, inv_[i]));
    return out;
}

bool FiniteLModule::is_zero(const std::vector<Int>& v) const {
    for (const auto& c : coords(v))
        if (c != 0) return false;
    return true;
}

std::string FiniteLModule::structure() const {
    if (inv_.empty()) return "trivial";
    std::string s;
    for (size_t i = 0; i < inv_.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + pow_int(ell_, inv_[i]).get_str();
    }
    return s;
}

}  // namespace culog
