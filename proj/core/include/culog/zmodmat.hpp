#pragma once

#include <string>
#include <vector>

#include "culog/integers.hpp"

namespace culog {

// Dense matrix over Z/ell^m, row major.
struct ZMat {
    long rows = 0;
    long cols = 0;
    std::vector<std::vector<Int>> a;

    static ZMat zero(long r, long c) { return {r, c, std::vector<std::vector<Int>>(r, std::vector<Int>(c, Int(0)))}; }
    static ZMat identity(long n);
};

ZMat zmat_mul(const ZMat& x, const ZMat& y, const Int& mod);
std::vector<Int> zmat_apply_left(const std::vector<Int>& v, const ZMat& m, const Int& mod);

// Smith normal form over the local ring Z/ell^m: U*A*V = D diagonal with
// diagonal entries ell^v (v = m encodes zero). U, V invertible mod ell^m;
// inverses tracked alongside.
struct SNF {
    std::vector<long> diag_val;  // length min(rows, cols), ascending
    ZMat U, Uinv, V, Vinv;
};

SNF smith_normal_form(ZMat A, long ell, int m);

// Generators of { x : x*A = 0 mod ell^m } as rows.
ZMat left_kernel(const ZMat& A, long ell, int m);

// Solve x*A = b mod ell^m; false if inconsistent.
bool solve_left(const ZMat& A, const std::vector<Int>& b, long ell, int m, std::vector<Int>& x);

// Rank of the matrix mod ell (number of unit elementary divisors).
long rank_mod_ell(const ZMat& A, long ell);

// Finitely presented Z/ell^m-module: generators = columns of the relation
// matrix, relations = its rows. Invariant factors via SNF.
class FiniteLModule {
  public:
    FiniteLModule(long ell, int m, ZMat relations);

    long ell() const { return ell_; }
    int prec() const { return m_; }
    long generators() const { return rel_.cols; }

    // exponents e > 0 of the cyclic invariants Z/ell^e, descending
    const std::vector<long>& invariants() const { return inv_; }
    bool trivial() const { return inv_.empty(); }
    Int order() const;

    // image of a generator-coordinate vector in invariant coordinates (entry
    // i reduced mod ell^inv[i])
    std::vector<Int> coords(const std::vector<Int>& v) const;
    bool is_zero(const std::vector<Int>& v) const;

    std::string structure() const;  // "Z/3 x Z/9", "trivial"

  private:
    long ell_;
    int m_;
    Int mod_;
    ZMat rel_;
    SNF snf_;
    std::vector<long> inv_;
    std::vector<long> inv_cols_;  // which transformed coordinates survive
};

}  // namespace culog
