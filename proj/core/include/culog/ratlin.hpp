#pragma once

#include <vector>

#include "culog/integers.hpp"

namespace culog {

using RatMatrix = std::vector<std::vector<Rat>>;

// Solves A x = b exactly over Q (A given row-major, possibly overdetermined
// but consistent). Returns false if inconsistent or rank-deficient in the
// needed columns.
inline bool solve_rational(RatMatrix A, std::vector<Rat> b, std::vector<Rat>& x) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    std::vector<long> pivot_row(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[r]);
        std::swap(b[pr], b[r]);
        Rat inv = 1 / A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat m = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= m * A[r][j];
            b[i] -= m * b[r];
        }
        pivot_row[c] = static_cast<long>(r);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return false;  // inconsistent
    x.assign(cols, Rat(0));
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_row[c] < 0) return false;  // underdetermined
        x[c] = b[pivot_row[c]];
    }
    return true;
}

}  // namespace culog
