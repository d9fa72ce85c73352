#pragma once
/* Test-only oracles, kept independent of the library's sparse elimination:
 * plain dense Gaussian elimination over exact field arithmetic, and a dense
 * nullspace dimension count. Used to freeze expected values for derived
 * examples and to cross-check the production path.
 */
#include <vector>

#include "korlov/exactlin.hpp"

namespace oracle {

using korlov::ExactMatrix;
using korlov::Field;
using korlov::Rat;

inline std::vector<std::vector<Rat>> to_dense(const ExactMatrix& m) {
    std::vector<std::vector<Rat>> a(m.nrows(), std::vector<Rat>(m.ncols()));
    for (int c = 0; c < m.ncols(); ++c)
        for (auto& [r, v] : m.column(c)) a[r][c] = v;
    return a;
}

inline long long dense_rank(std::vector<std::vector<Rat>> a, const Field& f) {
    int nr = (int)a.size(), nc = nr ? (int)a[0].size() : 0;
    long long rank = 0;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int piv = -1;
        for (int r = row; r < nr; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[row]);
        Rat inv = f.inv(a[row][col]);
        for (int c = col; c < nc; ++c) a[row][c] = f.mul(a[row][c], inv);
        for (int r = 0; r < nr; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            Rat lam = a[r][col];
            for (int c = col; c < nc; ++c) a[r][c] = f.sub(a[r][c], f.mul(lam, a[row][c]));
        }
        ++row;
        ++rank;
    }
    return rank;
}

inline long long dense_rank(const ExactMatrix& m) { return dense_rank(to_dense(m), m.field()); }

inline long long dense_kernel_dim(const ExactMatrix& m) { return m.ncols() - dense_rank(m); }

}  // namespace oracle
