#include "modseries/zm_solve.hpp"

#include <utility>

namespace modseries {

std::vector<std::vector<u64>> kernel_zm(const std::vector<std::vector<u64>>& rows_of_A,
                                        int ncols, u64 m) {
    int nrows = static_cast<int>(rows_of_A.size());
    int C = nrows + ncols;
    std::vector<std::vector<u64>> M(ncols, std::vector<u64>(C, 0));
    for (int i = 0; i < ncols; ++i) {
        for (int j = 0; j < nrows; ++j) M[i][j] = rows_of_A[j][i] % m;
        M[i][nrows + i] = 1;
    }
    auto pp = prime_power_base(m);
    auto valuation = [&](u64 x) -> std::pair<int, u64> {
        if (x == 0) return {1 << 30, 0};
        if (!pp) return {invmod(x, m) ? 0 : (1 << 30), x};
        int v = 0;
        u64 y = x;
        while (y % *pp == 0) { y /= *pp; ++v; }
        return {v, y};
    };
    int done = 0;
    for (int c = 0; c < nrows && done < static_cast<int>(M.size()); ++c) {
        int best = -1, bestv = 1 << 30;
        for (int r = done; r < static_cast<int>(M.size()); ++r) {
            auto [v, u] = valuation(M[r][c]);
            if (v < bestv) { bestv = v; best = r; }
        }
        if (best < 0 || bestv >= (1 << 30)) continue;
        std::swap(M[best], M[done]);
        auto [v, u] = valuation(M[done][c]);
        auto inv = invmod(u, m);
        if (!inv) continue;
        for (auto& x : M[done]) x = mulmod(x, *inv, m);
        u64 pivot = M[done][c];  // p^v, or 1 for a unit pivot
        for (int r = 0; r < static_cast<int>(M.size()); ++r) {
            if (r == done || M[r][c] == 0) continue;
            u64 f = M[r][c] / pivot;
            if (!f) continue;
            for (int j = 0; j < C; ++j)
                M[r][j] = submod(M[r][j], mulmod(f, M[done][j], m), m);
        }
        if (v > 0) {
            u64 ann = m / pivot;
            std::vector<u64> extra(C);
            for (int j = 0; j < C; ++j) extra[j] = mulmod(ann, M[done][j], m);
            bool nonzero = false;
            for (u64 x : extra) nonzero |= (x != 0);
            if (nonzero) M.push_back(std::move(extra));
        }
        ++done;
    }
    std::vector<std::vector<u64>> kernel;
    for (const auto& row : M) {
        bool leftzero = true;
        for (int j = 0; j < nrows; ++j)
            if (row[j]) { leftzero = false; break; }
        if (!leftzero) continue;
        std::vector<u64> v(row.begin() + nrows, row.end());
        bool nonzero = false;
        for (u64 x : v) nonzero |= (x != 0);
        if (nonzero) kernel.push_back(std::move(v));
    }
    return kernel;
}

}  // namespace modseries
