#pragma once

#include <cstdint>
#include <vector>

#include "modseries/modring.hpp"

namespace modseries {

// Field arithmetic for p < 2^31: reduction by precomputed 2^64/p multiplier.
struct SmallField {
    u64 p;
    u64 magic;
    explicit SmallField(u64 p_) : p(p_), magic(~u64(0) / p_) {}
    u64 to(u64 a) const { return a % p; }
    u64 from(u64 a) const { return a; }
    u64 reduce(u64 a) const {
        // q underestimates a/p by at most 2
        u64 q = static_cast<u64>(((u128)magic * a) >> 64);
        u64 r = a - q * p;
        while (r >= p) r -= p;
        return r;
    }
    u64 mul(u64 a, u64 b) const { return reduce(a * b); }
    u64 addmul(u64 a, u64 b, u64 c) const { return reduce(a + b * c); }
    u64 inv(u64 a) const { return *invmod(a, p); }
    u64 neg(u64 a) const { return a ? p - a : 0; }
};

// Montgomery arithmetic for odd p < 2^63 (CRT primes).
struct MontField {
    u64 p;
    u64 ninv;  // -p^{-1} mod 2^64
    u64 r2;    // 2^128 mod p
    explicit MontField(u64 p_) : p(p_) {
        u64 inv = p;  // Newton iteration for p^{-1} mod 2^64
        for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
        ninv = ~inv + 1;
        u64 r1 = (~u64(0) % p) + 1;  // 2^64 mod p
        if (r1 == p) r1 = 0;
        r2 = static_cast<u64>((u128)r1 * r1 % p);  // 2^128 mod p
    }
    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * ninv;
        u128 s = t + (u128)m * p;
        u64 r = static_cast<u64>(s >> 64);
        return r >= p ? r - p : r;
    }
    u64 to(u64 a) const { return redc((u128)(a % p) * r2); }
    u64 from(u64 a) const { return redc(a); }
    u64 mul(u64 a, u64 b) const { return redc((u128)a * b); }
    u64 addmul(u64 a, u64 b, u64 c) const {
        u64 r = a + mul(b, c);
        return r >= p ? r - p : r;
    }
    u64 inv(u64 a) const { return to(*invmod(from(a), p)); }
    u64 neg(u64 a) const { return a ? p - a : 0; }
};

// Dense row-major matrix over F_p.
struct FpMatrix {
    int rows = 0, cols = 0;
    std::vector<u64> a;
    FpMatrix() = default;
    FpMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    u64* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
    const u64* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }
};

struct RrefResult {
    int rank = 0;
    std::vector<int> pivot_col;  // pivot column of each pivot row
    u64 det_pivots = 1;          // product of pivot values with swap sign (mod p)
};

// In-place reduced row echelon form with the fixed deterministic pivot rule:
// columns left to right, pivot = first remaining row with a nonzero entry.
template <class Field>
RrefResult rref(FpMatrix& M, const Field& F) {
    RrefResult res;
    const u64 one = F.to(1);
    res.det_pivots = one;
    int r0 = 0;
    for (int c = 0; c < M.cols && r0 < M.rows; ++c) {
        int pr = -1;
        for (int r = r0; r < M.rows; ++r)
            if (M.row(r)[c]) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != r0) {
            for (int j = 0; j < M.cols; ++j) std::swap(M.row(pr)[j], M.row(r0)[j]);
            res.det_pivots = F.neg(res.det_pivots);
        }
        u64* prow = M.row(r0);
        res.det_pivots = F.mul(res.det_pivots, prow[c]);
        u64 inv = F.inv(prow[c]);
        for (int j = c; j < M.cols; ++j) prow[j] = F.mul(prow[j], inv);
        for (int r = 0; r < M.rows; ++r) {
            if (r == r0) continue;
            u64 f = M.row(r)[c];
            if (!f) continue;
            u64 fneg = F.neg(f);
            u64* rrow = M.row(r);
            for (int j = c; j < M.cols; ++j)
                rrow[j] = F.addmul(rrow[j], fneg, prow[j]);
        }
        res.pivot_col.push_back(c);
        ++r0;
    }
    res.rank = r0;
    return res;
}

// Nullspace basis from an RREF matrix; one vector per free column, entries in
// plain (non-Montgomery) representation.
template <class Field>
std::vector<std::vector<u64>> nullspace_basis(const FpMatrix& M, const RrefResult& rr,
                                              const Field& F) {
    std::vector<char> is_pivot(M.cols, 0);
    for (int c : rr.pivot_col) is_pivot[c] = 1;
    std::vector<std::vector<u64>> basis;
    for (int fc = 0; fc < M.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<u64> v(M.cols, 0);
        v[fc] = 1;
        for (int r = 0; r < rr.rank; ++r) {
            u64 e = M.row(r)[fc];
            if (e) v[rr.pivot_col[r]] = F.from(F.neg(e));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace modseries
