#pragma once

#include <vector>

#include "modseries/fp_linalg.hpp"

namespace modseries {

// Dense polynomials over F_p as coefficient vectors (no leading zeros).
using FpPoly = std::vector<u64>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }
inline bool fp_is_zero(const FpPoly& a) { return a.empty(); }

inline FpPoly fp_add(const FpPoly& a, const FpPoly& b, u64 p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = v >= p ? v - p : v;
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = submod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    fp_trim(r);
    return r;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const SmallField& F) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = F.addmul(r[i + j], a[i], b[j]);
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_scale(const FpPoly& a, u64 s, const SmallField& F) {
    FpPoly r = a;
    for (auto& v : r) v = F.mul(v, s);
    fp_trim(r);
    return r;
}

inline FpPoly fp_derivative(const FpPoly& a, const SmallField& F) {
    if (a.size() <= 1) return {};
    FpPoly r(a.size() - 1, 0);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.to(static_cast<u64>(i)));
    fp_trim(r);
    return r;
}

// division with remainder; den nonzero
inline void fp_divmod(const FpPoly& num, const FpPoly& den, const SmallField& F,
                      FpPoly& q, FpPoly& r) {
    r = num;
    fp_trim(r);
    q.clear();
    int dd = fp_deg(den);
    if (dd < 0) throw DomainError("fp_divmod: division by zero polynomial");
    u64 inv = F.inv(den.back());
    while (fp_deg(r) >= dd) {
        int shift = fp_deg(r) - dd;
        u64 f = F.mul(r.back(), inv);
        if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1, 0);
        q[shift] = f;
        for (int j = 0; j <= dd; ++j)
            r[shift + j] = submod(r[shift + j], F.mul(f, den[j]), F.p);
        fp_trim(r);
    }
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, const SmallField& F) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly q, r;
        fp_divmod(a, b, F, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 inv = F.inv(a.back());
        for (auto& v : a) v = F.mul(v, inv);  // monic
    }
    return a;
}

inline FpPoly fp_divexact(const FpPoly& num, const FpPoly& den, const SmallField& F) {
    FpPoly q, r;
    fp_divmod(num, den, F, q, r);
    if (!r.empty()) throw ExactnessError("fp_divexact: inexact polynomial division");
    return q;
}

inline FpPoly fp_pow(FpPoly a, unsigned long e, const SmallField& F) {
    FpPoly r{1 % F.p};
    while (e) {
        if (e & 1) r = fp_mul(r, a, F);
        a = fp_mul(a, a, F);
        e >>= 1;
    }
    return r;
}

}  // namespace modseries
