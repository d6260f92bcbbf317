#include "modseries/p_curvature.hpp"

#include "modseries/stirling.hpp"

namespace modseries {

namespace {

// D-form coefficient polynomials a_0..a_r. Theta form converts via
// a_k(w) = w^k sum_{i>=k} S2(i,k) p_i(w).
std::vector<FpPoly> d_form_modp(const ModOperator& L) {
    int Q = L.order();
    if (Q < 0) throw DomainError("p_curvature: zero operator");
    if (L.form == OperatorForm::D) {
        std::vector<FpPoly> a(Q + 1);
        for (int i = 0; i <= Q && i < static_cast<int>(L.coeffs.size()); ++i) {
            a[i] = L.coeffs[i];
            fp_trim(a[i]);
        }
        return a;
    }
    auto S2 = stirling2_table(Q);
    SmallField F(L.p);
    std::vector<FpPoly> a(Q + 1);
    for (int k = 0; k <= Q; ++k) {
        FpPoly acc;
        for (int i = k; i < static_cast<int>(L.coeffs.size()); ++i) {
            u64 s2 = residue(S2[i][k], L.p);
            if (!s2 || L.coeffs[i].empty()) continue;
            FpPoly part = fp_scale(L.coeffs[i], s2, F);
            acc = fp_add(acc, part, L.p);
        }
        if (!acc.empty()) {
            FpPoly shifted(acc.size() + k, 0);
            for (size_t j = 0; j < acc.size(); ++j) shifted[j + k] = acc[j];
            a[k] = std::move(shifted);
        }
    }
    return a;
}

using PolyMatrix = std::vector<FpPoly>;  // row-major r x r

PolyMatrix mat_mul(const PolyMatrix& A, const PolyMatrix& B, int r, const SmallField& F) {
    PolyMatrix C(static_cast<size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            const FpPoly& a = A[static_cast<size_t>(i) * r + k];
            if (fp_is_zero(a)) continue;
            for (int j = 0; j < r; ++j) {
                const FpPoly& b = B[static_cast<size_t>(k) * r + j];
                if (fp_is_zero(b)) continue;
                C[static_cast<size_t>(i) * r + j] =
                    fp_add(C[static_cast<size_t>(i) * r + j], fp_mul(a, b, F), F.p);
            }
        }
    return C;
}

bool mat_is_zero(const PolyMatrix& A) {
    for (const auto& x : A)
        if (!fp_is_zero(x)) return false;
    return true;
}

}  // namespace

RationalFunctionMatrix p_curvature(const ModOperator& L, PCurvStrategy strategy) {
    u64 p = L.p;
    if (!is_prime_u64(p)) throw DomainError("p_curvature: modulus must be prime");
    SmallField F(p);
    auto a = d_form_modp(L);
    int r = static_cast<int>(a.size()) - 1;
    if (r < 1) throw DomainError("p_curvature: operator order must be >= 1");
    FpPoly ell = a[r];
    if (fp_is_zero(ell)) throw DomainError("p_curvature: degenerate leading coefficient");

    RationalFunctionMatrix out;
    out.p = p;
    out.size = r;
    out.e.assign(static_cast<size_t>(r) * r, {});

    if (strategy == PCurvStrategy::PolynomialLift) {
        // B[i][j] = ell * A[i][j]: superdiagonal ell, last row -a_j
        PolyMatrix B(static_cast<size_t>(r) * r);
        for (int i = 0; i + 1 < r; ++i) B[static_cast<size_t>(i) * r + i + 1] = ell;
        for (int j = 0; j < r; ++j) {
            FpPoly neg = a[j];
            for (auto& v : neg) v = v ? p - v : 0;
            B[static_cast<size_t>(r - 1) * r + j] = neg;
        }
        FpPoly ellp = fp_derivative(ell, F);
        PolyMatrix N = B;
        for (u64 k = 1; k < p; ++k) {
            PolyMatrix NB = mat_mul(N, B, r, F);
            u64 kmod = F.to(k);
            for (size_t t = 0; t < N.size(); ++t) {
                FpPoly term = fp_mul(ell, fp_derivative(N[t], F), F);
                FpPoly term2 = fp_scale(fp_mul(ellp, N[t], F), kmod ? p - kmod : 0, F);
                N[t] = fp_add(fp_add(term, term2, p), NB[t], p);
            }
        }
        // Lambda_p = N / ell^p, reduced entrywise
        FpPoly den_full = fp_pow(ell, static_cast<unsigned long>(p), F);
        for (int t = 0; t < r * r; ++t) {
            if (fp_is_zero(N[t])) continue;
            FpPoly g = fp_gcd(N[t], den_full, F);
            RationalFunctionMatrix::Entry ent;
            ent.num = fp_divexact(N[t], g, F);
            ent.den = fp_divexact(den_full, g, F);
            u64 lead = ent.den.back();
            if (lead != 1) {
                u64 inv = F.inv(lead);
                for (auto& v : ent.den) v = F.mul(v, inv);
                for (auto& v : ent.num) v = F.mul(v, inv);
            }
            out.e[t] = std::move(ent);
        }
        return out;
    }

    // Reference implementation with per-step reduced fractions.
    struct Frac {
        FpPoly num;
        FpPoly den{1};
    };
    auto reduce_frac = [&](Frac& f) {
        if (fp_is_zero(f.num)) { f.den = {1}; return; }
        FpPoly g = fp_gcd(f.num, f.den, F);
        if (fp_deg(g) > 0) {
            f.num = fp_divexact(f.num, g, F);
            f.den = fp_divexact(f.den, g, F);
        }
        u64 lead = f.den.back();
        if (lead != 1) {
            u64 inv = F.inv(lead);
            for (auto& v : f.den) v = F.mul(v, inv);
            for (auto& v : f.num) v = F.mul(v, inv);
        }
    };
    auto frac_add = [&](const Frac& x, const Frac& y) {
        Frac r2;
        r2.num = fp_add(fp_mul(x.num, y.den, F), fp_mul(y.num, x.den, F), p);
        r2.den = fp_mul(x.den, y.den, F);
        reduce_frac(r2);
        return r2;
    };
    auto frac_mul = [&](const Frac& x, const Frac& y) {
        Frac r2;
        r2.num = fp_mul(x.num, y.num, F);
        r2.den = fp_mul(x.den, y.den, F);
        reduce_frac(r2);
        return r2;
    };
    auto frac_deriv = [&](const Frac& x) {
        Frac r2;
        r2.num = fp_sub(fp_mul(fp_derivative(x.num, F), x.den, F),
                        fp_mul(x.num, fp_derivative(x.den, F), F), p);
        r2.den = fp_mul(x.den, x.den, F);
        reduce_frac(r2);
        return r2;
    };
    std::vector<Frac> A(static_cast<size_t>(r) * r);
    for (int i = 0; i + 1 < r; ++i) A[static_cast<size_t>(i) * r + i + 1].num = {1};
    for (int j = 0; j < r; ++j) {
        Frac f;
        f.num = a[j];
        for (auto& v : f.num) v = v ? p - v : 0;
        f.den = ell;
        reduce_frac(f);
        A[static_cast<size_t>(r - 1) * r + j] = f;
    }
    std::vector<Frac> Lam = A;
    for (u64 k = 1; k < p; ++k) {
        std::vector<Frac> next(static_cast<size_t>(r) * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Frac acc = frac_deriv(Lam[static_cast<size_t>(i) * r + j]);
                for (int t = 0; t < r; ++t)
                    acc = frac_add(acc, frac_mul(Lam[static_cast<size_t>(i) * r + t],
                                                 A[static_cast<size_t>(t) * r + j]));
                next[static_cast<size_t>(i) * r + j] = acc;
            }
        Lam = std::move(next);
    }
    for (int t = 0; t < r * r; ++t) {
        out.e[t].num = Lam[t].num;
        out.e[t].den = Lam[t].den;
    }
    return out;
}

PCurvClass classify_p_curvature(const ModOperator& L) {
    RationalFunctionMatrix M = p_curvature(L);
    if (M.is_zero()) return PCurvClass::ZERO;
    SmallField F(L.p);
    int r = M.size;
    // common-denominator polynomial matrix: nilpotency of Lambda_p is
    // unaffected by the scalar denominator
    FpPoly den{1};
    for (const auto& ent : M.e)
        den = fp_divexact(fp_mul(den, ent.den, F), fp_gcd(den, ent.den, F), F);
    PolyMatrix N(static_cast<size_t>(r) * r);
    for (int t = 0; t < r * r; ++t) {
        if (fp_is_zero(M.e[t].num)) continue;
        N[t] = fp_mul(M.e[t].num, fp_divexact(den, M.e[t].den, F), F);
    }
    PolyMatrix P = N;
    int pw = 1;
    while (pw < r) {
        P = mat_mul(P, P, r, F);
        pw *= 2;
        if (mat_is_zero(P)) return PCurvClass::NILPOTENT;
    }
    return mat_is_zero(P) ? PCurvClass::NILPOTENT : PCurvClass::OTHER;
}

const char* pcurv_class_name(PCurvClass c) {
    switch (c) {
        case PCurvClass::ZERO: return "ZERO";
        case PCurvClass::NILPOTENT: return "NILPOTENT";
        default: return "OTHER";
    }
}

}  // namespace modseries
