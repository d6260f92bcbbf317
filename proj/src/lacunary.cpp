#include "modseries/lacunary.hpp"

#include <algorithm>

#include "modseries/zm_solve.hpp"

namespace modseries {

RationalSeries evaluate_lacunary_expr(const LacunaryExpr& expr, int order) {
    int j = expr.prefactor_exp;
    int inner_order = order + std::max(0, -j);
    RationalSeries acc("w", inner_order);
    for (const auto& t : expr.terms) {
        if (sgn(t.coeff) == 0) continue;
        if (t.is_poly) {
            for (int a = 0; a < static_cast<int>(t.poly.size()) && a <= inner_order; ++a)
                acc[a] += t.coeff * t.poly[a];
        } else {
            RationalSeries base = to_rational(lacunary_lift(t.kind, inner_order));
            RationalSeries powed = (t.power == 1) ? base : base.pow(t.power);
            if (t.mul.empty()) {
                for (int k = 0; k <= inner_order; ++k) acc[k] += t.coeff * powed[k];
            } else {
                for (int a = 0; a < static_cast<int>(t.mul.size()) && a <= inner_order; ++a) {
                    if (sgn(t.mul[a]) == 0) continue;
                    Rat c = t.coeff * t.mul[a];
                    for (int k = 0; k + a <= inner_order; ++k) acc[k + a] += c * powed[k];
                }
            }
        }
    }
    if (j == 0) return acc;
    if (j > 0) return acc.shift_up(j).truncated(order);
    // j < 0: coefficients below -j must vanish
    for (int k = 0; k < -j; ++k)
        if (sgn(acc[k]) != 0)
            throw DomainError("lacunary expr: negative prefactor on nonzero low coefficients");
    RationalSeries out("w", order);
    for (int k = 0; k <= order && k - j <= inner_order; ++k) out[k] = acc[k - j];
    return out;
}

LacVerify verify_lacunary_identity(const LacunaryExpr& expr, const ModSeries& target) {
    RationalSeries val = evaluate_lacunary_expr(expr, target.order());
    for (int k = 0; k <= val.order(); ++k)
        if (!is_integral(val[k])) return LacVerify::NONINTEGRAL;
    ModSeries lhs = reduce(val, target.modulus());
    int n = std::min(lhs.order(), target.order());
    for (int k = 0; k <= n; ++k)
        if (lhs[k] != target[k]) return LacVerify::FALSE_;
    return LacVerify::TRUE_;
}

std::optional<LacunaryExpr> fit_lacunary(const ModSeries& target, const LacunaryAnsatz& ansatz) {
    u64 m = target.modulus();
    int n = target.order();
    if (n < 4 * ansatz.max_poly_degree)
        throw DomainError("fit_lacunary: target order below 4x poly degree guard");
    for (int j : ansatz.prefactor_exponents) {
        // equations: sum_u x_u B_u[k] = target[k + j], k = 0..n-j
        int kmax = n - std::max(j, 0);
        if (kmax < 1) continue;
        // prefactor consistency: target coefficients below j must vanish
        if (j > 0) {
            bool ok = true;
            for (int k = 0; k < j; ++k) ok &= (target[k] == 0);
            if (!ok) continue;
        }
        int d = ansatz.max_poly_degree;
        int U = (d + 1) + static_cast<int>(ansatz.lac_powers.size());
        std::vector<ModSeries> lac_cols;
        for (auto [kind, e] : ansatz.lac_powers) {
            ModSeries base = lacunary_series(kind, m, kmax);
            lac_cols.push_back(e == 1 ? base : base.pow(static_cast<unsigned long>(e)));
        }
        std::vector<std::vector<u64>> rows(kmax + 1, std::vector<u64>(U + 1, 0));
        for (int k = 0; k <= kmax; ++k) {
            if (k <= d) rows[k][k] = 1;
            for (size_t t = 0; t < lac_cols.size(); ++t) rows[k][d + 1 + t] = lac_cols[t][k];
            rows[k][U] = target.coeff(k + j);
        }
        auto kernel = kernel_zm(rows, U + 1, m);
        std::sort(kernel.begin(), kernel.end(), [](const auto& x, const auto& y) {
            int cx = 0, cy = 0;
            for (u64 v : x) cx += (v != 0);
            for (u64 v : y) cy += (v != 0);
            return cx < cy;
        });
        for (const auto& v : kernel) {
            auto inv = invmod(v[U] ? m - v[U] : 0, m);  // need -v[U] to be a unit
            if (!inv) continue;
            LacunaryExpr expr;
            expr.prefactor_exp = j;
            std::vector<Rat> poly(d + 1, Rat(0));
            bool has_poly = false;
            for (int a = 0; a <= d; ++a) {
                u64 c = mulmod(v[a], *inv, m);
                if (c) {
                    poly[a] = Rat(static_cast<unsigned long>(c));
                    has_poly = true;
                }
            }
            if (has_poly) expr.terms.push_back(LacunaryExpr::poly_term(std::move(poly)));
            for (size_t t = 0; t < ansatz.lac_powers.size(); ++t) {
                u64 c = mulmod(v[d + 1 + t], *inv, m);
                if (c)
                    expr.terms.push_back(LacunaryExpr::lac_term(
                        ansatz.lac_powers[t].first, ansatz.lac_powers[t].second,
                        Rat(static_cast<unsigned long>(c))));
            }
            if (expr.terms.empty()) continue;
            if (verify_lacunary_identity(expr, target) == LacVerify::TRUE_) return expr;
        }
    }
    return std::nullopt;
}

bool power_identity_check(const ModSeries& s, unsigned long e, const std::vector<u64>& p_num,
                          const std::vector<u64>& p_den) {
    u64 m = s.modulus();
    int n = s.order();
    ModSeries num(s.var(), m, n), den(s.var(), m, n);
    for (int k = 0; k < static_cast<int>(p_num.size()) && k <= n; ++k) num[k] = p_num[k] % m;
    for (int k = 0; k < static_cast<int>(p_den.size()) && k <= n; ++k) den[k] = p_den[k] % m;
    return (s.pow(e) * den) == num.truncated(n);
}

bool support_check(const ModSeries& s, int k) {
    if (k < 2) throw DomainError("support_check: k must be >= 2");
    for (int i = 0; i <= s.order(); ++i)
        if (s[i] && i % k != 0) return false;
    return true;
}

}  // namespace modseries
