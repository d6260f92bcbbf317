#pragma once

#include <optional>
#include <vector>

#include "modseries/mod_series.hpp"

namespace modseries {

// Linear combination of polynomial and lacunary-power basis elements with a
// global w^j prefactor (j may be negative). Coefficients are exact rationals
// whose denominators are powers of 2; the expression is evaluated over Q,
// integrality is asserted, and only then reduced mod m.
struct LacunaryExpr {
    struct Term {
        Rat coeff = Rat(0);
        bool is_poly = false;
        std::vector<Rat> poly;       // ascending coefficients, when is_poly
        LacKind kind = LacKind::L2;  // when !is_poly
        int power = 1;               // >= 1
        std::vector<Rat> mul;        // polynomial multiplier of the LAC term;
                                     // empty means 1 (the w-polynomials in
                                     // front of the lacunary functions)
    };
    int prefactor_exp = 0;
    std::vector<Term> terms;

    static Term poly_term(std::vector<Rat> p, Rat c = Rat(1)) {
        Term t;
        t.coeff = std::move(c);
        t.is_poly = true;
        t.poly = std::move(p);
        return t;
    }
    static Term lac_term(LacKind k, int e = 1, Rat c = Rat(1), std::vector<Rat> mul = {}) {
        Term t;
        t.coeff = std::move(c);
        t.kind = k;
        t.power = e;
        t.mul = std::move(mul);
        return t;
    }
};

enum class LacVerify {
    TRUE_,
    FALSE_,
    NONINTEGRAL,  // evaluation over Z failed: mistranscribed identity
};

// Exact evaluation of expr to the target's order, then comparison mod m.
LacVerify verify_lacunary_identity(const LacunaryExpr& expr, const ModSeries& target);

// Rational evaluation of the expression (before reduction); throws
// ExactnessError on non-integral coefficients when as_integer is requested.
RationalSeries evaluate_lacunary_expr(const LacunaryExpr& expr, int order);

struct LacunaryAnsatz {
    int max_poly_degree = 0;
    std::vector<std::pair<LacKind, int>> lac_powers;  // (kind, power)
    std::vector<int> prefactor_exponents{0};
};

// Linear solve for the ansatz coefficients over Z/m; the returned expression
// is verified on all available coefficients of the target. Over composite
// moduli only unit pivots are used and the solve may fail.
std::optional<LacunaryExpr> fit_lacunary(const ModSeries& target, const LacunaryAnsatz& ansatz);

// True iff s^e * p_den == p_num to truncation (certifies s = (num/den)^{1/e}).
bool power_identity_check(const ModSeries& s, unsigned long e, const std::vector<u64>& p_num,
                          const std::vector<u64>& p_den);

// True iff every nonzero coefficient sits at an exponent divisible by k.
bool support_check(const ModSeries& s, int k);

}  // namespace modseries
