#pragma once

#include <vector>

#include "modseries/qpoly.hpp"
#include "modseries/series.hpp"

namespace modseries {

// Polynomial differential equation as an explicit term list: each term is
// coeff * w^wexp * prod_j F^(ders[j]). The coefficient domain C is Rat for
// numeric equations and QPoly for the symbolic-q family.
template <class C>
struct NonlinearOde {
    struct Term {
        C coeff;
        int wexp = 0;
        std::vector<int> ders;  // sorted derivative orders; empty = pure forcing term
    };
    std::vector<Term> terms;

    int max_der() const {
        int d = 0;
        for (const auto& t : terms)
            for (int k : t.ders) d = std::max(d, k);
        return d;
    }
    int max_wexp() const {
        int a = 0;
        for (const auto& t : terms) a = std::max(a, t.wexp);
        return a;
    }
};

using NonlinearODE = NonlinearOde<Rat>;
using QNonlinearODE = NonlinearOde<QPoly>;

enum class OdeName { TUTTE_Q, TUTTE_Q4_REDUCED, RATIO_2F1 };

// Tutte's equation at a fixed rational q, the reduced q=4 equation for
// F = H + w, or the third-order equation satisfied by the 2F1 ratio series.
NonlinearODE make_ode(OdeName name, const Rat& q = Rat(0));

// Tutte's equation with q kept symbolic.
QNonlinearODE make_tutte_ode_symbolic();

// Exact residual; result order = input order - (max derivative order +
// max w exponent), per the truncation contract.
template <class C>
Series<C> residual(const NonlinearOde<C>& ode, const Series<C>& s) {
    int drop = ode.max_der() + ode.max_wexp();
    int out = s.order() - drop;
    if (out < 0) throw DomainError("residual: series order too small");
    // derivative cache
    std::vector<Series<C>> der{s};
    for (int k = 1; k <= ode.max_der(); ++k) der.push_back(der.back().derivative());
    Series<C> acc(s.var(), out);
    for (const auto& t : ode.terms) {
        Series<C> prod(s.var(), out);
        prod[0] = coeff_traits<C>::from_long(1);
        for (int k : t.ders) prod = prod * der[k];
        for (int k = out; k >= 0; --k) {
            // multiply by w^wexp: shift within the truncated window
            int src = k - t.wexp;
            C v = (src >= 0 && src <= prod.order()) ? prod[src] : coeff_traits<C>::zero();
            acc[k] += t.coeff * v;
        }
    }
    return acc;
}

inline RationalSeries residual(const NonlinearODE& ode, const IntegerSeries& s) {
    return residual(ode, to_rational(s));
}

// Checks the autonomous q=4 form in the u = sqrt(w) variable:
// (G - 6 G1)(3G + 8 G1 + 4 G2) - 384 = 0 for G(u) = F(u^2)/u^3,
// G1 = (1/2) theta_u G, G2 = (1/2) theta_u G1.
bool verify_autonomous_q4(const IntegerSeries& F);

// Schwarzian of rho = ln x + r(x) with respect to lambda = x^2, minus
// (lambda^2 - lambda + 1) / (2 lambda^2 (lambda-1)^2); identically zero.
LaurentRationalSeries schwarzian_residual(int n);

// {f, lambda = x^2} computed from the x-derivative of f.
LaurentRationalSeries schwarzian_wrt_lambda(const LaurentRationalSeries& f_x);

}  // namespace modseries
