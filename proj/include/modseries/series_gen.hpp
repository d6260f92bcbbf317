#pragma once

#include <cstdint>
#include <vector>

#include "modseries/series.hpp"

namespace modseries {

// Coefficients h_0..h_n of Tutte's generating function H(w) for q-coloured
// rooted triangulations, from the quadratic recurrence with initial
// conditions h_0 = h_1 = 0, h_2 = q(q-1). Every division is checked exact.
IntegerSeries tutte_series(const Int& q, int n);
RationalSeries tutte_series(const Rat& q, int n);

// Symbolic q: coefficients are polynomials in q with integer coefficients.
QPolySeries tutte_series_symbolic(int n);

// S(w) = H(w) / (12 w^2) for the q = 4 series. Order drops by 2.
IntegerSeries normalized_series(const IntegerSeries& H);

// One-parameter family of solutions with h_0 = 0, h_1 given (q + 4 h1 != 0),
// determined order by order from the nonlinear equation itself.
RationalSeries family_solution(const Rat& q, const Rat& h1, int n);

// Generalized hypergeometric series sum_k (prod (u)_k / prod (l)_k) scale^k / k! x^k.
RationalSeries hypergeometric_series(const std::vector<Rat>& upper,
                                     const std::vector<Rat>& lower,
                                     const Int& scale, int n);

// Truncated quotient num/den; den must have a unit constant term.
template <class C>
Series<C> ratio_series(const Series<C>& num, const Series<C>& den) {
    return divide_unit(num, den);
}

// The unique power-series solution y_0 of L_4 = M_2 * L_2 seeded with
// coefficients 0, 0, 1/4, 0.
RationalSeries complementary_period_series(int n);

struct GrowthEstimate {
    double lambda;
    double radius;
};

// Geometric-mean ratio estimate of |s_b / s_a|^(1/(b-a)) over [from, to].
// All coefficients in the window must be nonzero. Exact for integer-ratio
// geometric series.
GrowthEstimate growth_estimate(const IntegerSeries& s, int from, int to);

struct IntegralityReport {
    bool bounded_so_far = false;
    std::vector<Int> denominator_primes;
    int first_nonintegral_index = -1;  // -1: all integral
    Int clearing_scale = 0;            // smallest clearing c if bounded, else 0
};

// Can the series be rescaled x -> c x (c integer, c <= rescale_bound) so all
// coefficients become integers at this truncation?
IntegralityReport integrality_check(const RationalSeries& s, const Int& rescale_bound);

}  // namespace modseries
