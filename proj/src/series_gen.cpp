#include "modseries/series_gen.hpp"

#include <cmath>
#include <map>
#include <optional>

#include "modseries/linear_ode.hpp"

namespace modseries {

namespace {

// Combined convolution weight for the unordered pair {i, n+1-i}:
// i(i+1)(3n-3i+1) plus the mirrored term. Fits in unsigned long for n <= 10^5.
inline unsigned long pair_weight(long n, long i) {
    unsigned long c = static_cast<unsigned long>(i) * (i + 1) * (3 * n - 3 * i + 1);
    long im = n + 1 - i;
    if (im != i) c += static_cast<unsigned long>(im) * (im + 1) * (3 * i - 2);
    return c;
}

}  // namespace

IntegerSeries tutte_series(const Int& q, int n) {
    if (n < 2) throw DomainError("tutte_series: order must be >= 2");
    if (sgn(q) == 0) throw DomainError("tutte_series: q = 0 divides the recurrence");
    IntegerSeries h("w", n);
    h[2] = q * (q - 1);
    Int acc, tmp;
    for (long m = 1; m + 2 <= n; ++m) {
        // acc = q(q-4)(3m-1)(3m-2) h_{m+1} + 2 sum_i i(i+1)(3m-3i+1) h_{i+1} h_{m-i+2}
        acc = q * (q - 4) * (3 * m - 1) * (3 * m - 2) * h[m + 1];
        for (long i = 1; 2 * i <= m + 1; ++i) {
            tmp = h[i + 1] * h[m - i + 2];
            tmp *= 2;
            mpz_addmul_ui(acc.get_mpz_t(), tmp.get_mpz_t(), pair_weight(m, i));
        }
        h[m + 2] = divexact(acc, q * (m + 1) * (m + 2));
    }
    return h;
}

RationalSeries tutte_series(const Rat& q, int n) {
    if (n < 2) throw DomainError("tutte_series: order must be >= 2");
    if (sgn(q) == 0) throw DomainError("tutte_series: q = 0 divides the recurrence");
    if (is_integral(q)) return to_rational(tutte_series(q.get_num(), n));
    RationalSeries h("w", n);
    h[2] = q * (q - 1);
    for (long m = 1; m + 2 <= n; ++m) {
        Rat acc = q * (q - 4) * Rat((3 * m - 1) * (3 * m - 2));
        acc *= h[m + 1];
        for (long i = 1; 2 * i <= m + 1; ++i)
            acc += Rat(2 * Int(pair_weight(m, i))) * h[i + 1] * h[m - i + 2];
        h[m + 2] = acc / (q * Rat((m + 1) * (m + 2)));
    }
    return h;
}

QPolySeries tutte_series_symbolic(int n) {
    if (n < 2) throw DomainError("tutte_series: order must be >= 2");
    QPolySeries h("w", n);
    const QPoly q = QPoly::variable();
    h[2] = q * q - q;
    const QPoly qq4 = q * q - QPoly(4) * q;  // q(q-4)
    for (long m = 1; m + 2 <= n; ++m) {
        QPoly acc = QPoly(Int((3 * m - 1) * (3 * m - 2))) * qq4 * h[m + 1];
        for (long i = 1; 2 * i <= m + 1; ++i)
            acc += QPoly(2 * Int(pair_weight(m, i))) * h[i + 1] * h[m - i + 2];
        // divide by q (m+1)(m+2); both factors exactly
        h[m + 2] = acc.divexact_q().divexact_int(Int((m + 1) * (m + 2)));
    }
    return h;
}

IntegerSeries normalized_series(const IntegerSeries& H) {
    if (H.order() < 2) throw DomainError("normalized_series: order must be >= 2");
    if (!coeff_traits<Int>::is_zero(H.coeff(0)) || !coeff_traits<Int>::is_zero(H.coeff(1)))
        throw DomainError("normalized_series: series must start at w^2");
    IntegerSeries s(H.var(), H.order() - 2);
    for (int k = 0; k <= s.order(); ++k) s[k] = divexact(H.coeff(k + 2), Int(12));
    return s;
}

RationalSeries family_solution(const Rat& q, const Rat& h1, int n) {
    if (sgn(q) == 0) throw DomainError("family_solution: q = 0");
    Rat pivot = q + Rat(4) * h1;
    if (sgn(pivot) == 0) throw DomainError("family_solution: q + 4 h1 = 0 is singular");
    RationalSeries h("w", n);
    if (n >= 1) h[1] = h1;
    if (n < 2) return h;
    // Coefficient of w^m in the nonlinear equation determines h_{m+1} with
    // multiplier (m+1) m (q + 4 h1).
    for (long m = 1; m + 1 <= n; ++m) {
        Rat rhs(0);
        if (m == 1) rhs += Rat(2) * q * q * (Rat(1) - q);
        // 10 [H H'']_m over known pairs a+b=m with b+2 <= m
        for (long a = 2; a <= m; ++a) {
            long b = m - a;
            if (sgn(h[a]) != 0 && sgn(h[b + 2]) != 0)
                rhs += Rat(10 * (b + 1) * (b + 2)) * h[a] * h[b + 2];
        }
        // -6 [H' H'']_{m-1} over known pairs a+b=m-1, a >= 1
        for (long a = 1; a <= m - 1; ++a) {
            long b = m - 1 - a;
            if (sgn(h[a + 1]) != 0 && sgn(h[b + 2]) != 0)
                rhs -= Rat(6 * (a + 1) * (b + 1) * (b + 2)) * h[a + 1] * h[b + 2];
        }
        rhs += q * (Rat(4) - q) * Rat(20 - 18 * m + 9 * m * (m - 1)) * h[m];
        h[m + 1] = -rhs / (Rat((m + 1) * m) * pivot);
    }
    return h;
}

RationalSeries hypergeometric_series(const std::vector<Rat>& upper,
                                     const std::vector<Rat>& lower,
                                     const Int& scale, int n) {
    for (const Rat& l : lower)
        if (is_integral(l) && sgn(l) <= 0)
            throw DomainError("hypergeometric_series: nonpositive integer lower parameter");
    RationalSeries s("x", n);
    Rat c(1);
    s[0] = c;
    for (int k = 0; k < n; ++k) {
        c *= Rat(scale);
        for (const Rat& u : upper) c *= (u + k);
        for (const Rat& l : lower) c /= (l + k);
        c /= Rat(k + 1);
        s[k + 1] = c;
    }
    return s;
}

RationalSeries complementary_period_series(int n) {
    if (n < 0) throw DomainError("complementary_period_series: negative order");
    static const std::vector<Rat> seeds = {Rat(0), Rat(0), Rat(1, 4), Rat(0)};
    RationalSeries y("x", n);
    for (int k = 0; k <= std::min(n, 3); ++k) y[k] = seeds[k];
    if (n <= 3) return y;
    RationalOperator L2("x", OperatorForm::D,
                        {{Rat(0), Rat(1)},                    // x
                         {Rat(-1), Rat(0), Rat(3)},           // 3x^2 - 1
                         {Rat(0), Rat(-1), Rat(0), Rat(1)}}); // (x^2-1)x
    RationalOperator M2("x", OperatorForm::D,
                        {{Rat(1)},                                    // 1
                         {Rat(0), Rat(-1), Rat(0), Rat(3)},           // (3x^2-1)x
                         {Rat(0), Rat(0), Rat(-1), Rat(0), Rat(1)}}); // (x^2-1)x^2
    RationalOperator L4 = compose(M2, L2);
    if (!solve_series_prefix(L4, y, 4))
        throw ExactnessError("complementary_period_series: recurrence did not determine coefficients");
    return y;
}

GrowthEstimate growth_estimate(const IntegerSeries& s, int from, int to) {
    if (from < 0 || to > s.order() || from >= to)
        throw DomainError("growth_estimate: bad window");
    for (int k = from; k <= to; ++k)
        if (coeff_traits<Int>::is_zero(s.coeff(k)))
            throw DomainError("growth_estimate: zero coefficient inside window");
    auto log2_abs = [](const Int& v) -> long double {
        long exp2;
        double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
        return static_cast<long double>(exp2) + std::log2(std::fabs(d));
    };
    long double lg = (log2_abs(s.coeff(to)) - log2_abs(s.coeff(from))) / (to - from);
    long double lambda = std::exp2(lg);
    // exact fast path for integer-ratio geometric windows
    long t = static_cast<long>(std::llround(static_cast<double>(lambda)));
    if (t >= 1) {
        Int pw(1);
        for (int k = 0; k < to - from; ++k) pw *= Int(t);
        if (s.coeff(from) * pw == s.coeff(to)) lambda = static_cast<long double>(t);
    }
    GrowthEstimate g;
    g.lambda = static_cast<double>(lambda);
    g.radius = static_cast<double>(1.0L / lambda);
    return g;
}

IntegralityReport integrality_check(const RationalSeries& s, const Int& rescale_bound) {
    IntegralityReport rep;
    // factor all denominators; valuation per prime per index
    std::map<Int, long> needed;  // prime -> required valuation of c
    bool clearable = true;
    for (int k = 0; k <= s.order(); ++k) {
        Int den = s.coeff(k).get_den();
        if (den == 1) continue;
        if (rep.first_nonintegral_index < 0) rep.first_nonintegral_index = k;
        // trial division
        auto record = [&](const Int& p, long v) {
            if (k == 0) { clearable = false; return; }
            long need = (v + k - 1) / k;  // ceil(v/k)
            auto it = needed.find(p);
            if (it == needed.end()) needed[p] = need;
            else it->second = std::max(it->second, need);
        };
        long v2 = 0;
        while (mpz_even_p(den.get_mpz_t())) { den /= 2; ++v2; }
        if (v2) record(Int(2), v2);
        for (Int d(3); d * d <= den && d < 1000000; d += 2) {
            long v = 0;
            while (den % d == 0) { den /= d; ++v; }
            if (v) record(d, v);
        }
        if (den > 1) record(den, 1);  // prime (or large) leftover
    }
    for (const auto& [p, v] : needed) rep.denominator_primes.push_back(p);
    if (rep.first_nonintegral_index < 0) {
        rep.bounded_so_far = true;
        rep.clearing_scale = 1;
        return rep;
    }
    if (clearable) {
        Int c(1);
        for (const auto& [p, v] : needed)
            for (long i = 0; i < v; ++i) c *= p;
        if (c <= rescale_bound) {
            rep.bounded_so_far = true;
            rep.clearing_scale = c;
        }
    }
    return rep;
}

}  // namespace modseries
