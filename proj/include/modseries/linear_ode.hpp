#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modseries/mod_series.hpp"
#include "modseries/series.hpp"

namespace modseries {

enum class OperatorForm { Theta, D };

// Linear differential operator over F_p:
// sum_{i,j} coeffs[i][j] w^j theta^i (theta = w d/dw) in Theta form, or
// sum_{i,j} coeffs[i][j] w^j D^i in D form.
struct ModOperator {
    u64 p = 0;
    OperatorForm form = OperatorForm::Theta;
    std::vector<std::vector<u64>> coeffs;

    int order() const;           // largest i with coeffs[i] not identically 0
    int degree() const;          // largest j over all i
    bool is_zero() const { return order() < 0; }

    // Theta form: sum a_ij (k-j)^i s_{k-j}, exact through the full input
    // order. D form loses `order()` coefficients at the top.
    ModSeries apply(const ModSeries& s) const;
    bool annihilates(const ModSeries& s) const { return apply(s).is_zero(); }

    // Scale so the first nonzero coefficient in lex order (i desc, then
    // j desc) equals 1.
    void normalize();

    friend bool operator==(const ModOperator& a, const ModOperator& b) {
        return a.p == b.p && a.form == b.form && a.coeffs == b.coeffs;
    }
};

// Linear differential operator with exact rational polynomial coefficients.
struct RationalOperator {
    std::string var = "w";
    OperatorForm form = OperatorForm::Theta;
    std::vector<std::vector<Rat>> coeffs;  // coeffs[i] = poly multiplying theta^i or D^i

    RationalOperator() = default;
    RationalOperator(std::string v, OperatorForm f, std::vector<std::vector<Rat>> c)
        : var(std::move(v)), form(f), coeffs(std::move(c)) {}

    int order() const;
    int degree() const;
    void normalize();  // lex rule as for ModOperator

    template <class C>
    Series<C> apply(const Series<C>& s) const;
};

// Composition A(B(y)); both operators must be in D form.
RationalOperator compose(const RationalOperator& A, const RationalOperator& B);

// theta -> D form: theta^i = sum_k S2(i,k) w^k D^k.
RationalOperator to_d_form(const RationalOperator& L);

// Extend y (whose coefficients below first_unknown are seeds) so that
// L(y) = 0 holds through the computable order. Returns false if some
// coefficient is not determined by the recurrence.
bool solve_series_prefix(const RationalOperator& L, RationalSeries& y, int first_unknown);

struct GuessOdeResult {
    ModOperator op;
    int nullity = 0;  // nullspace dimension at the requested budget
};

// Nullspace-based operator guessing over F_p using all available rows.
// Returns an operator only if its effective order is < p (spurious-operator
// filter) and it annihilates the entire series.
std::optional<GuessOdeResult> guess_ode_modp(const ModSeries& s, int Q, int D, int guard);

struct HermiteResult {
    RationalOperator op;          // normalized; theta form
    std::vector<Int> primitive;   // primitive integer coefficient vector (col-major by (i,j))
    int Q = 0, D = 0;             // effective profile of the returned operator
    int nullity = 1;              // nullspace dimension mod the working primes
    int fit_rows = 0;             // rows of the exact fit (= unknowns - 1)
};

// Exact Hermite-Pade (diff-Pade) fit over the rationals: the nullspace of the
// first (Q+1)(D+1)-1 coefficient equations, computed multimodularly with CRT
// and verified exactly. n_use bounds the coefficient prefix that may be used.
std::optional<HermiteResult> hermite_pade_ode(const IntegerSeries& s, int Q, int D, int n_use);

struct BudgetReport {
    int Q = 0, D = 0;
    bool fit_found = false;
    // Failing index into the holdout window (absolute series index), or
    // nullopt when the fitted operator annihilates the whole holdout.
    std::optional<long> first_failing_index;
    bool pass() const { return fit_found && !first_failing_index.has_value(); }
};

// For each budget: fit on the first n_use coefficients, test on the next
// `holdout` coefficients. Failure indices are certified (nonzero residual
// modulo a 62-bit prime implies nonzero over Q when the fit nullspace is
// one-dimensional mod that prime).
std::vector<BudgetReport> holonomy_rejection_test(const IntegerSeries& s,
                                                  const std::vector<std::pair<int, int>>& budgets,
                                                  int n_use, int holdout);

struct SingularEntry {
    std::complex<double> location;
    std::vector<std::complex<double>> exponents;
};

struct SingularityReport {
    std::vector<SingularEntry> entries;  // sorted by |location|
    double radius = 0.0;                 // smallest |location|
    std::vector<std::complex<double>> exponents_at_infinity;
};

// Roots of the leading coefficient (simultaneous Aberth iteration on the
// squarefree part, deterministic initialization) plus local exponents from
// the indicial polynomial at each root and at infinity.
SingularityReport singularity_report(const RationalOperator& L);

// --- template implementation ---

template <class C>
C convert_rat(const Rat& v);
template <>
inline Rat convert_rat<Rat>(const Rat& v) { return v; }
template <>
inline Int convert_rat<Int>(const Rat& v) { return to_int(v); }

template <class C>
Series<C> RationalOperator::apply(const Series<C>& s) const {
    using traits = coeff_traits<C>;
    int n = s.order();
    int out = (form == OperatorForm::Theta) ? n : n - order();
    if (out < 0) throw DomainError("RationalOperator::apply: series too short");
    Series<C> r(s.var(), out);
    if (form == OperatorForm::Theta) {
        Series<C> t = s;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i > 0) t = t.theta();
            for (size_t j = 0; j < coeffs[i].size(); ++j) {
                if (sgn(coeffs[i][j]) == 0) continue;
                C cj = convert_rat<C>(coeffs[i][j]);
                for (int k = 0; k + static_cast<int>(j) <= out; ++k)
                    r[k + j] += cj * t.coeff(k);
            }
        }
    } else {
        Series<C> t = s;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i > 0) t = t.derivative();
            for (size_t j = 0; j < coeffs[i].size(); ++j) {
                if (sgn(coeffs[i][j]) == 0) continue;
                C cj = convert_rat<C>(coeffs[i][j]);
                for (int k = 0; k + static_cast<int>(j) <= out; ++k)
                    r[k + j] += cj * t.coeff(k);
            }
        }
    }
    return r;
}

}  // namespace modseries
