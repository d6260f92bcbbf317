#pragma once

#include <optional>
#include <vector>

#include "modseries/mod_series.hpp"

namespace modseries {

// Sparse bivariate relation sum c_{a,b} w^a S^b = 0 over Z/m.
struct BivariateRelation {
    u64 modulus = 0;
    int degW = 0, degS = 0;
    struct Term {
        int a = 0, b = 0;
        u64 c = 0;
    };
    std::vector<Term> terms;

    // Scale so the coefficient of the highest monomial (b desc, then a desc)
    // is 1. Requires that coefficient to be a unit mod m.
    void normalize();
    void recompute_degrees();
    int term_count() const { return static_cast<int>(terms.size()); }

    friend bool operator==(const BivariateRelation& x, const BivariateRelation& y) {
        return x.modulus == y.modulus && x.terms == y.terms;
    }
};
inline bool operator==(const BivariateRelation::Term& x, const BivariateRelation::Term& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
}

// Evaluates sum c_{a,b} w^a s^b through the full truncation order.
bool verify_relation(const BivariateRelation& P, const ModSeries& s);
ModSeries relation_residual(const BivariateRelation& P, const ModSeries& s);

struct GuessRelationResult {
    BivariateRelation rel;
    int nullity = 0;
};

// Nullspace-based relation guessing. m prime, or a prime power (Howell-style
// elimination). Any returned relation is verified on all coefficients.
std::optional<GuessRelationResult> guess_relation(const ModSeries& s, int degS, int degW,
                                                  int guard);

// Deterministic budget schedule: B = (degS+1)(degW+1) ascending, degS
// ascending within equal B; first fully verified relation wins.
std::optional<BivariateRelation> search_relation(const ModSeries& s, long budget_bound,
                                                 int guard = 500);

// Frobenius-type relation sum a_i(x) S^{e_i} = 0 mod p, where each e_i is a
// power of p (exponent 0 encodes a plain polynomial term a(x) * S^0).
struct FrobeniusRelation {
    u64 p = 0;
    struct Term {
        long exponent = 0;  // 0 or p^i
        std::vector<u64> poly;
    };
    std::vector<Term> terms;
};

bool verify_frobenius(const FrobeniusRelation& R, const ModSeries& s);

// Solves for polynomials a_i of degree <= deg_bound with
// sum_{i=0..i_max} a_i s^{p^i} + a_const = 0, using s^{p^i}(x) = s(x^{p^i}).
std::optional<FrobeniusRelation> guess_frobenius(const ModSeries& s, int i_max, int deg_bound);

}  // namespace modseries
