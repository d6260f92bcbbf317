#pragma once

#include <vector>

#include "modseries/mod_series.hpp"

namespace modseries {

struct TruncationResult {
    enum class Status { FOUND, NONE, INCONCLUSIVE };
    Status status = Status::NONE;
    long e = 0;               // exponent with (1/s)^e a polynomial mod p
    std::vector<u64> poly;    // the polynomial P(x)
    int margin = 0;           // floor(order / deg P)
};

// Searches e over multiples of (p-1) up to e_max for the smallest e with
// (1/s mod p)^e a polynomial; polynomial-ness requires all coefficients above
// the last nonzero one (degree d) to vanish with margin order/d >= 4.
TruncationResult truncation_polynomial(const IntegerSeries& s, u64 p, long e_max);

struct FrobeniusCheckResult {
    bool holds = false;                        // s(x)^p == s(x^p) mod p
    std::vector<std::pair<int, u64>> head;     // leading terms of s^p - 1 mod p
};

FrobeniusCheckResult frobenius_truncation_check(const IntegerSeries& s, u64 p, int head_terms = 8);

// Exact-integer check of the power pattern of the 4F3([1/2]^4,[1]^3,256x)
// series: coefficients of x, x^2, x^3 in s^M - 1 equal 16M, 16M(8M+73) and
// (256/3) M (8M^2 + 219M + 1648) for every listed M.
bool power_pattern_check(const IntegerSeries& s, const std::vector<long>& m_values);

}  // namespace modseries
