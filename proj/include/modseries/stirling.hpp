#pragma once

#include <vector>

#include "modseries/int_types.hpp"

namespace modseries {

// Stirling numbers of the second kind S(i,k) for i,k <= n:
// theta^i = sum_k S(i,k) w^k D^k.
inline std::vector<std::vector<Int>> stirling2_table(int n) {
    std::vector<std::vector<Int>> S(n + 1, std::vector<Int>(n + 1, Int(0)));
    S[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= i; ++k)
            S[i][k] = Int(k) * S[i - 1][k] + S[i - 1][k - 1];
    return S;
}

}  // namespace modseries
