#pragma once

#include "modseries/fppoly.hpp"
#include "modseries/linear_ode.hpp"

namespace modseries {

// r x r matrix over F_p(w), entries as reduced fractions with monic
// denominators.
struct RationalFunctionMatrix {
    u64 p = 0;
    int size = 0;
    struct Entry {
        FpPoly num;
        FpPoly den{1};  // monic
    };
    std::vector<Entry> e;  // row-major

    Entry& at(int i, int j) { return e[static_cast<size_t>(i) * size + j]; }
    const Entry& at(int i, int j) const { return e[static_cast<size_t>(i) * size + j]; }
    bool is_zero() const {
        for (const auto& x : e)
            if (!fp_is_zero(x.num)) return false;
        return true;
    }
    int max_entry_degree() const {
        int d = -1;
        for (const auto& x : e) d = std::max(d, std::max(fp_deg(x.num), fp_deg(x.den)));
        return d;
    }
};

enum class PCurvClass { ZERO, NILPOTENT, OTHER };

enum class PCurvStrategy {
    PolynomialLift,    // denominator-free recursion N_{k+1} = l N_k' - k l' N_k + N_k B
    ReducedFractions,  // Lambda_{k+1} = Lambda_k' + Lambda_k A with per-step reduction
};

// p-th iterate Lambda_p of the companion connection matrix of L over F_p(w).
RationalFunctionMatrix p_curvature(const ModOperator& L,
                                   PCurvStrategy strategy = PCurvStrategy::PolynomialLift);

PCurvClass classify_p_curvature(const ModOperator& L);

const char* pcurv_class_name(PCurvClass c);

}  // namespace modseries
