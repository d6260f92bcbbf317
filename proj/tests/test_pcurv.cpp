#include <doctest.h>

#include "modseries/io.hpp"
#include "modseries/p_curvature.hpp"
#include "test_util.hpp"

using namespace modseries;

TEST_CASE("trivial connection: L = D has zero p-curvature") {
    ModOperator L{5, OperatorForm::D, {{0}, {1}}};
    RationalFunctionMatrix M = p_curvature(L);
    CHECK(M.is_zero());
    CHECK(classify_p_curvature(L) == PCurvClass::ZERO);
}

TEST_CASE("L = D - 1 over F_5: Lambda_5 = 1, class OTHER") {
    ModOperator L{5, OperatorForm::D, {{4}, {1}}};
    RationalFunctionMatrix M = p_curvature(L);
    REQUIRE(M.size == 1);
    CHECK_FALSE(M.is_zero());
    CHECK(M.at(0, 0).num == FpPoly{1});
    CHECK(M.at(0, 0).den == FpPoly{1});
    CHECK(classify_p_curvature(L) == PCurvClass::OTHER);
}

TEST_CASE("the spurious operator theta^p - theta has zero p-curvature") {
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        ModOperator L;
        L.p = p;
        L.form = OperatorForm::Theta;
        L.coeffs.assign(p + 1, {});
        L.coeffs[1] = {p - 1};
        L.coeffs[p] = {1};
        CHECK(classify_p_curvature(L) == PCurvClass::ZERO);
    }
}

TEST_CASE("guessed operators for S mod p have zero p-curvature (small p)") {
    for (const char* name : {"op_L3.json", "op_L5.json", "op_L7.json"}) {
        ModOperator op = mod_operator_from_json(tu::load_json(name));
        CAPTURE(name);
        CHECK(classify_p_curvature(op) == PCurvClass::ZERO);
    }
}

TEST_CASE("a G-operator reduction is nilpotent or zero, never OTHER") {
    // hypergeometric operator of 2F1(1/2,1/2;1;16w): (1-16w) theta^2 - 16w theta - 4w
    ModOperator L{7, OperatorForm::Theta, {{0, 3}, {0, 5}, {1, 5}}};
    // sanity: it annihilates the series mod 7
    IntegerSeries f = to_integer(
        hypergeometric_series({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, Int(16), 300));
    REQUIRE(L.annihilates(reduce(f, 7)));
    PCurvClass c = classify_p_curvature(L);
    CHECK(c != PCurvClass::OTHER);
}

TEST_CASE("strategy invariance: polynomial lift vs reduced fractions") {
    std::vector<ModOperator> ops;
    ops.push_back(mod_operator_from_json(tu::load_json("op_L3.json")));
    ops.push_back({5, OperatorForm::D, {{4}, {1}}});
    ops.push_back({3, OperatorForm::Theta, {{0, 2}, {1}, {1, 1}}});
    for (const auto& L : ops) {
        RationalFunctionMatrix a = p_curvature(L, PCurvStrategy::PolynomialLift);
        RationalFunctionMatrix b = p_curvature(L, PCurvStrategy::ReducedFractions);
        REQUIRE(a.size == b.size);
        for (int i = 0; i < a.size * a.size; ++i) {
            CHECK(a.e[i].num == b.e[i].num);
            CHECK(a.e[i].den == b.e[i].den);
        }
    }
}

TEST_CASE("degenerate leading coefficient is rejected") {
    ModOperator L{5, OperatorForm::D, {{1}, {}}};
    CHECK_THROWS_AS(p_curvature(L), DomainError);
}
