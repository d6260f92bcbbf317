#include <doctest.h>

#include "modseries/io.hpp"
#include "modseries/linear_ode.hpp"
#include "test_util.hpp"

using namespace modseries;

namespace {

const int N = 700;

ModSeries Smod(u64 p) { return reduce(tu::normalized4(N), p); }

IntegerSeries central_binomial(int n) {
    // (1-4w)^{-1/2} = sum C(2k,k) w^k
    IntegerSeries s("w", n);
    Int c(1);
    for (int k = 0; k <= n; ++k) {
        s[k] = c;
        c = c * 2 * (2 * k + 1) / (k + 1);
    }
    return s;
}

}  // namespace

TEST_CASE("operator application basics") {
    ModSeries one("w", 5, 10);
    one[0] = 1;
    ModOperator theta{5, OperatorForm::Theta, {{0}, {1}}};
    CHECK(theta.apply(one).is_zero());

    // (theta - 1) annihilates w
    ModSeries w("w", 5, 10);
    w[1] = 1;
    ModOperator tm1{5, OperatorForm::Theta, {{4}, {1}}};
    CHECK(tm1.apply(w).is_zero());
    CHECK_FALSE(tm1.apply(one).is_zero());
}

TEST_CASE("the fixture operators annihilate S mod p") {
    for (const char* name : {"op_L3.json", "op_L5.json", "op_L7.json", "op_L11.json"}) {
        ModOperator op = mod_operator_from_json(tu::load_json(name));
        CHECK(op.annihilates(Smod(op.p)));
    }
    // the printed L7 misses the 2 theta^2 term and does not annihilate
    ModOperator printed = mod_operator_from_json(tu::load_json("op_L7_printed.json"));
    CHECK_FALSE(printed.annihilates(Smod(7)));
}

TEST_CASE("guess_ode_modp reproduces L3 and filters spurious operators") {
    auto r = guess_ode_modp(Smod(3), 2, 1, 200);
    REQUIRE(r.has_value());
    ModOperator expected = mod_operator_from_json(tu::load_json("op_L3.json"));
    CHECK(r->op == expected);
    CHECK(r->nullity == 1);

    // constant series: theta
    ModSeries one("w", 5, 300);
    one[0] = 1;
    auto rc = guess_ode_modp(one, 1, 0, 100);
    REQUIRE(rc.has_value());
    CHECK(rc->op.coeffs == std::vector<std::vector<u64>>{{0}, {1}});

    // geometric series: (1-w) theta - w, normalized at theta w
    ModSeries geo("w", 5, 300);
    for (int k = 0; k <= 300; ++k) geo[k] = 1;
    auto rg = guess_ode_modp(geo, 1, 1, 100);
    REQUIRE(rg.has_value());
    CHECK(rg->op.coeffs == std::vector<std::vector<u64>>{{0, 1}, {4, 1}});

    // a generic series mod 3 admits only spurious (order >= p) fits: none
    ModSeries rnd = reduce(tu::random_series(120, 42, 1, 1000), 3);
    auto rr = guess_ode_modp(rnd, 5, 2, 50);
    if (rr.has_value()) CHECK(rr->op.order() < 3);

    CHECK_THROWS_AS(guess_ode_modp(Smod(3), 30, 30, 200), DomainError);   // too short
    CHECK_THROWS_AS(guess_ode_modp(reduce(tu::normalized4(50), 4), 2, 1, 5), DomainError);
}

TEST_CASE("hermite_pade_ode finds the exact operator of (1-4w)^(-1/2)") {
    IntegerSeries s = central_binomial(60);
    auto r = hermite_pade_ode(s, 1, 1, 40);
    REQUIRE(r.has_value());
    CHECK(r->fit_rows == 3);
    // theta form (1-4w) theta - 2w, normalized on the theta w coefficient
    RationalOperator expected("w", OperatorForm::Theta,
                              {{Rat(0), Rat(1, 2)}, {Rat(-1, 4), Rat(1)}});
    CHECK(r->op.coeffs == expected.coeffs);
    // primitive integer vector annihilates everything
    CHECK(r->op.apply(to_rational(s)).is_zero());
}

TEST_CASE("hermite_pade_ode on the divergent factorial series") {
    IntegerSeries s("w", 30);
    Int f(1);
    for (int k = 0; k <= 30; ++k) {
        s[k] = f;
        f *= (k + 1);
    }
    auto r = hermite_pade_ode(s, 1, 2, 20);
    REQUIRE(r.has_value());
    // operator annihilates the fitted prefix exactly
    RationalSeries out = r->op.apply(to_rational(s));
    for (int k = 0; k < r->fit_rows; ++k) CHECK(sgn(out[k]) == 0);
}

TEST_CASE("hermite_pade_ode preconditions") {
    IntegerSeries s = central_binomial(30);
    CHECK_THROWS_AS(hermite_pade_ode(s, 5, 9, 20), DomainError);   // budget 60 > n_use
    CHECK_THROWS_AS(hermite_pade_ode(s, 1, 1, 40), DomainError);   // n_use > length
}

TEST_CASE("holonomy rejection: q=4 series fails, holonomic series pass") {
    IntegerSeries H = tu::tutte4(400);
    std::vector<std::pair<int, int>> budgets{{1, 1}, {2, 2}, {3, 3}, {2, 10}};
    auto reports = holonomy_rejection_test(H, budgets, 300, 80);
    for (const auto& rep : reports) {
        CHECK(rep.fit_found);
        REQUIRE(rep.first_failing_index.has_value());
        CHECK(*rep.first_failing_index >= 300);
        CHECK(*rep.first_failing_index < 380);
    }

    IntegerSeries cb = central_binomial(400);
    auto rep2 = holonomy_rejection_test(cb, budgets, 300, 80);
    for (const auto& rep : rep2) CHECK(rep.pass());

    IntegerSeries f = to_integer(
        hypergeometric_series({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, Int(16), 400));
    auto rep3 = holonomy_rejection_test(f, {{2, 2}}, 300, 80);
    REQUIRE(rep3.size() == 1);
    CHECK(rep3[0].pass());
}

TEST_CASE("singularity report of the hand-built operator") {
    // (1-4w) theta - 2w: singular point 1/4 with exponent -1/2; at infinity
    // the exponent is -1/2 as well.
    RationalOperator L("w", OperatorForm::Theta, {{Rat(0), Rat(-2)}, {Rat(1), Rat(-4)}});
    SingularityReport rep = singularity_report(L);
    REQUIRE(rep.entries.size() == 1);
    CHECK(std::abs(rep.entries[0].location - std::complex<double>(0.25, 0)) < 1e-12);
    CHECK(rep.radius == doctest::Approx(0.25).epsilon(1e-10));
    bool found = false;
    for (auto e : rep.entries[0].exponents)
        if (std::abs(e - std::complex<double>(-0.5, 0)) < 1e-10) found = true;
    CHECK(found);
    REQUIRE(rep.exponents_at_infinity.size() == 1);
    CHECK(std::abs(rep.exponents_at_infinity[0] - std::complex<double>(-0.5, 0)) < 1e-10);
}

TEST_CASE("guard property: guessed operators annihilate a longer regeneration") {
    auto r = guess_ode_modp(Smod(5), 2, 1, 200);
    REQUIRE(r.has_value());
    IntegerSeries longer = tutte_series(Int(4), 900);
    CHECK(r->op.annihilates(reduce(normalized_series(longer), 5)));
}

TEST_CASE("operator JSON round trip") {
    ModOperator op = mod_operator_from_json(tu::load_json("op_L5.json"));
    CHECK(mod_operator_from_json(to_json(op)) == op);
    RationalOperator L("w", OperatorForm::Theta, {{Rat(0), Rat(1, 2)}, {Rat(-1, 4), Rat(1)}});
    RationalOperator back = rational_operator_from_json(to_json(L));
    CHECK(back.coeffs == L.coeffs);
    CHECK(back.form == L.form);
}
