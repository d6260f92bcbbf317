#include <doctest.h>

#include "modseries/nonlinear.hpp"
#include "test_util.hpp"

using namespace modseries;

namespace {

RationalSeries ratio_R(int n) {
    RationalSeries f13 = hypergeometric_series({Rat(1, 3), Rat(1, 3)}, {Rat(1)}, Int(27), n);
    RationalSeries f12 = hypergeometric_series({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, Int(16), n);
    return ratio_series(f13, f12);
}

}  // namespace

TEST_CASE("the reduced q=4 equation matches the printed term list") {
    NonlinearODE ode = make_ode(OdeName::TUTTE_Q4_REDUCED);
    REQUIRE(ode.terms.size() == 3);
    CHECK(ode.terms[0].coeff == Rat(3));
    CHECK(ode.terms[0].wexp == 1);
    CHECK(ode.terms[0].ders == std::vector<int>{1, 2});
    CHECK(ode.terms[1].coeff == Rat(-5));
    CHECK(ode.terms[1].wexp == 0);
    CHECK(ode.terms[1].ders == std::vector<int>{0, 2});
    CHECK(ode.terms[2].coeff == Rat(48));
    CHECK(ode.terms[2].wexp == 1);
    CHECK(ode.terms[2].ders.empty());
}

TEST_CASE("F = H + w solves the reduced equation; F = w does not") {
    IntegerSeries H = tu::tutte4(200);
    IntegerSeries F = H;
    F[1] += 1;
    RationalSeries r = residual(make_ode(OdeName::TUTTE_Q4_REDUCED), F);
    CHECK(r.is_zero());

    IntegerSeries w("w", 10);
    w[1] = 1;
    RationalSeries bad = residual(make_ode(OdeName::TUTTE_Q4_REDUCED), w);
    CHECK(bad[1] == Rat(48));
    int nz = 0;
    for (int k = 0; k <= bad.order(); ++k) nz += (sgn(bad[k]) != 0);
    CHECK(nz == 1);
}

TEST_CASE("Tutte equation residual vanishes for integer and rational q") {
    for (long qv : {2, 3, 5}) {
        RationalSeries h = tutte_series(Rat(qv), 100);
        CHECK(residual(make_ode(OdeName::TUTTE_Q, Rat(qv)), h).is_zero());
    }
    // the q(4-q) group vanishes identically at q=4
    NonlinearODE at4 = make_ode(OdeName::TUTTE_Q, Rat(4));
    for (const auto& t : at4.terms) CHECK(sgn(t.coeff) != 0);
    IntegerSeries H = tu::tutte4(120);
    CHECK(residual(at4, to_rational(H)).is_zero());
}

TEST_CASE("symbolic-q residual vanishes identically in q") {
    QPolySeries h = tutte_series_symbolic(60);
    QNonlinearODE ode = make_tutte_ode_symbolic();
    QPolySeries r = residual(ode, h);
    CHECK(r.is_zero());
}

TEST_CASE("Eq. 11 polynomial solutions for q in {3,5,7}") {
    for (long qv : {3, 5, 7}) {
        Rat q(qv);
        RationalSeries p1 = tu::make_poly("w", {Rat(0), -q * (q - 1) / (q - 4)}, 8);
        CHECK(residual(make_ode(OdeName::TUTTE_Q, q), p1).is_zero());
        RationalSeries p2 = tu::make_poly(
            "w", {Rat(0), -q * (q - 2) / (Rat(2) * (q - 4)), -q * (q - 4) / Rat(2)}, 8);
        CHECK(residual(make_ode(OdeName::TUTTE_Q, q), p2).is_zero());
    }
}

TEST_CASE("family solutions satisfy the Tutte equation") {
    for (auto [qv, hv] : std::vector<std::pair<Rat, Rat>>{
             {Rat(3), Rat(1)}, {Rat(5), Rat(2)}, {Rat(7, 2), Rat(1, 3)}}) {
        RationalSeries h = family_solution(qv, hv, 60);
        CHECK(residual(make_ode(OdeName::TUTTE_Q, qv), h).is_zero());
    }
}

TEST_CASE("scaling symmetry of the reduced equation") {
    IntegerSeries H = tu::tutte4(120);
    RationalSeries F = to_rational(H);
    F[1] += 1;
    for (Rat A : {Rat(2), Rat(3), Rat(1, 2)}) {
        // F_A(w) = A^3 F(w / A^2)
        RationalSeries FA = (A * A * A) * F.substitute(Rat(1) / (A * A), 1).truncated(F.order());
        CHECK(residual(make_ode(OdeName::TUTTE_Q4_REDUCED), FA).is_zero());
    }
}

TEST_CASE("autonomous form in the sqrt variable") {
    IntegerSeries H = tu::tutte4(200);
    IntegerSeries F = H;
    F[1] += 1;
    CHECK(verify_autonomous_q4(F));
    CHECK(verify_autonomous_q4(F.truncated(4)));

    IntegerSeries bad = F;
    bad[2] = 13;
    CHECK_FALSE(verify_autonomous_q4(bad));

    IntegerSeries bad2 = F;
    bad2[50] += 1;
    CHECK_FALSE(verify_autonomous_q4(bad2));
    // equivalence with the reduced-equation residual
    CHECK_FALSE(residual(make_ode(OdeName::TUTTE_Q4_REDUCED), bad2).is_zero());

    IntegerSeries wrongseed = F;
    wrongseed[1] = 2;
    CHECK_THROWS_AS(verify_autonomous_q4(wrongseed), DomainError);
}

TEST_CASE("ratio equation: transcription term and residual zero") {
    NonlinearODE ode = make_ode(OdeName::RATIO_2F1);
    bool has_lead = false;
    for (const auto& t : ode.terms)
        if (t.ders == std::vector<int>{1, 3} && t.wexp == 2 && t.coeff == Rat(-2)) has_lead = true;
    CHECK(has_lead);

    RationalSeries R = ratio_R(80);
    CHECK(residual(ode, R).is_zero());

    RationalSeries notR = R;
    notR[5] += 1;
    CHECK_FALSE(residual(ode, notR).is_zero());
}

TEST_CASE("residual order bookkeeping and short input") {
    NonlinearODE ode = make_ode(OdeName::TUTTE_Q4_REDUCED);
    IntegerSeries F("w", 10);
    F[1] = 1;
    CHECK(residual(ode, F).order() == 10 - 3);
    IntegerSeries tiny("w", 2);
    CHECK_THROWS_AS(residual(ode, tiny), DomainError);
}

TEST_CASE("Schwarzian: residual vanishes, Moebius functions are killed") {
    LaurentRationalSeries r = schwarzian_residual(100);
    CHECK(r.is_zero());

    // f = (2 lambda + 3)/(lambda + 5) as a Laurent series in x (lambda = x^2)
    int n = 60;
    std::vector<Rat> num(n, Rat(0)), den(n, Rat(0));
    num[0] = 3; num[2] = 2;
    den[0] = 5; den[2] = 1;
    LaurentRationalSeries f = divide(LaurentRationalSeries("x", 0, num),
                                     LaurentRationalSeries("x", 0, den));
    LaurentRationalSeries fx = f.derivative();
    CHECK(schwarzian_wrt_lambda(fx).is_zero());

    // rho = ln x: Schwarzian wrt lambda equals 1/(2 lambda^2) = x^-4 / 2
    std::vector<Rat> one(40, Rat(0));
    one[0] = Rat(1);
    LaurentRationalSeries rho_x("x", -1, one);
    LaurentRationalSeries s = schwarzian_wrt_lambda(rho_x);
    CHECK(s.coeff(-4) == Rat(1, 2));
    for (int e = s.lead(); e <= s.hi(); ++e)
        if (e != -4) CHECK(sgn(s.coeff(e)) == 0);
}
