#include "modseries/nonlinear.hpp"

#include "modseries/series_gen.hpp"

namespace modseries {

namespace {

// small dense integer polynomial helpers for transcribing the x-polynomial
// coefficients of the ratio equation
using IPoly = std::vector<Int>;

IPoly pmul(const IPoly& a, const IPoly& b) {
    IPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}
IPoly pscale(IPoly a, const Int& s) {
    for (auto& v : a) v *= s;
    return a;
}
IPoly pshift(const IPoly& a, int k) {
    IPoly r(a.size() + k, Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

void add_poly_terms(NonlinearODE& ode, const IPoly& poly, std::vector<int> ders) {
    std::sort(ders.begin(), ders.end());
    for (int e = 0; e < static_cast<int>(poly.size()); ++e) {
        if (sgn(poly[e]) == 0) continue;
        NonlinearODE::Term t;
        t.coeff = Rat(poly[e]);
        t.wexp = e;
        t.ders = ders;
        ode.terms.push_back(std::move(t));
    }
}

}  // namespace

QNonlinearODE make_tutte_ode_symbolic() {
    const QPoly q = QPoly::variable();
    QNonlinearODE ode;
    auto term = [&](QPoly c, int wexp, std::vector<int> ders) {
        std::sort(ders.begin(), ders.end());
        ode.terms.push_back({std::move(c), wexp, std::move(ders)});
    };
    // 2q^2(1-q) w
    term(QPoly(2) * q * q - QPoly(2) * q * q * q, 1, {});
    // (qw + 10H - 6wH') H''
    term(q, 1, {2});
    term(QPoly(10), 0, {0, 2});
    term(QPoly(-6), 1, {1, 2});
    // q(4-q)(20H - 18wH' + 9w^2 H'')
    QPoly q4q = QPoly(4) * q - q * q;
    term(q4q * QPoly(20), 0, {0});
    term(q4q * QPoly(-18), 1, {1});
    term(q4q * QPoly(9), 2, {2});
    return ode;
}

NonlinearODE make_ode(OdeName name, const Rat& q) {
    NonlinearODE ode;
    auto term = [&](Rat c, int wexp, std::vector<int> ders) {
        if (sgn(c) == 0) return;  // e.g. the q(4-q) group at q = 4
        std::sort(ders.begin(), ders.end());
        ode.terms.push_back({std::move(c), wexp, std::move(ders)});
    };
    switch (name) {
        case OdeName::TUTTE_Q: {
            term(Rat(2) * q * q * (Rat(1) - q), 1, {});
            term(q, 1, {2});
            term(Rat(10), 0, {0, 2});
            term(Rat(-6), 1, {1, 2});
            Rat q4q = q * (Rat(4) - q);
            term(q4q * Rat(20), 0, {0});
            term(q4q * Rat(-18), 1, {1});
            term(q4q * Rat(9), 2, {2});
            return ode;
        }
        case OdeName::TUTTE_Q4_REDUCED: {
            // (3 w F' - 5 F) F'' + 48 w
            term(Rat(3), 1, {1, 2});
            term(Rat(-5), 0, {0, 2});
            term(Rat(48), 1, {});
            return ode;
        }
        case OdeName::RATIO_2F1: {
            const IPoly f27{Int(-1), Int(27)};   // 27x - 1
            const IPoly f16{Int(-1), Int(16)};   // 16x - 1
            const IPoly f72{Int(1), Int(72)};    // 72x + 1
            const IPoly x1{Int(0), Int(1)};      // x
            IPoly f2716 = pmul(f27, f16);
            // -2x^2 (27x-1)(16x-1) [ (27x-1)(16x-1) R1 - (72x+1) R ] R3
            IPoly a = pscale(pshift(f2716, 2), Int(-2));
            add_poly_terms(ode, pmul(a, f2716), {1, 3});
            add_poly_terms(ode, pscale(pmul(a, f72), Int(-1)), {0, 3});
            // -2x [ 3x(16x-1)(72x+1)(27x-1) R1 - (93312x^3-168x^2-297x+4) R ] R2
            IPoly b = pscale(x1, Int(-2));
            IPoly inner1 = pmul(pmul(pscale(pshift(f16, 1), Int(3)), f72), f27);
            IPoly g{Int(4), Int(-297), Int(-168), Int(93312)};
            add_poly_terms(ode, pmul(b, inner1), {1, 2});
            add_poly_terms(ode, pscale(pmul(b, g), Int(-1)), {0, 2});
            // + 2 (29376x^3 + 5580x^2 - 221x + 1) R R1
            add_poly_terms(ode, pscale(IPoly{Int(1), Int(-221), Int(5580), Int(29376)}, Int(2)),
                           {0, 1});
            // + 3x^2 (27x-1)^2 (16x-1)^2 R2^2
            add_poly_terms(ode, pscale(pshift(pmul(f2716, f2716), 2), Int(3)), {2, 2});
            // + (16x-1)(1944x^3 - 1569x^2 + 58x - 1) R1^2
            add_poly_terms(ode, pmul(f16, IPoly{Int(-1), Int(58), Int(-1569), Int(1944)}), {1, 1});
            // + (144x^2 - 432x + 1) R^2
            add_poly_terms(ode, IPoly{Int(1), Int(-432), Int(144)}, {0, 0});
            return ode;
        }
    }
    throw DomainError("make_ode: unknown equation name");
}

bool verify_autonomous_q4(const IntegerSeries& F) {
    if (F.order() < 2 || F.coeff(0) != 0 || F.coeff(1) != 1)
        throw DomainError("verify_autonomous_q4: series must start w + 12 w^2");
    // G(u) = F(u^2) / u^3: coefficient of u^{2k-3} is F_k
    std::vector<Rat> g(2 * F.order() - 1, Rat(0));
    for (int k = 1; k <= F.order(); ++k) g[2 * k - 2] = Rat(F.coeff(k));
    LaurentRationalSeries G("u", -1, std::move(g));
    LaurentRationalSeries G1 = Rat(1, 2) * G.theta();
    LaurentRationalSeries G2 = Rat(1, 2) * G1.theta();
    LaurentRationalSeries left = G - Rat(6) * G1;
    LaurentRationalSeries right = Rat(3) * G + Rat(8) * G1 + Rat(4) * G2;
    LaurentRationalSeries prod = left * right;
    // the constant is exact: pad it to the product's full truncation window
    std::vector<Rat> c384(std::max(prod.hi(), 0) + 1, Rat(0));
    c384[0] = Rat(384);
    LaurentRationalSeries residue = prod - LaurentRationalSeries("u", 0, std::move(c384));
    return residue.is_zero();
}

LaurentRationalSeries schwarzian_wrt_lambda(const LaurentRationalSeries& f_x) {
    // d/dlambda = (1/(2x)) d/dx
    auto dlam = [](const LaurentRationalSeries& g) {
        return Rat(1, 2) * g.derivative().shifted(-1);
    };
    LaurentRationalSeries d1 = Rat(1, 2) * f_x.shifted(-1);  // f' wrt lambda
    LaurentRationalSeries d2 = dlam(d1);
    LaurentRationalSeries d3 = dlam(d2);
    LaurentRationalSeries r1 = divide(d3, d1);
    LaurentRationalSeries r2 = divide(d2, d1);
    return r1 - Rat(3, 2) * (r2 * r2);
}

LaurentRationalSeries schwarzian_residual(int n) {
    if (n < 8) throw DomainError("schwarzian_residual: order must be >= 8");
    RationalSeries y0 = complementary_period_series(n);
    RationalSeries K =
        hypergeometric_series({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, Int(1), n / 2).substitute(Rat(1), 2);
    RationalSeries r = ratio_series(y0, K.truncated(n));
    // rho_x = 1/x + r'(x)
    LaurentRationalSeries rp = LaurentSeries<Rat>::from_series(r.derivative(), 0);
    std::vector<Rat> invx{Rat(1)};
    LaurentRationalSeries rho_x =
        LaurentRationalSeries("x", -1, std::move(invx)) + rp;
    LaurentRationalSeries sch = schwarzian_wrt_lambda(rho_x);
    // target: (x^4 - x^2 + 1) / (2 x^4 (x^2-1)^2)
    std::vector<Rat> num{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)};
    std::vector<Rat> den{Rat(0), Rat(0), Rat(0), Rat(0), Rat(2), Rat(0), Rat(-4), Rat(0), Rat(2)};
    int pad = sch.hi() + 10;
    num.resize(num.size() + pad, Rat(0));
    LaurentRationalSeries target = divide(LaurentRationalSeries("x", 0, std::move(num)),
                                          LaurentRationalSeries("x", 0, std::move(den)));
    return sch - target;
}

}  // namespace modseries
