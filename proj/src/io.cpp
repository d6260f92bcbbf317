#include "modseries/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace modseries {

namespace {

Rat parse_rat(const std::string& tok) {
    auto slash = tok.find('/');
    if (slash == std::string::npos) return Rat(Int(tok));
    Rat r(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1)));
    r.canonicalize();
    return r;
}

QPoly parse_qpoly(const std::string& tok) {
    std::vector<Int> c;
    std::stringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ',')) c.emplace_back(part);
    return QPoly(std::move(c));
}

std::string rat_str(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot open for writing: " + tmp);
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw DomainError("atomic rename failed: " + path);
}

void write_series_file(const std::string& path, const AnySeries& s) {
    std::ostringstream out;
    out << "# format=modseries/1\n";
    std::visit(
        [&](const auto& ser) {
            using T = std::decay_t<decltype(ser)>;
            out << "# var=" << ser.var() << "\n";
            if constexpr (std::is_same_v<T, IntegerSeries>) {
                out << "# domain=int\n# modulus=0\n# n=" << ser.order() << "\n";
                for (int k = 0; k <= ser.order(); ++k) out << ser[k].get_str() << "\n";
            } else if constexpr (std::is_same_v<T, RationalSeries>) {
                out << "# domain=rat\n# modulus=0\n# n=" << ser.order() << "\n";
                for (int k = 0; k <= ser.order(); ++k) out << rat_str(ser[k]) << "\n";
            } else if constexpr (std::is_same_v<T, QPolySeries>) {
                out << "# domain=qpoly\n# modulus=0\n# n=" << ser.order() << "\n";
                for (int k = 0; k <= ser.order(); ++k) out << ser[k].str() << "\n";
            } else {
                out << "# domain=int\n# modulus=" << ser.modulus() << "\n# n=" << ser.order()
                    << "\n";
                for (int k = 0; k <= ser.order(); ++k) out << ser[k] << "\n";
            }
        },
        s);
    write_file_atomic(path, out.str());
}

AnySeries read_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open series file: " + path);
    std::string line, var = "w", domain = "int";
    u64 modulus = 0;
    long n = -1;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            auto eq = body.find('=');
            if (eq == std::string::npos) continue;
            std::string key = body.substr(0, eq), val = body.substr(eq + 1);
            key.erase(0, key.find_first_not_of(" \t"));
            key.erase(key.find_last_not_of(" \t") + 1);
            if (key == "var") var = val;
            else if (key == "domain") domain = val;
            else if (key == "modulus") modulus = std::stoull(val);
            else if (key == "n") n = std::stol(val);
            continue;
        }
        lines.push_back(line);
    }
    if (n >= 0 && static_cast<long>(lines.size()) != n + 1)
        throw DomainError("series file: coefficient count disagrees with n=");
    if (lines.empty()) throw DomainError("series file: no coefficients");
    if (modulus >= 2) {
        std::vector<u64> c;
        c.reserve(lines.size());
        for (const auto& t : lines) c.push_back(std::stoull(t));
        return ModSeries(var, modulus, std::move(c));
    }
    if (domain == "int") {
        std::vector<Int> c;
        c.reserve(lines.size());
        for (const auto& t : lines) c.emplace_back(t);
        return IntegerSeries(var, std::move(c));
    }
    if (domain == "rat") {
        std::vector<Rat> c;
        c.reserve(lines.size());
        for (const auto& t : lines) c.push_back(parse_rat(t));
        return RationalSeries(var, std::move(c));
    }
    if (domain == "qpoly") {
        std::vector<QPoly> c;
        c.reserve(lines.size());
        for (const auto& t : lines) c.push_back(parse_qpoly(t));
        return QPolySeries(var, std::move(c));
    }
    throw DomainError("series file: unknown domain " + domain);
}

IntegerSeries expect_integer_series(const AnySeries& s) {
    if (auto* p = std::get_if<IntegerSeries>(&s)) return *p;
    if (auto* p = std::get_if<RationalSeries>(&s)) return to_integer(*p);
    throw DomainError("expected an integer series");
}

RationalSeries expect_rational_series(const AnySeries& s) {
    if (auto* p = std::get_if<RationalSeries>(&s)) return *p;
    if (auto* p = std::get_if<IntegerSeries>(&s)) return to_rational(*p);
    throw DomainError("expected a rational series");
}

ModSeries expect_mod_series(const AnySeries& s) {
    if (auto* p = std::get_if<ModSeries>(&s)) return *p;
    throw DomainError("expected a modular series (modulus >= 2)");
}

nlohmann::json to_json(const ModOperator& op) {
    nlohmann::json j;
    j["domain"] = "modp";
    j["p"] = op.p;
    j["form"] = (op.form == OperatorForm::Theta) ? "theta" : "d";
    j["coeffs"] = op.coeffs;
    return j;
}

ModOperator mod_operator_from_json(const nlohmann::json& j) {
    ModOperator op;
    op.p = j.at("p").get<u64>();
    op.form = (j.value("form", "theta") == "d") ? OperatorForm::D : OperatorForm::Theta;
    for (const auto& poly : j.at("coeffs")) {
        std::vector<u64> pc;
        for (const auto& v : poly) {
            long long x = v.get<long long>();
            long long m = static_cast<long long>(op.p);
            pc.push_back(static_cast<u64>(((x % m) + m) % m));
        }
        op.coeffs.push_back(std::move(pc));
    }
    return op;
}

nlohmann::json to_json(const RationalOperator& op) {
    nlohmann::json j;
    j["domain"] = "rational";
    j["form"] = (op.form == OperatorForm::Theta) ? "theta" : "d";
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& poly : op.coeffs) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& v : poly) row.push_back(rat_str(v));
        coeffs.push_back(row);
    }
    j["coeffs"] = coeffs;
    return j;
}

RationalOperator rational_operator_from_json(const nlohmann::json& j) {
    RationalOperator op;
    op.form = (j.value("form", "theta") == "d") ? OperatorForm::D : OperatorForm::Theta;
    for (const auto& poly : j.at("coeffs")) {
        std::vector<Rat> pc;
        for (const auto& v : poly) pc.push_back(parse_rat(v.get<std::string>()));
        op.coeffs.push_back(std::move(pc));
    }
    return op;
}

nlohmann::json to_json(const BivariateRelation& rel) {
    nlohmann::json j;
    j["modulus"] = rel.modulus;
    j["var"] = "w";
    j["unknown"] = "S";
    j["degW"] = rel.degW;
    j["degS"] = rel.degS;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : rel.terms) terms.push_back({{"a", t.a}, {"b", t.b}, {"c", t.c}});
    j["terms"] = terms;
    return j;
}

BivariateRelation relation_from_json(const nlohmann::json& j) {
    BivariateRelation rel;
    rel.modulus = j.at("modulus").get<u64>();
    for (const auto& t : j.at("terms")) {
        long long c = t.at("c").get<long long>();
        long long m = static_cast<long long>(rel.modulus);
        rel.terms.push_back({t.at("a").get<int>(), t.at("b").get<int>(),
                             static_cast<u64>(((c % m) + m) % m)});
    }
    rel.recompute_degrees();
    return rel;
}

nlohmann::json to_json(const FrobeniusRelation& rel) {
    nlohmann::json j;
    j["p"] = rel.p;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : rel.terms) terms.push_back({{"exponent", t.exponent}, {"poly", t.poly}});
    j["terms"] = terms;
    return j;
}

FrobeniusRelation frobenius_from_json(const nlohmann::json& j) {
    FrobeniusRelation rel;
    rel.p = j.at("p").get<u64>();
    for (const auto& t : j.at("terms")) {
        FrobeniusRelation::Term term;
        term.exponent = t.at("exponent").get<long>();
        for (const auto& v : t.at("poly")) term.poly.push_back(v.get<u64>() % rel.p);
        rel.terms.push_back(std::move(term));
    }
    return rel;
}

nlohmann::json to_json(const LacunaryExpr& e) {
    nlohmann::json j;
    j["prefactor_exp"] = e.prefactor_exp;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : e.terms) {
        nlohmann::json tj;
        tj["coeff"] = rat_str(t.coeff);
        if (t.is_poly) {
            tj["basis"] = "POLY";
            nlohmann::json poly = nlohmann::json::array();
            for (const auto& v : t.poly) poly.push_back(rat_str(v));
            tj["poly"] = poly;
        } else {
            tj["basis"] = lac_name(t.kind);
            tj["power"] = t.power;
            if (!t.mul.empty()) {
                nlohmann::json mul = nlohmann::json::array();
                for (const auto& v : t.mul) mul.push_back(rat_str(v));
                tj["mul"] = mul;
            }
        }
        terms.push_back(tj);
    }
    j["terms"] = terms;
    return j;
}

LacunaryExpr lacunary_expr_from_json(const nlohmann::json& j) {
    LacunaryExpr e;
    e.prefactor_exp = j.value("prefactor_exp", 0);
    for (const auto& tj : j.at("terms")) {
        LacunaryExpr::Term t;
        t.coeff = parse_rat(tj.at("coeff").get<std::string>());
        std::string basis = tj.at("basis").get<std::string>();
        if (basis == "POLY") {
            t.is_poly = true;
            for (const auto& v : tj.at("poly")) t.poly.push_back(parse_rat(v.get<std::string>()));
        } else {
            t.is_poly = false;
            if (basis == "L2") t.kind = LacKind::L2;
            else if (basis == "L3") t.kind = LacKind::L3;
            else if (basis == "L6") t.kind = LacKind::L6;
            else throw DomainError("lacunary JSON: unknown basis " + basis);
            t.power = tj.value("power", 1);
            if (tj.contains("mul"))
                for (const auto& v : tj.at("mul")) t.mul.push_back(parse_rat(v.get<std::string>()));
        }
        e.terms.push_back(std::move(t));
    }
    return e;
}

nlohmann::json to_json(const SingularityReport& rep) {
    nlohmann::json j;
    j["radius"] = rep.radius;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : rep.entries) {
        nlohmann::json ej;
        ej["location"] = {e.location.real(), e.location.imag()};
        nlohmann::json ex = nlohmann::json::array();
        for (const auto& x : e.exponents) ex.push_back({x.real(), x.imag()});
        ej["exponents"] = ex;
        entries.push_back(ej);
    }
    j["entries"] = entries;
    nlohmann::json inf = nlohmann::json::array();
    for (const auto& x : rep.exponents_at_infinity) inf.push_back({x.real(), x.imag()});
    j["exponents_at_infinity"] = inf;
    return j;
}

nlohmann::json to_json(const NonlinearODE& ode) {
    nlohmann::json j;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : ode.terms)
        terms.push_back({{"coeff", rat_str(t.coeff)}, {"wexp", t.wexp}, {"ders", t.ders}});
    j["terms"] = terms;
    return j;
}

nlohmann::json to_json(const RationalFunctionMatrix& m, PCurvClass cls) {
    nlohmann::json j;
    j["classification"] = pcurv_class_name(cls);
    j["size"] = m.size;
    j["p"] = m.p;
    j["max_entry_degree"] = m.max_entry_degree();
    j["zero"] = m.is_zero();
    return j;
}

}  // namespace modseries
