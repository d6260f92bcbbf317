#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "modseries/lacunary.hpp"
#include "modseries/linear_ode.hpp"
#include "modseries/mod_series.hpp"
#include "modseries/nonlinear.hpp"
#include "modseries/p_curvature.hpp"
#include "modseries/relation.hpp"
#include "modseries/series.hpp"

namespace modseries {

using AnySeries = std::variant<IntegerSeries, RationalSeries, QPolySeries, ModSeries>;

// modseries/1 text format: '#' key=value header lines, then one coefficient
// per line (decimal integers, rationals as p/q, q-polynomials as ascending
// comma-separated integers).
void write_series_file(const std::string& path, const AnySeries& s);
AnySeries read_series_file(const std::string& path);

IntegerSeries expect_integer_series(const AnySeries& s);
RationalSeries expect_rational_series(const AnySeries& s);
ModSeries expect_mod_series(const AnySeries& s);

// Atomic text write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& contents);

nlohmann::json to_json(const ModOperator& op);
ModOperator mod_operator_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RationalOperator& op);
RationalOperator rational_operator_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BivariateRelation& rel);
BivariateRelation relation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FrobeniusRelation& rel);
FrobeniusRelation frobenius_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LacunaryExpr& e);
LacunaryExpr lacunary_expr_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SingularityReport& rep);

nlohmann::json to_json(const NonlinearODE& ode);

nlohmann::json to_json(const RationalFunctionMatrix& m, PCurvClass cls);

}  // namespace modseries
