#pragma once

#include <string>

#include <json.hpp>

#include "incidence/curve.hpp"

namespace cilab::incidence {

/// {"conventions", "field", "type": {"n", "degrees"}, "forms": [[[coeff, [e_0..e_n]], ...], ...]}
/// Terms are listed in descending lex order with coefficients in 0..p-1.
nlohmann::json toJson(const CompleteIntersection& x);
/// Accepts any integer coefficients (reduced mod p) and any term order.
/// Throws InvalidInput on malformed input or a conventions-tag mismatch.
CompleteIntersection ciFromJson(const nlohmann::json& j);

/// {"kind": "line", "n", "rows"} or {"kind": "conic", "n", "plane", "quadric", "conicKind"}
nlohmann::json toJson(const CurveModel& curve);
CurveModel curveFromJson(const PrimeField& field, const nlohmann::json& j);

CompleteIntersection loadCiFixture(const std::string& path);

nlohmann::json matrixJson(const ExactMatrix& m);

}  // namespace cilab::incidence
