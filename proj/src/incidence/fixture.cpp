#include "incidence/fixture.hpp"

#include <fstream>

#include "common/error.hpp"
#include "common/version.hpp"

namespace cilab::incidence {

using nlohmann::json;

namespace {

ExactMatrix matrixFromJson(const PrimeField& field, const json& j) {
  std::vector<std::vector<std::int64_t>> rows = j.get<std::vector<std::vector<std::int64_t>>>();
  return algebra::fromRows(field, rows);
}

}  // namespace

json matrixJson(const ExactMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    out.push_back(std::vector<Residue>(row.begin(), row.end()));
  }
  return out;
}

json toJson(const CompleteIntersection& x) {
  json forms = json::array();
  const int vars = x.n() + 1;
  for (const auto& f : x.forms()) {
    json terms = json::array();
    const auto t = f.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) terms.push_back(json::array({it->second, it->first.exponents(vars)}));
    forms.push_back(std::move(terms));
  }
  return json{{"conventions", kConventionsTag},
              {"field", x.field().modulus()},
              {"type", {{"n", x.n()}, {"degrees", x.type().degrees}}},
              {"forms", std::move(forms)}};
}

CompleteIntersection ciFromJson(const json& j) {
  try {
    if (j.contains("conventions") && j.at("conventions").get<std::string>() != kConventionsTag)
      throw InvalidInput("fixture conventions tag " + j.at("conventions").get<std::string>() + " does not match " +
                         kConventionsTag);
    PrimeField field(j.at("field").get<std::uint32_t>());
    CIType type{j.at("type").at("n").get<int>(), j.at("type").at("degrees").get<std::vector<int>>()};
    type.validate();
    std::vector<MultiPoly> forms;
    for (const auto& terms : j.at("forms")) {
      std::vector<std::pair<std::int64_t, std::vector<int>>> raw;
      for (const auto& t : terms) {
        auto exps = t.at(1).get<std::vector<int>>();
        if (static_cast<int>(exps.size()) != type.n + 1) throw InvalidInput("fixture exponent vector has wrong length");
        raw.emplace_back(t.at(0).get<std::int64_t>(), std::move(exps));
      }
      forms.push_back(MultiPoly::fromExponents(field, type.n + 1, raw));
    }
    return CompleteIntersection(type, std::move(forms));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed CI fixture: ") + e.what());
  }
}

json toJson(const CurveModel& curve) {
  if (!curve.isConic()) return json{{"kind", "line"}, {"n", curve.n()}, {"rows", matrixJson(curve.span())}};
  const auto& q = curve.conicPoint().quadric;
  return json{{"kind", "conic"},
              {"n", curve.n()},
              {"plane", matrixJson(curve.span())},
              {"quadric", std::vector<Residue>(q.begin(), q.end())},
              {"conicKind", moduli::conicKindName(curve.kind())}};
}

CurveModel curveFromJson(const PrimeField& field, const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "line") return CurveModel::fromLine(field, LineChartPoint::fromSpan(field, matrixFromJson(field, j.at("rows"))));
    if (kind == "conic") {
      const auto raw = j.at("quadric").get<std::vector<std::int64_t>>();
      if (raw.size() != 6) throw InvalidInput("conic quadric needs 6 coefficients");
      moduli::QuadricCoeffs q{};
      for (int i = 0; i < 6; ++i) q[i] = field.fromInt(raw[i]);
      return CurveModel::fromConic(field, ConicChartPoint::make(field, matrixFromJson(field, j.at("plane")), q));
    }
    throw InvalidInput("unknown curve kind " + kind);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed curve: ") + e.what());
  }
}

CompleteIntersection loadCiFixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open fixture " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput("fixture " + path + " is not JSON: " + e.what());
  }
  return ciFromJson(j);
}

}  // namespace cilab::incidence
