#include "incidence/ci.hpp"

#include <numeric>
#include <sstream>

#include "common/error.hpp"

namespace cilab::incidence {

int CIType::degreeSum() const noexcept { return std::accumulate(degrees.begin(), degrees.end(), 0); }

void CIType::validate() const {
  if (n < 2) throw InvalidInput("ambient dimension must be at least 2");
  if (degrees.empty()) throw InvalidInput("a complete intersection needs at least one degree");
  if (c() > n) throw InvalidInput("more equations than the ambient dimension");
  for (int d : degrees)
    if (d < 2) throw InvalidInput("every degree must be at least 2");
}

std::string CIType::label() const {
  std::ostringstream out;
  out << "n=" << n << " d=(";
  for (std::size_t i = 0; i < degrees.size(); ++i) out << (i ? "," : "") << degrees[i];
  out << ")";
  return out.str();
}

namespace {

// x / 2 written exactly
std::string half(int x) { return std::to_string(x / 2) + (x % 2 ? ".5" : ""); }

}  // namespace

ExpectedDims expectedDims(const CIType& type) {
  type.validate();
  const int n = type.n, s = type.degreeSum(), c = type.c();
  ExpectedDims e;
  e.linesDim = 2 * n - 2 - (s + c);
  e.conicsDim = 3 * n - 1 - 2 * s - c;
  e.linesEmptyForGeneral = s + c > 2 * n - 2;
  e.linesSmoothInRange = !e.linesEmptyForGeneral;
  e.linesConnectedInRange = s + c <= 2 * n - 3;
  // doubled to stay in integers: S + c/2 <= (3n-2)/2  <=>  2S + c <= 3n - 2
  e.thresholdConicEmptyFlag = 2 * s + c > 3 * n - 2;
  e.consistencyConicEmptyFlag = e.conicsDim < 0;
  e.conicsSmoothInRange = !e.thresholdConicEmptyFlag;
  e.conicsConnectedInRange = 2 * s + c <= 3 * n - 3;
  e.conicsConnectedAltRange = 2 * (s + c) <= 3 * n - 3;
  e.conicThresholdDisagreement = e.thresholdConicEmptyFlag != e.consistencyConicEmptyFlag;
  e.connectedRangeDisagreement = e.conicsConnectedInRange != e.conicsConnectedAltRange;
  if (e.conicThresholdDisagreement) {
    std::ostringstream w;
    w << "conic emptiness disagreement for " << type.label() << ": the threshold d_1+...+d_c+c/2 > (3n-2)/2 "
      << "holds (" << half(2 * s + c) << " > " << half(3 * n - 2)
      << ") but the expected dimension 3n-1-2(d_1+...+d_c)-c = " << e.conicsDim
      << " is nonnegative, i.e. d_1+...+d_c+c/2 <= (3n-1)/2";
    e.warnings.push_back(w.str());
  }
  if (e.connectedRangeDisagreement) {
    std::ostringstream w;
    w << "conic connectedness ranges differ for " << type.label() << ": d_1+...+d_c+c/2 <= (3n-3)/2 is "
      << (e.conicsConnectedInRange ? "true" : "false") << " while d_1+...+d_c+c <= (3n-3)/2 is "
      << (e.conicsConnectedAltRange ? "true" : "false");
    e.warnings.push_back(w.str());
  }
  return e;
}

CompleteIntersection::CompleteIntersection(const CIType& type, std::vector<MultiPoly> forms)
    : type_(type), forms_(std::move(forms)) {
  type_.validate();
  if (static_cast<int>(forms_.size()) != type_.c()) throw InvalidInput("form count does not match the type");
  for (int i = 0; i < type_.c(); ++i) {
    const auto& f = forms_[i];
    if (f.nvars() != type_.n + 1) throw InvalidInput("form has the wrong number of variables");
    if (f.isZero()) throw InvalidInput("forms of a complete intersection must be nonzero");
    if (!f.isHomogeneous() || f.degree() != type_.degrees[i]) throw InvalidInput("form degree does not match the type");
    if (!(f.field() == forms_.front().field())) throw InvalidInput("forms over different fields");
  }
}

CompleteIntersection fermatHypersurface(const PrimeField& field, int n, int degree) {
  MultiPoly f(field, n + 1);
  for (int i = 0; i <= n; ++i) f += MultiPoly::monomial(field, n + 1, algebra::Monomial::variable(i, degree), 1);
  return CompleteIntersection(CIType{n, {degree}}, {f});
}

CompleteIntersection splitQuadricSurface(const PrimeField& field) {
  auto f = MultiPoly::fromExponents(field, 4, {{1, {1, 0, 0, 1}}, {-1, {0, 1, 1, 0}}});
  return CompleteIntersection(CIType{3, {2}}, {f});
}

}  // namespace cilab::incidence
