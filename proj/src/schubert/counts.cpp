#include "schubert/counts.hpp"

#include "common/error.hpp"

namespace cilab::schubert {

namespace {

std::vector<RootPoly> quadricBundleChern() {
  return totalChern(symPowerRoots(2, 3), 6);
}

}  // namespace

LineCount lineCountDetail(const incidence::CIType& type) {
  type.validate();
  if (incidence::expectedDims(type).linesDim != 0)
    throw DomainError("line count needs expected line dimension 0 for " + type.label());
  LineCount out;
  out.integrand = RootPoly::constant(2, 1);
  for (int d : type.degrees) out.integrand = out.integrand * symPowerTopChern(d, 2);
  const auto integral = integrateGrass2(out.integrand, type.n);
  if (integral.degreeMismatch || !integral.symmetric) throw Error("line integrand is malformed for " + type.label());
  out.count = integral.value;
  out.schur = schurExpansion(out.integrand);
  return out;
}

BigInt lineCount(const incidence::CIType& type) { return lineCountDetail(type).count; }

RootPoly conicBundleTopChern(int d) {
  if (d < 2) throw InvalidInput("conic bundle degree must be at least 2");
  const int top = 2 * d + 1;
  const auto numerator = totalChern(symPowerRoots(d, 3), top);
  std::vector<RootPoly> twisted;
  for (const auto& r : symPowerRoots(d - 2, 3)) twisted.push_back(r - RootPoly::variable(3, RootPoly::kZeta));
  const auto denominator = gradedInverse(totalChern(twisted, top), top);
  RootPoly acc(3);
  for (int i = 0; i <= top; ++i) acc += numerator[static_cast<std::size_t>(i)] * denominator[static_cast<std::size_t>(top - i)];
  return acc;
}

RootPoly pushforwardZetaPower(int k) {
  if (k < 5) return RootPoly(3);
  const auto segre = gradedInverse(quadricBundleChern(), k - 5);
  return segre[static_cast<std::size_t>(k - 5)];
}

ConicCount conicCountDetail(const incidence::CIType& type) {
  type.validate();
  if (incidence::expectedDims(type).conicsDim != 0)
    throw DomainError("conic count needs expected conic dimension 0 for " + type.label());
  RootPoly integrand = RootPoly::constant(3, 1);
  for (int d : type.degrees) integrand = integrand * conicBundleTopChern(d);

  ConicCount out;
  // integrate per zeta power
  const int zmax = integrand.zetaDegree();
  const auto segre = gradedInverse(quadricBundleChern(), std::max(0, zmax - 5));
  RootPoly viaSegre(3);
  for (int k = 5; k <= zmax; ++k) viaSegre += integrand.zetaCoefficient(k) * segre[static_cast<std::size_t>(k - 5)];

  // reduce with the rank-6 relation, then read off zeta^5
  const auto c = quadricBundleChern();
  RootPoly reduced = integrand;
  for (int k = reduced.zetaDegree(); k >= 6; k = reduced.zetaDegree()) {
    const RootPoly lead = reduced.zetaCoefficient(k);
    reduced = reduced - lead.timesZeta(k);
    for (int i = 1; i <= 6; ++i) reduced = reduced - (lead * c[static_cast<std::size_t>(i)]).timesZeta(k - i);
  }
  const RootPoly viaRelation = reduced.zetaCoefficient(5);

  if (!viaSegre.isSymmetric() || !viaRelation.isSymmetric())
    throw Error("pushforward is not symmetric for " + type.label());
  const auto a = integrateGrass(viaSegre, type.n);
  const auto b = integrateGrass(viaRelation, type.n);
  if (a.degreeMismatch || b.degreeMismatch) throw Error("pushforward has the wrong degree for " + type.label());
  out.viaSegre = a.value;
  out.viaRelation = b.value;
  out.pathsAgree = a.value == b.value && viaSegre == viaRelation;
  if (!out.pathsAgree) throw Error("conic count evaluation paths disagree for " + type.label());
  out.count = a.value;
  out.pushforward = viaSegre;
  out.schur = schurExpansion(viaSegre);
  return out;
}

BigInt conicCount(const incidence::CIType& type) { return conicCountDetail(type).count; }

}  // namespace cilab::schubert
