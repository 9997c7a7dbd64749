#include "algebra/roots.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "common/error.hpp"

namespace cilab::algebra {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void splitLinearFactors(const ExtensionField& field, const UPoly<ExtensionField>& r,
                        std::uint64_t& rng, std::vector<ExtensionField::Elem>& out) {
  const int deg = degreeOf<ExtensionField>(r);
  if (deg <= 0) return;
  if (deg == 1) {
    out.push_back(field.neg(field.div(r[0], r[1])));
    return;
  }
  const std::uint64_t half = (field.order() - 1) / 2;
  for (;;) {
    const auto delta = field.fromIndex(splitmix(rng) % field.order());
    UPoly<ExtensionField> shifted{delta, field.one()};
    auto w = powModPoly(field, shifted, half, r);
    w = subPoly(field, w, UPoly<ExtensionField>{field.one()});
    auto d = gcdPoly(field, r, w);
    const int dd = degreeOf<ExtensionField>(d);
    if (dd > 0 && dd < deg) {
      splitLinearFactors(field, d, rng, out);
      splitLinearFactors(field, divModPoly(field, r, d).first, rng, out);
      return;
    }
  }
}

}  // namespace

const ExtensionField& extensionField(const PrimeField& base, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<ExtensionField>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{base.modulus(), degree}];
  if (!slot) slot = std::make_unique<ExtensionField>(base, degree);
  return *slot;
}

UPoly<ExtensionField> liftPoly(const ExtensionField& ext, const UPoly<PrimeField>& g) {
  UPoly<ExtensionField> out;
  out.reserve(g.size());
  for (auto c : g) out.push_back(ext.embed(c));
  trim(ext, out);
  return out;
}

std::vector<ExtensionField::Elem> distinctRootsIn(const ExtensionField& field,
                                                  const UPoly<ExtensionField>& g) {
  UPoly<ExtensionField> monic = monicPoly(field, g);
  if (degreeOf<ExtensionField>(monic) <= 0) return {};
  const UPoly<ExtensionField> x{field.zero(), field.one()};
  auto frob = powModPoly(field, x, field.order(), monic);
  auto split = gcdPoly(field, monic, subPoly(field, frob, x));
  std::vector<ExtensionField::Elem> roots;
  std::uint64_t rng = 0x5eed0000u + field.order();
  splitLinearFactors(field, split, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<ExtensionRoot> univariateRootsInExtension(const PrimeField& field,
                                                      const UPoly<PrimeField>& g,
                                                      int maxExtensionDegree) {
  UPoly<PrimeField> poly = g;
  trim(field, poly);
  if (poly.empty()) throw InvalidInput("root finding on the zero polynomial");
  if (maxExtensionDegree < 1 || maxExtensionDegree > ExtensionField::kMaxDegree) {
    throw InvalidInput("maxExtensionDegree must be in [1, 4]");
  }
  std::vector<ExtensionRoot> result;
  for (int k = 1; k <= maxExtensionDegree; ++k) {
    const auto& ext = extensionField(field, k);
    const auto lifted = liftPoly(ext, poly);
    for (const auto& root : distinctRootsIn(ext, lifted)) {
      if (ext.minimalDegree(root) != k) continue;
      int mult = 0;
      auto rest = lifted;
      const UPoly<ExtensionField> lin{ext.neg(root), ext.one()};
      for (;;) {
        auto [q, r] = divModPoly(ext, rest, lin);
        if (!r.empty()) break;
        ++mult;
        rest = std::move(q);
      }
      result.push_back({k, root, mult});
    }
  }
  return result;
}

}  // namespace cilab::algebra
