#include "multlab/scan.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "common/error.hpp"

namespace cilab::multlab {

namespace {

constexpr std::size_t kMaxStoredCounterexamples = 32;

std::uint64_t powChecked(std::uint64_t q, std::size_t e) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / q) throw BudgetExceeded("hyperplane count overflows");
    out *= q;
  }
  return out;
}

void accumulate(ScanReport& into, const ScanReport& part) {
  into.fullCodim += part.fullCodim;
  into.witnessedDrop += part.witnessedDrop;
  into.counterexampleCount += part.counterexampleCount;
  into.fallbackWitnessed += part.fallbackWitnessed;
  into.multiplicityShortfall += part.multiplicityShortfall;
  into.zeroCodim += part.zeroCodim;
  into.maxWitnessExtensionDegree = std::max(into.maxWitnessExtensionDegree, part.maxWitnessExtensionDegree);
  for (const auto& c : part.counterexamples)
    if (into.counterexamples.size() < kMaxStoredCounterexamples) into.counterexamples.push_back(c);
}

void scanRange(const PrimeField& field, const MultLayout& layout, std::uint64_t begin, std::uint64_t end,
               ScanReport& out) {
  const int expected = kindInfo(layout.kind).expectedCodim;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const auto a = hyperplaneAt(layout.targetTotal, field.modulus(), idx);
    const auto rep = analyzeHyperplane(field, layout, a);
    if (rep.actualCodim == 0) ++out.zeroCodim;
    switch (rep.verdict) {
      case Verdict::FullCodim:
        ++out.fullCodim;
        break;
      case Verdict::WitnessedDrop: {
        ++out.witnessedDrop;
        int mult = 0;
        bool fallback = true;
        for (const auto& w : rep.witnesses) {
          mult += w.multiplicity;
          fallback = fallback && !w.fromDependence;
          out.maxWitnessExtensionDegree = std::max(out.maxWitnessExtensionDegree, w.extensionDegree);
        }
        out.fallbackWitnessed += fallback;
        out.multiplicityShortfall += mult < expected - rep.actualCodim;
        break;
      }
      case Verdict::Counterexample:
        ++out.counterexampleCount;
        if (out.counterexamples.size() < kMaxStoredCounterexamples) out.counterexamples.push_back(a);
        break;
    }
  }
}

}  // namespace

std::uint64_t hyperplaneCount(std::size_t dim, std::uint64_t q) {
  if (dim == 0) return 0;
  return (powChecked(q, dim) - 1) / (q - 1);
}

std::vector<Residue> hyperplaneAt(std::size_t dim, std::uint32_t q, std::uint64_t index) {
  std::vector<Residue> a(dim, 0);
  for (std::size_t lead = 0; lead < dim; ++lead) {
    const std::uint64_t block = powChecked(q, dim - 1 - lead);
    if (index < block) {
      a[lead] = 1;
      for (std::size_t pos = dim; pos-- > lead + 1;) {
        a[pos] = static_cast<Residue>(index % q);
        index /= q;
      }
      return a;
    }
    index -= block;
  }
  throw InvalidInput("hyperplane index out of range");
}

ScanReport exhaustiveDichotomyScan(MultMapKind kind, const std::vector<int>& degrees, std::uint32_t q,
                                   std::uint64_t budget, unsigned threads) {
  const PrimeField field(q);
  const auto layout = makeLayout(field, kind, degrees);
  ScanReport report;
  report.kind = kind;
  report.degrees = degrees;
  report.q = q;
  report.totalHyperplanes = hyperplaneCount(layout.targetTotal, q);
  if (report.totalHyperplanes > budget)
    throw BudgetExceeded("scan over " + std::to_string(report.totalHyperplanes) + " hyperplanes exceeds budget " +
                         std::to_string(budget));

  threads = std::max(1u, threads);
  const std::uint64_t chunkCount = std::min<std::uint64_t>(report.totalHyperplanes, 64ull * threads);
  std::vector<ScanReport> parts(chunkCount);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunkCount;) {
      const std::uint64_t begin = report.totalHyperplanes * c / chunkCount;
      const std::uint64_t end = report.totalHyperplanes * (c + 1) / chunkCount;
      scanRange(field, layout, begin, end, parts[c]);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& p : parts) accumulate(report, p);
  return report;
}

nlohmann::json toJson(const ScanReport& r) {
  return nlohmann::json{
      {"kind", kindInfo(r.kind).name},
      {"degrees", r.degrees},
      {"q", r.q},
      {"expectedCodim", kindInfo(r.kind).expectedCodim},
      {"totals",
       {{"totalHyperplanes", r.totalHyperplanes},
        {"fullCodim", r.fullCodim},
        {"witnessedDrop", r.witnessedDrop},
        {"counterexamples", r.counterexampleCount},
        {"fallbackWitnessed", r.fallbackWitnessed},
        {"multiplicityShortfall", r.multiplicityShortfall},
        {"zeroCodim", r.zeroCodim},
        {"maxWitnessExtensionDegree", r.maxWitnessExtensionDegree}}},
      {"counterexamples", r.counterexamples},
  };
}

}  // namespace cilab::multlab
