#include "runner/fixtures.hpp"

#include "common/error.hpp"

namespace cilab::runner {

std::string embeddedFixture(const std::string& name) {
  for (const auto& f : embeddedFixtures())
    if (name == f.name) return f.json;
  throw InvalidInput("no embedded fixture named " + name);
}

}  // namespace cilab::runner
