#pragma once

#include <string>
#include <vector>

namespace cilab::runner {

struct EmbeddedFixture {
  const char* name;
  const char* json;
};

/// The census fixtures (tests/fixtures/*.json) as compiled into the library.
const std::vector<EmbeddedFixture>& embeddedFixtures();

/// Throws InvalidInput for an unknown name.
std::string embeddedFixture(const std::string& name);

}  // namespace cilab::runner
