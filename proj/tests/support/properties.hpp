#pragma once

// Property suites over generated instances. Both the unit tests and the
// acceptance binary run these.

#include <cstdint>
#include <string>

namespace minik::testing {

struct PropertyResult {
  std::string name;
  int instances = 0;  // instances where the property's premise held
  int failures = 0;
  std::string first_failure;

  [[nodiscard]] bool ok(int min_instances) const { return failures == 0 && instances >= min_instances; }
};

PropertyResult prop_subtype_reflexive(std::uint64_t seed, int n);
PropertyResult prop_subtype_transitive(std::uint64_t seed, int n);
PropertyResult prop_variance_lifting(std::uint64_t seed, int n);
PropertyResult prop_lub_minimal(std::uint64_t seed, int n);
PropertyResult prop_provenance_monotone(std::uint64_t seed, int n);
PropertyResult prop_provenance_conservative(std::uint64_t seed, int n);
PropertyResult prop_parser_round_trip(std::uint64_t seed, int n);

}  // namespace minik::testing
