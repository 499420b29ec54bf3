#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gmdet {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// Randomized invariant checks; identical seeds give identical results.
std::vector<PropertyResult> run_properties(std::uint64_t seed, std::size_t cases);

}  // namespace gmdet
