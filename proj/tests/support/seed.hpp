#pragma once

#include <cstdint>

namespace testing_support {

// Seed for randomized tests; set from --seed, default 0.
inline std::uint64_t& seed() {
  static std::uint64_t s = 0;
  return s;
}

}  // namespace testing_support
