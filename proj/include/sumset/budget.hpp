#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "sumset/error.hpp"

namespace sumset {

// Work guards. Every exhaustive routine checks its estimate against one of
// these before starting and throws BudgetExceeded instead of running away.
struct Budget {
  std::uint64_t max_subsets = 100'000'000;       // C(q,k) for census sweeps
  std::uint64_t max_compositions = 10'000'000;   // M_{h,k} for naive profiles
  std::uint64_t max_pairs = 500'000'000;         // unordered composition pairs
  std::uint64_t max_cells = std::uint64_t{1} << 30;  // bits in the fold bitmap

  // Defaults overridden by SUMSET_MAX_SUBSETS / SUMSET_MAX_COMPOSITIONS.
  static Budget from_env() {
    Budget b;
    read_env("SUMSET_MAX_SUBSETS", b.max_subsets);
    read_env("SUMSET_MAX_COMPOSITIONS", b.max_compositions);
    return b;
  }

  static const Budget& defaults() {
    static const Budget b{};
    return b;
  }

 private:
  static void read_env(const char* name, std::uint64_t& out) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == nullptr || *end != '\0') {
      throw InvalidArgument(std::string("environment variable ") + name +
                            " is not a decimal integer: " + raw);
    }
    out = v;
  }
};

inline void require_budget(const char* what, std::uint64_t required, std::uint64_t limit) {
  if (required > limit) throw BudgetExceeded(what, required, limit);
}

}  // namespace sumset
