#pragma once

#include <cstddef>
#include <cstdint>

namespace atlas {

// Process-wide limits. Read once from the environment (SUBGROUP_ATLAS_CAP,
// SUBGROUP_ATLAS_THREADS) and overridable programmatically for tests.
struct Limits {
  // Largest order for which a Cayley table is built and subgroups are enumerated.
  std::uint32_t order_cap = 4096;
  // Largest order of an implicitly represented direct product (no table).
  std::uint32_t product_cap = 1u << 20;
  // Above this order associativity is checked with Light's generator test
  // plus random triples instead of all triples.
  std::uint32_t exhaustive_assoc_limit = 512;
  std::uint32_t random_assoc_triples = 100000;
  // Worker threads for per-level and per-node work; 1 disables threading.
  unsigned threads = 1;
};

const Limits& limits();
void set_limits(const Limits& l);

// Restores the previous limits on scope exit.
class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& l);
  ~ScopedLimits();
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

}  // namespace atlas
