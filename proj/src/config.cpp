#include "atlas/config.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

namespace atlas {
namespace {

Limits from_environment() {
  Limits l;
  if (const char* cap = std::getenv("SUBGROUP_ATLAS_CAP")) {
    try {
      const unsigned long v = std::stoul(cap);
      if (v > 0 && v <= 65535) l.order_cap = static_cast<std::uint32_t>(v);
    } catch (...) {
    }
  }
  if (const char* t = std::getenv("SUBGROUP_ATLAS_THREADS")) {
    try {
      const unsigned long v = std::stoul(t);
      if (v > 0 && v <= 256) l.threads = static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return l;
}

Limits& storage() {
  static Limits l = from_environment();
  return l;
}

}  // namespace

const Limits& limits() { return storage(); }

void set_limits(const Limits& l) { storage() = l; }

ScopedLimits::ScopedLimits(const Limits& l) : saved_(limits()) { set_limits(l); }

ScopedLimits::~ScopedLimits() { set_limits(saved_); }

}  // namespace atlas
