#include "slat/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace slat {

unsigned resolve_jobs(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SLAT_JOBS")) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
    if (ec == std::errc() && value > 0) return value;
  }
  return 1;
}

}  // namespace slat
