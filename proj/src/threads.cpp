#include "rsscflp/threads.hpp"

#include <cstdlib>

namespace rsscflp {

int resolve_threads(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("RSSCFLP_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0 && parsed <= 256)
      return static_cast<int>(parsed);
  }
  return 1;
}

}  // namespace rsscflp
