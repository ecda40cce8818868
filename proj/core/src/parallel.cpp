#include "discordlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace discordlab {

int resolve_thread_count(std::optional<int> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("DISCORDLAB_THREADS")) {
    try {
      const int value = std::stoi(env);
      if (value > 0) return value;
    } catch (const std::exception&) {
      // ignored: fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace discordlab
