#include "gridqos/parallel.hpp"

#include <cstdlib>

#include "gridqos/text_format.hpp"

namespace gridqos {

std::size_t default_thread_count() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("GRIDQOS_THREADS")) {
    if (const auto value = parse_integer(cap); value && *value >= 1) {
      threads = std::min(threads, static_cast<std::size_t>(*value));
    }
  }
  return threads;
}

}  // namespace gridqos
