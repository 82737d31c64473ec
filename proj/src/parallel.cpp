#include "ffvar/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ffvar {

unsigned thread_count() {
  static const unsigned n = [] {
    unsigned v = 0;
    if (const char* env = std::getenv("FFVAR_THREADS")) v = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (v == 0) v = std::thread::hardware_concurrency();
    return v == 0 ? 1u : v;
  }();
  return n;
}

}  // namespace ffvar
