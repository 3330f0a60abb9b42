#include "toricgw/parallel.hpp"

#include <cstdlib>
#include <string>

namespace toricgw {

unsigned thread_count() {
  if (const char* env = std::getenv("TORICGW_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min(v, 256L));
    } catch (...) {
    }
    return 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : std::min(hw, 16u);
}

}  // namespace toricgw
