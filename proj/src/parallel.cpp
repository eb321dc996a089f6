#include "latgad/parallel.hpp"

#include <cstdlib>
#include <string>

namespace latgad {

int default_threads() {
  if (const char* env = std::getenv("LATGAD_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
  }
  return 1;
}

}  // namespace latgad
