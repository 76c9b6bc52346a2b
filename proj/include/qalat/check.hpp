#pragma once

#include <stdexcept>
#include <string>

namespace qalat {

// Always-on invariant check, independent of NDEBUG. These guard mathematical
// postconditions whose failure would mean a wrong answer rather than a usage
// error, so they must not compile away in release builds.
inline void internal_check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("internal invariant violated: ") + what);
}

}  // namespace qalat
