#pragma once

#include <cstddef>
#include <string>

namespace forcelab {

// Result of an exhaustive verification: how many instances were examined and
// the first failure, if any.
struct CheckOutcome {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure;
};

}  // namespace forcelab
