#pragma once

#include <stdexcept>
#include <string>

namespace addcomb {

// Thrown when an input exceeds a configured resource cap (group size,
// meet-in-the-middle width, oracle budget).
class capacity_error : public std::runtime_error {
  public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace addcomb
