#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mixsn/error.hpp"

namespace testing {

inline std::vector<double> filled(std::size_t d, double v) { return std::vector<double>(d, v); }

// Error code thrown by f, or nothing.
inline std::optional<mixsn::Errc> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const mixsn::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
