#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixsn {

enum class Errc {
  NonPositiveSmoothness,
  InvalidFineIndex,
  EnergyNeedsSmoothness,
  InvalidArgument,
  BudgetExceeded,
  AlphaTooSmall,
  DivergentArgument,
  NoSignChange,
  UnknownTheorem,
  MissingParameter,
  BoxTooSmall,
};

/// Stable name of an error code, used verbatim on the CLI's stderr.
std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  Errc code_;
};

}  // namespace mixsn
