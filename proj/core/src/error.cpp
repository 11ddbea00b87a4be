#include "mixsn/error.hpp"

namespace mixsn {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveSmoothness: return "NonPositiveSmoothness";
    case Errc::InvalidFineIndex: return "InvalidFineIndex";
    case Errc::EnergyNeedsSmoothness: return "EnergyNeedsSmoothness";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::AlphaTooSmall: return "AlphaTooSmall";
    case Errc::DivergentArgument: return "DivergentArgument";
    case Errc::NoSignChange: return "NoSignChange";
    case Errc::UnknownTheorem: return "UnknownTheorem";
    case Errc::MissingParameter: return "MissingParameter";
    case Errc::BoxTooSmall: return "BoxTooSmall";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace mixsn
