#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace divmbest {

/// Fixed-point cost. Real costs are multiplied by a scale S and rounded.
using Cost = std::int64_t;
using NodeId = std::int32_t;

inline constexpr double kDefaultScale = 1e6;

inline Cost to_fixed(double value, double scale) {
  return static_cast<Cost>(std::llround(value * scale));
}

inline double to_real(Cost value, double scale) {
  return static_cast<double>(value) / scale;
}

enum class ErrorCode {
  invalid_input,
  not_submodular,
  not_concave,
  budget_exceeded,
  state,
  parse,
};

std::string_view to_string(ErrorCode code);

/// Every refusal in the library is reported through this type so that the
/// CLI can map it onto a machine-readable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace divmbest
