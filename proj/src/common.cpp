#include "divmbest/common.hpp"

namespace divmbest {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
      return "invalid_input";
    case ErrorCode::not_submodular:
      return "not_submodular";
    case ErrorCode::not_concave:
      return "not_concave";
    case ErrorCode::budget_exceeded:
      return "budget_exceeded";
    case ErrorCode::state:
      return "state";
    case ErrorCode::parse:
      return "parse";
  }
  return "unknown";
}

}  // namespace divmbest
