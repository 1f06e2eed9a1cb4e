#pragma once

#include <string>

#include <json.hpp>

namespace pmelab {

/// Outcome of an inequality / property checker. `fitted_constant` is the
/// ratio lhs/rhs; `refinement_stability` compares fitted constants obtained
/// at two quadrature resolutions (1.0 = perfectly stable).
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double fitted_constant = 0.0;
  bool pass = false;
  double refinement_stability = 1.0;

  nlohmann::json to_json() const {
    return {{"schema", 1},
            {"name", name},
            {"lhs", lhs},
            {"rhs", rhs},
            {"fitted_constant", fitted_constant},
            {"pass", pass},
            {"refinement_stability", refinement_stability}};
  }
};

}  // namespace pmelab
