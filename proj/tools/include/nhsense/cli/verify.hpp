#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nhsense/cli/config.hpp"

namespace nhsense::cli {

struct CheckOutcome {
  long long cases = 0;
  double max_error = 0.0;  // relative unless the check says otherwise
};

struct VerifyCheck {
  std::string name;
  std::function<CheckOutcome()> run;
};

// Oracle-equivalence checks over the config's sites, couplings, eps0 and thermal grids.
std::vector<VerifyCheck> verification_checks(const RunConfig& config);

}  // namespace nhsense::cli
