#include "nhsense/params.hpp"

#include <cmath>
#include <sstream>

#include "nhsense/errors.hpp"

namespace nhsense {

HoppingParams derive_hopping_params(double hopping, double pair_drive) {
  if (!std::isfinite(hopping) || !std::isfinite(pair_drive) || hopping < 0.0 || pair_drive < 0.0) {
    throw DomainError("hopping and pair drive must be finite and non-negative");
  }
  if (hopping <= pair_drive) {
    std::ostringstream msg;
    msg << "unstable chain: hopping w=" << hopping << " must exceed pair drive delta=" << pair_drive;
    throw StabilityError(msg.str());
  }
  const double j = std::sqrt((hopping - pair_drive) * (hopping + pair_drive));
  const double a = std::atanh(pair_drive / hopping);
  return {j, a};
}

BareHopping invert_hopping_params(double effective_hopping, double amplification) {
  if (!(effective_hopping > 0.0) || !std::isfinite(effective_hopping)) {
    throw DomainError("effective hopping J must be positive");
  }
  if (!(amplification >= 0.0) || !std::isfinite(amplification)) {
    throw DomainError("amplification A must be finite and non-negative");
  }
  return {effective_hopping * std::cosh(amplification), effective_hopping * std::sinh(amplification)};
}

ChainParams ChainParams::from_effective(int sites, double effective_hopping, double amplification,
                                        double kappa) {
  const BareHopping bare = invert_hopping_params(effective_hopping, amplification);
  ChainParams p;
  p.sites = sites;
  p.hopping = bare.hopping;
  p.pair_drive = bare.pair_drive;
  p.kappa = kappa;
  return p;
}

void ChainParams::validate() const {
  if (sites < 1) throw DomainError("number of sites must be positive");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
  if (!(thermal_quanta >= 0.0)) throw DomainError("thermal occupancy must be non-negative");
  if (!(drive_amplitude >= 0.0)) throw DomainError("drive amplitude must be non-negative");
  if (!std::isfinite(drive_phase) || !std::isfinite(homodyne_angle)) {
    throw DomainError("phases must be finite");
  }
  derive_hopping_params(hopping, pair_drive);
}

std::vector<std::string> ChainParams::warnings() const {
  std::vector<std::string> out;
  if (!odd_sites()) {
    out.push_back("even number of sites: no zero-frequency mode, responses suppressed by ~kappa/(2J)");
  }
  return out;
}

HoppingParams ChainParams::effective() const { return derive_hopping_params(hopping, pair_drive); }

}  // namespace nhsense
