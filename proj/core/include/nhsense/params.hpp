#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace nhsense {

struct HoppingParams {
  double effective_hopping;  // J
  double amplification;      // A
};

struct BareHopping {
  double hopping;     // w
  double pair_drive;  // delta
};

// J = sqrt(w^2 - delta^2), A = artanh(delta / w).
HoppingParams derive_hopping_params(double hopping, double pair_drive);
BareHopping invert_hopping_params(double effective_hopping, double amplification);

struct ChainParams {
  int sites = 1;
  double hopping = 1.0;
  double pair_drive = 0.0;
  double kappa = 1.0;
  double thermal_quanta = 0.0;
  double drive_amplitude = 0.0;
  double drive_phase = 0.0;
  double homodyne_angle = std::numbers::pi / 2;

  static ChainParams from_effective(int sites, double effective_hopping, double amplification,
                                    double kappa = 1.0);

  // Throws DomainError or StabilityError.
  void validate() const;
  std::vector<std::string> warnings() const;

  HoppingParams effective() const;
  double effective_hopping() const { return effective().effective_hopping; }
  double amplification() const { return effective().amplification; }
  bool odd_sites() const { return sites % 2 == 1; }
};

enum class PerturbationKind { None, DispersiveLast, BoundaryHop };

struct Perturbation {
  PerturbationKind kind = PerturbationKind::None;
  double epsilon = 0.0;
  double hop_phase = 0.0;

  static Perturbation none() { return {}; }
  static Perturbation dispersive_last(double epsilon) {
    return {PerturbationKind::DispersiveLast, epsilon, 0.0};
  }
  static Perturbation boundary_hop(double epsilon, double hop_phase) {
    return {PerturbationKind::BoundaryHop, epsilon, hop_phase};
  }
};

}  // namespace nhsense
