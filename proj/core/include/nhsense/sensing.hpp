#pragma once

#include <functional>

#include <Eigen/Dense>

#include "nhsense/params.hpp"

namespace nhsense {

struct PhotonBudget {
  Eigen::VectorXd per_site;  // coherent photons |<a_n>|^2
  double n_coherent;         // sum of per_site
  double n_vac;              // drive-independent part, all sites
  double n_tot;              // n_coherent + n_vac
  double n_last;             // coherent photons on site N
  double last_site_fraction; // n_last / n_coherent
};

// Z(A) for odd N: fraction of coherent photons on the last site.
double last_site_fraction(double amplification, int sites);

PhotonBudget photon_numbers(const ChainParams& params);

// Copy of params with the drive amplitude set so the unperturbed coherent
// photon number equals n_coherent.
ChainParams with_total_photons(const ChainParams& params, double n_coherent);

struct SensingResult {
  double signal;
  double noise;
  double snr;
  double qfi;  // (snr / eps)^2 at the optimal homodyne angle
  double tau;
  double phi_opt;
};

// Homodyne signal of a dispersive shift eps on site N at params.homodyne_angle.
double homodyne_signal_linear(const ChainParams& params, double eps, double tau);

double homodyne_noise(double thermal_quanta);

SensingResult snr_qfi_linear(const ChainParams& params, double eps, double tau);

// Same quantities for the boundary hop eps (e^{i hop_phase} a1^dag aN + h.c.).
SensingResult snr_nhse(const ChainParams& params, double eps, double hop_phase, double tau);

double homodyne_signal_nhse(const ChainParams& params, double eps, double hop_phase, double tau);

// Maximiser of a unimodal function on [lo, hi].
double golden_section_maximum(const std::function<double(double)>& f, double lo, double hi,
                              double tol = 1e-10);

}  // namespace nhsense
