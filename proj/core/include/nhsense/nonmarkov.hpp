#pragma once

#include <complex>

#include <Eigen/Dense>

#include "nhsense/dynamics.hpp"
#include "nhsense/params.hpp"

namespace nhsense {

struct Timescales {
  double round_trip;  // N / J
  double escape;      // (N + 1) / kappa
  double tau_star;    // measurement time as eps0 -> 0
};

Timescales timescales(const ChainParams& params, double eps0, double n_tot);

// 1 + e^{-x} - (2/x)(1 - e^{-x}); finite-window factor of the single-pole model.
double single_pole_bracket(double x);

double snr_single_pole(const ChainParams& params, double eps0, double tau, double n_tot);

double snr_finite_j(const ChainParams& params, double eps0, double tau, double n_tot);

// Pole approximation of chi^{xx}[N,1; omega] near omega = 0.
std::complex<double> single_pole_chi_xx(const ChainParams& params, double omega);

enum class TimeMode { Analytic, Numeric };

// Smallest tau with SNR(tau) = 1.
double measurement_time(const ChainParams& params, double eps0, double n_tot, TimeMode mode);

// Root of snr_single_pole = 1 (no round-trip cutoff).
double measurement_time_unbounded(const ChainParams& params, double eps0, double n_tot);

// sqrt(6) t_esc (tau* / (sqrt(6) t_esc))^{1/5}.
double strong_measurement_asymptote(const Timescales& t);

// Precomputed finite-difference pair for repeated transient SNR evaluations.
class TransientSnr {
 public:
  TransientSnr(const ChainParams& params, double eps0, double n_tot);

  double operator()(double tau) const;
  double step() const { return step_; }

 private:
  DynamicalMatrix plus_;
  DynamicalMatrix minus_;
  Eigen::VectorXd drive_;
  Eigen::VectorXd readout_;
  double eps0_;
  double step_;
  double kappa_;
  double noise_;
};

double snr_transient_numeric(const ChainParams& params, double eps0, double tau, double n_tot);

}  // namespace nhsense
