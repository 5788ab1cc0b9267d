#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nhsense/params.hpp"

namespace nhsense {

struct ScatteringMatrix {
  std::complex<double> reflection;    // R
  std::complex<double> transmission;  // T
  double log_gain;                    // 2A(N-1)
  double omega;
  std::complex<double> s;  // 1 - kappa chi_eps[1,1; omega]
  double a;
  double b;

  double gain() const;  // e^{2A(N-1)}
  // Rows (X_out, P_out), columns (X_in, P_in).
  Eigen::Matrix2cd matrix() const;
};

ScatteringMatrix scattering_matrix(double omega, const ChainParams& params, double eps0);

struct SeriesTerm {
  int order;
  double x_from_x;
  double x_from_p;
  double p_from_x;
  double p_from_p;
};

// Coefficients of (eps0/kappa)^k in the zero-frequency output quadratures, k = 0..k_max.
std::vector<SeriesTerm> output_series_coefficients(const ChainParams& params, double eps0,
                                                   int k_max);

enum class PhotonAccounting { CoherentOnly, IncludeVacuum };

// 4 beta^2 e^{2A(N-1)} / kappa divided by the mean of n_tot(0) and n_tot(eps0).
double q_factor(const ChainParams& params, double eps0,
                PhotonAccounting accounting = PhotonAccounting::CoherentOnly);

double snr_nonpert(const ChainParams& params, double eps0, double tau, double n_tot);

// Same with a precomputed Q.
double snr_nonpert_with_q(const ChainParams& params, double eps0, double tau, double n_tot,
                          double q);

// A* with e^{4A*(N-1)} = (1 + R^2) / T^2; empty for N = 1.
std::optional<double> optimal_amplification(double eps0, double kappa, int sites);

// Small eps0 form e^{4A*(N-1)} = kappa^2 / (8 eps0^2).
std::optional<double> optimal_amplification_approx(double eps0, double kappa, int sites);

// Continuous N* at fixed A.
double optimal_sites(double amplification, double eps0, double kappa);

// 8^{1/4} sqrt(Q n_tot kappa tau) sqrt(eps0 / kappa).
double peak_snr_prediction(double q, double n_tot, double kappa, double tau, double eps0);

}  // namespace nhsense
