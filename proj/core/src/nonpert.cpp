#include "nhsense/nonpert.hpp"

#include <cmath>

#include "nhsense/dynamics.hpp"
#include "nhsense/errors.hpp"
#include "nhsense/greens.hpp"
#include "nhsense/oracle.hpp"
#include "nhsense/sensing.hpp"

namespace nhsense {

namespace {

constexpr double kLogGuard = 600.0;

struct ZeroFrequencyRT {
  double r;
  double t;
};

ZeroFrequencyRT zero_frequency_rt(double eps0, double kappa) {
  const double hk = 0.5 * kappa;
  const double den = hk * hk + eps0 * eps0;
  return {-(hk * hk - eps0 * eps0) / den, kappa * eps0 / den};
}

std::complex<double> reflection_amplitude(double omega, const ChainParams& params, double eps0,
                                          double* a_out, double* b_out) {
  const int sites = params.sites;
  const double j = params.effective_hopping();
  const double x = omega / (2.0 * j);
  const double a = j * chebyshev_u(sites, x) - eps0 * chebyshev_u(sites - 1, x);
  const double b =
      0.5 * params.kappa * (eps0 / j * chebyshev_u(sites - 2, x) - chebyshev_u(sites - 1, x));
  if (a_out) *a_out = a;
  if (b_out) *b_out = b;
  return std::complex<double>(a, b) / std::complex<double>(a, -b);
}

double coherent_total(const ChainParams& params, double eps0) {
  const DynamicalMatrix m = build_dynamical_matrix(params, Perturbation::dispersive_last(eps0));
  const Eigen::VectorXd v = steady_state_response(m, drive_vector(params));
  return 0.5 * v.squaredNorm();
}

double vacuum_total(const ChainParams& params, double eps0) {
  const DynamicalMatrix m = build_dynamical_matrix(params, Perturbation::dispersive_last(eps0));
  const Eigen::MatrixXd sigma =
      steady_state_covariance(m, NoiseModel{params.thermal_quanta}, params);
  return 0.5 * (sigma.trace() - static_cast<double>(m.sites()));
}

}  // namespace

double ScatteringMatrix::gain() const { return std::exp(log_gain); }

Eigen::Matrix2cd ScatteringMatrix::matrix() const {
  Eigen::Matrix2cd out;
  out << reflection, -transmission * std::exp(-log_gain), transmission * std::exp(log_gain),
      reflection;
  return out;
}

ScatteringMatrix scattering_matrix(double omega, const ChainParams& params, double eps0) {
  params.validate();
  ScatteringMatrix out{};
  out.omega = omega;
  out.log_gain = 2.0 * params.amplification() * (params.sites - 1);
  out.s = reflection_amplitude(omega, params, eps0, &out.a, &out.b);
  const std::complex<double> mirrored =
      std::conj(reflection_amplitude(-omega, params, eps0, nullptr, nullptr));
  out.reflection = 0.5 * (out.s + mirrored);
  out.transmission = (out.s - mirrored) / std::complex<double>(0.0, 2.0);
  return out;
}

std::vector<SeriesTerm> output_series_coefficients(const ChainParams& params, double eps0,
                                                   int k_max) {
  params.validate();
  (void)eps0;
  if (k_max < 0 || k_max > 4) throw UnsupportedOrderError("series available for orders 0..4");
  const double gain = std::exp(2.0 * params.amplification() * (params.sites - 1));
  // R = -(1 - 4e^2)/(1 + 4e^2), T = 4e/(1 + 4e^2) with e = eps0/kappa.
  std::vector<SeriesTerm> out;
  for (int k = 0; k <= k_max; ++k) {
    double r = 0.0;
    double t = 0.0;
    if (k == 0) {
      r = -1.0;
    } else if (k % 2 == 0) {
      r = -2.0 * std::pow(-4.0, k / 2);
    } else {
      t = 4.0 * std::pow(-4.0, (k - 1) / 2);
    }
    out.push_back({k, r, -t / gain, t * gain, r});
  }
  return out;
}

double q_factor(const ChainParams& params, double eps0, PhotonAccounting accounting) {
  params.validate();
  ChainParams driven = params;
  // The coherent-only ratio does not depend on the drive amplitude.
  if (driven.drive_amplitude == 0.0) driven.drive_amplitude = 1.0;
  const double beta_sq = driven.drive_amplitude * driven.drive_amplitude;
  const double a = driven.amplification();
  double n0 = coherent_total(driven, 0.0);
  double n1 = coherent_total(driven, eps0);
  if (accounting == PhotonAccounting::IncludeVacuum) {
    n0 += vacuum_total(driven, 0.0);
    n1 += vacuum_total(driven, eps0);
  }
  const double last = 4.0 * beta_sq * std::exp(2.0 * a * (driven.sites - 1)) / driven.kappa;
  return last / (0.5 * (n0 + n1));
}

double snr_nonpert_with_q(const ChainParams& params, double eps0, double tau, double n_tot,
                          double q) {
  params.validate();
  if (!(tau >= 0.0) || !(n_tot >= 0.0)) throw DomainError("tau and n_tot must be non-negative");
  const ZeroFrequencyRT rt = zero_frequency_rt(eps0, params.kappa);
  const double a = params.amplification() * (params.sites - 1);
  const double prefactor = std::sqrt(2.0 * q * n_tot * params.kappa * tau) * std::abs(rt.t);
  if (4.0 * a <= kLogGuard) {
    const double g = std::exp(a);
    const double g4 = g * g * g * g;
    return prefactor * g / std::sqrt(1.0 + rt.r * rt.r + rt.t * rt.t * g4);
  }
  // log-domain: ln(1 + R^2 + T^2 e^{4a}) via log-sum-exp.
  const double l1 = std::log1p(rt.r * rt.r);
  const double l2 = 2.0 * std::log(std::abs(rt.t)) + 4.0 * a;
  const double hi = std::max(l1, l2);
  const double log_den = hi + std::log(std::exp(l1 - hi) + std::exp(l2 - hi));
  return std::exp(std::log(prefactor) + a - 0.5 * log_den);
}

double snr_nonpert(const ChainParams& params, double eps0, double tau, double n_tot) {
  return snr_nonpert_with_q(params, eps0, tau, n_tot, q_factor(params, eps0));
}

std::optional<double> optimal_amplification(double eps0, double kappa, int sites) {
  if (!(kappa > 0.0) || sites < 1) throw DomainError("kappa and N must be positive");
  if (!(std::abs(eps0) < 0.5 * kappa) || eps0 == 0.0) {
    throw DomainError("optimal amplification requires 0 < |eps0| < kappa/2");
  }
  if (sites == 1) return std::nullopt;
  const ZeroFrequencyRT rt = zero_frequency_rt(eps0, kappa);
  return std::log((1.0 + rt.r * rt.r) / (rt.t * rt.t)) / (4.0 * (sites - 1));
}

std::optional<double> optimal_amplification_approx(double eps0, double kappa, int sites) {
  if (!(kappa > 0.0) || sites < 1 || eps0 == 0.0) throw DomainError("invalid arguments");
  if (sites == 1) return std::nullopt;
  return std::log(kappa * kappa / (8.0 * eps0 * eps0)) / (4.0 * (sites - 1));
}

double optimal_sites(double amplification, double eps0, double kappa) {
  if (!(amplification > 0.0)) throw DomainError("amplification must be positive");
  if (!(std::abs(eps0) < 0.5 * kappa) || eps0 == 0.0) {
    throw DomainError("optimal size requires 0 < |eps0| < kappa/2");
  }
  const ZeroFrequencyRT rt = zero_frequency_rt(eps0, kappa);
  return 1.0 + std::log((1.0 + rt.r * rt.r) / (rt.t * rt.t)) / (4.0 * amplification);
}

double peak_snr_prediction(double q, double n_tot, double kappa, double tau, double eps0) {
  return std::pow(8.0, 0.25) * std::sqrt(q * n_tot * kappa * tau) * std::sqrt(std::abs(eps0) / kappa);
}

}  // namespace nhsense
