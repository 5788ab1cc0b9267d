#include "nhsense/nonmarkov.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "nhsense/errors.hpp"
#include "nhsense/greens.hpp"
#include "nhsense/oracle.hpp"
#include "nhsense/sensing.hpp"

namespace nhsense {

namespace {

void require_odd(const ChainParams& params) {
  if (!params.odd_sites()) throw DomainError("single-pole analytics require odd N");
}

// Bisection on log tau for f(tau) = 1 with f(lo) < 1 <= f(hi).
double bisect_log(const std::function<double(double)>& f, double lo, double hi) {
  double log_lo = std::log(lo);
  double log_hi = std::log(hi);
  while (log_hi - log_lo > 1e-7) {
    const double mid = 0.5 * (log_lo + log_hi);
    if (f(std::exp(mid)) >= 1.0) {
      log_hi = mid;
    } else {
      log_lo = mid;
    }
  }
  return std::exp(0.5 * (log_lo + log_hi));
}

// Geometric scan upward from lo for the first tau with f >= 1, then bisection.
double first_crossing(const std::function<double(double)>& f, double lo, double hi) {
  constexpr double ratio = 1.7782794100389228;  // 10^{1/4}
  constexpr double floor = 1e-12;
  while (f(lo) >= 1.0) {
    if (lo < floor) throw NumericalError("measurement-time bracket collapsed");
    lo /= 10.0;
  }
  double prev = lo;
  double cur = lo * ratio;
  while (f(cur) < 1.0) {
    prev = cur;
    cur *= ratio;
    if (cur > hi) throw NumericalError("SNR does not reach 1 inside the bracket");
  }
  return bisect_log(f, prev, cur);
}

}  // namespace

Timescales timescales(const ChainParams& params, double eps0, double n_tot) {
  params.validate();
  require_odd(params);
  if (!(eps0 != 0.0) || !(n_tot > 0.0)) throw DomainError("eps0 and n_tot must be non-zero");
  const HoppingParams h = params.effective();
  const int sites = params.sites;
  const double kappa = params.kappa;
  const double z = last_site_fraction(h.amplification, sites);
  const double ratio = kappa / eps0;
  Timescales t{};
  t.round_trip = sites / h.effective_hopping;
  t.escape = (sites + 1) / kappa;
  t.tau_star = (2.0 * params.thermal_quanta + 1.0) * ratio * ratio *
               std::exp(-2.0 * h.amplification * (sites - 1)) / (16.0 * z * n_tot * kappa);
  return t;
}

double single_pole_bracket(double x) {
  if (!(x > 0.0)) throw DomainError("bracket argument must be positive");
  if (x < 0.5) {
    // sum_{k>=2} (-1)^k (k-1) x^k / (k+1)!
    double term = 1.0;  // x^k / (k+1)! at k = 0
    double sum = 0.0;
    for (int k = 1; k <= 30; ++k) {
      term *= x / (k + 1);
      if (k >= 2) sum += ((k % 2 == 0) ? 1.0 : -1.0) * (k - 1) * term;
    }
    return sum;
  }
  const double decay = std::exp(-x);
  return 1.0 + decay + (2.0 / x) * std::expm1(-x);
}

double snr_single_pole(const ChainParams& params, double eps0, double tau, double n_tot) {
  if (!(tau > 0.0)) throw DomainError("integration time must be positive");
  const Timescales t = timescales(params, eps0, n_tot);
  return std::sqrt(tau / t.tau_star) * single_pole_bracket(tau / t.escape);
}

double snr_finite_j(const ChainParams& params, double eps0, double tau, double n_tot) {
  const Timescales t = timescales(params, eps0, n_tot);
  if (!(tau > t.round_trip)) return 0.0;
  return snr_single_pole(params, eps0, tau, n_tot);
}

std::complex<double> single_pole_chi_xx(const ChainParams& params, double omega) {
  params.validate();
  require_odd(params);
  const int sites = params.sites;
  const double a = params.amplification();
  // Residue phase i^N U_{N-1}(0) keeps the pole consistent with the exact response at omega = 0.
  const double u = chebyshev_u(sites - 1, 0.0);
  const std::complex<double> phase = std::pow(std::complex<double>(0.0, 1.0), sites) * u;
  const std::complex<double> pole(omega, params.kappa / (sites + 1));
  return 2.0 * phase / static_cast<double>(sites + 1) * std::exp(a * (sites - 1)) / pole;
}

double strong_measurement_asymptote(const Timescales& t) {
  const double s6 = std::sqrt(6.0);
  return s6 * t.escape * std::pow(t.tau_star / (s6 * t.escape), 0.2);
}

double measurement_time_unbounded(const ChainParams& params, double eps0, double n_tot) {
  const Timescales t = timescales(params, eps0, n_tot);
  auto snr = [&](double tau) { return std::sqrt(tau / t.tau_star) * single_pole_bracket(tau / t.escape); };
  const double reach = std::max(t.tau_star, t.escape);
  return first_crossing(snr, std::max(t.round_trip, 1e-3 / params.kappa), 1e3 * reach);
}

double measurement_time(const ChainParams& params, double eps0, double n_tot, TimeMode mode) {
  const Timescales t = timescales(params, eps0, n_tot);
  const double analytic = std::max(measurement_time_unbounded(params, eps0, n_tot), t.round_trip);
  if (mode == TimeMode::Analytic) return analytic;
  const TransientSnr snr(params, eps0, n_tot);
  const double hi = 1e3 * std::max(t.tau_star, t.escape);
  return first_crossing(snr, 1e-2 * analytic, hi);
}

TransientSnr::TransientSnr(const ChainParams& params, double eps0, double n_tot)
    : plus_(1, Eigen::MatrixXd::Zero(2, 2)), minus_(1, Eigen::MatrixXd::Zero(2, 2)), eps0_(eps0) {
  params.validate();
  const ChainParams driven = with_total_photons(params, n_tot);
  const double a = driven.amplification();
  kappa_ = driven.kappa;
  noise_ = homodyne_noise(driven.thermal_quanta);
  // The response grows as e^{2A(N-1)}; the step keeps eps * gain well inside the linear regime.
  step_ = 1e-6 * kappa_ * std::exp(-2.0 * a * (driven.sites - 1));
  plus_ = build_dynamical_matrix(driven, Perturbation::dispersive_last(step_));
  minus_ = build_dynamical_matrix(driven, Perturbation::dispersive_last(-step_));
  drive_ = drive_vector(driven);
  readout_ = Eigen::VectorXd::Zero(plus_.dim());
  readout_[plus_.x(1)] = std::cos(driven.homodyne_angle);
  readout_[plus_.p(1)] = std::sin(driven.homodyne_angle);
}

double TransientSnr::operator()(double tau) const {
  if (!(tau > 0.0)) throw DomainError("integration time must be positive");
  const double up = transient_window(plus_, drive_, readout_, tau).integral;
  const double down = transient_window(minus_, drive_, readout_, tau).integral;
  const double slope = (up - down) / (2.0 * step_);
  const double signal = std::sqrt(kappa_ / tau) * std::abs(eps0_ * slope);
  return signal / noise_;
}

double snr_transient_numeric(const ChainParams& params, double eps0, double tau, double n_tot) {
  return TransientSnr(params, eps0, n_tot)(tau);
}

}  // namespace nhsense
