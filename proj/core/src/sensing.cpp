#include "nhsense/sensing.hpp"

#include <cmath>
#include <numbers>

#include "nhsense/dynamics.hpp"
#include "nhsense/errors.hpp"
#include "nhsense/greens.hpp"
#include "nhsense/oracle.hpp"

namespace nhsense {

namespace {

constexpr double kPi = std::numbers::pi;

bool closed_form_applies(const ChainParams& params) {
  return params.odd_sites() && std::sin(params.drive_phase) == 0.0;
}

// Coherent photons per site at unit drive amplitude.
Eigen::VectorXd unit_drive_photons(const ChainParams& params) {
  const int sites = params.sites;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sites);
  if (closed_form_applies(params)) {
    const double a = params.amplification();
    for (int n = 1; n <= sites; n += 2) out[n - 1] = 4.0 / params.kappa * std::exp(2.0 * a * (n - 1));
    return out;
  }
  ChainParams unit = params;
  unit.drive_amplitude = 1.0;
  const DynamicalMatrix m = build_dynamical_matrix(unit);
  const Eigen::VectorXd v = steady_state_response(m, drive_vector(unit));
  for (int n = 1; n <= sites; ++n) {
    out[n - 1] = 0.5 * (v[m.x(n)] * v[m.x(n)] + v[m.p(n)] * v[m.p(n)]);
  }
  return out;
}

double vacuum_photons(const ChainParams& params) {
  if (params.odd_sites()) {
    // Every normal mode leaks into the waveguide and thermalises with the input.
    const double a = params.amplification();
    const double variance = params.thermal_quanta + 0.5;
    double total = 0.0;
    for (int n = 1; n <= params.sites; ++n) total += variance * std::cosh(2.0 * a * (n - 1)) - 0.5;
    return total;
  }
  const DynamicalMatrix m = build_dynamical_matrix(params);
  const Eigen::MatrixXd sigma =
      steady_state_covariance(m, NoiseModel{params.thermal_quanta}, params);
  double total = 0.0;
  for (int n = 1; n <= params.sites; ++n) {
    total += 0.5 * (sigma(m.x(n), m.x(n)) + sigma(m.p(n), m.p(n)) - 1.0);
  }
  return total;
}

struct FirstOrderShift {
  double dx;  // d<x_1>/d eps
  double dp;  // d<p_1>/d eps
};

struct SiteMeans {
  double x1, p1, x_last, p_last;
};

SiteMeans unperturbed_means(const ChainParams& params) {
  const int last = params.sites;
  const double amp = -std::sqrt(2.0 * params.kappa) * params.drive_amplitude;
  const double fx = amp * std::cos(params.drive_phase);
  const double fp = amp * std::sin(params.drive_phase);
  auto chi = [&](Quadrature q, int n) { return chi_quadrature(q, q, n, 1, 0.0, params).real(); };
  return {chi(Quadrature::X, 1) * fx, chi(Quadrature::P, 1) * fp, chi(Quadrature::X, last) * fx,
          chi(Quadrature::P, last) * fp};
}

FirstOrderShift dispersive_shift(const ChainParams& params) {
  const int last = params.sites;
  const SiteMeans v = unperturbed_means(params);
  // Forces on site N per unit eps: +p_N on x_N, -x_N on p_N.
  const double xx = chi_quadrature(Quadrature::X, Quadrature::X, 1, last, 0.0, params).real();
  const double pp = chi_quadrature(Quadrature::P, Quadrature::P, 1, last, 0.0, params).real();
  return {xx * v.p_last, -pp * v.x_last};
}

FirstOrderShift boundary_hop_shift(const ChainParams& params, double hop_phase) {
  const int last = params.sites;
  const SiteMeans v = unperturbed_means(params);
  const double c = std::cos(hop_phase);
  const double s = std::sin(hop_phase);
  const double fx1 = s * v.x_last + c * v.p_last;
  const double fp1 = -c * v.x_last + s * v.p_last;
  const double fxn = c * v.p1 - s * v.x1;
  const double fpn = -(c * v.x1 + s * v.p1);
  auto chi = [&](Quadrature q, int m) { return chi_quadrature(q, q, 1, m, 0.0, params).real(); };
  return {chi(Quadrature::X, 1) * fx1 + chi(Quadrature::X, last) * fxn,
          chi(Quadrature::P, 1) * fp1 + chi(Quadrature::P, last) * fpn};
}

double projected(const FirstOrderShift& d, double phi) {
  return std::cos(phi) * d.dx + std::sin(phi) * d.dp;
}

SensingResult assemble(const ChainParams& params, const FirstOrderShift& unit, double eps,
                       double tau) {
  if (!(tau >= 0.0)) throw DomainError("integration time must be non-negative");
  const double gain = std::sqrt(params.kappa * tau);
  const double magnitude = std::hypot(unit.dx, unit.dp);
  double phi = params.homodyne_angle;
  if (magnitude > 0.0) {
    phi = std::atan2(unit.dp, unit.dx);
    if (phi < 0.0) phi += kPi;
    if (phi >= kPi) phi -= kPi;
  }
  SensingResult out{};
  out.tau = tau;
  out.phi_opt = phi;
  out.noise = homodyne_noise(params.thermal_quanta);
  out.signal = gain * std::abs(eps) * magnitude;
  out.snr = out.signal / out.noise;
  const double per_eps = gain * magnitude / out.noise;
  out.qfi = per_eps * per_eps;
  return out;
}

}  // namespace

double last_site_fraction(double amplification, int sites) {
  if (sites < 1 || sites % 2 == 0) throw DomainError("last-site fraction is defined for odd N");
  if (amplification == 0.0) return 2.0 / (sites + 1);
  return std::expm1(-4.0 * amplification) / std::expm1(-2.0 * amplification * (sites + 1));
}

PhotonBudget photon_numbers(const ChainParams& params) {
  params.validate();
  const Eigen::VectorXd shape = unit_drive_photons(params);
  const double beta_sq = params.drive_amplitude * params.drive_amplitude;
  PhotonBudget out;
  out.per_site = beta_sq * shape;
  out.n_coherent = out.per_site.sum();
  out.n_last = out.per_site[params.sites - 1];
  out.last_site_fraction = shape[params.sites - 1] / shape.sum();
  out.n_vac = vacuum_photons(params);
  out.n_tot = out.n_coherent + out.n_vac;
  return out;
}

ChainParams with_total_photons(const ChainParams& params, double n_coherent) {
  if (!(n_coherent >= 0.0)) throw DomainError("photon number must be non-negative");
  params.validate();
  ChainParams out = params;
  out.drive_amplitude = std::sqrt(n_coherent / unit_drive_photons(params).sum());
  return out;
}

double homodyne_signal_linear(const ChainParams& params, double eps, double tau) {
  params.validate();
  if (!(tau >= 0.0)) throw DomainError("integration time must be non-negative");
  const FirstOrderShift d = dispersive_shift(params);
  return std::sqrt(params.kappa * tau) * std::abs(eps * projected(d, params.homodyne_angle));
}

double homodyne_noise(double thermal_quanta) {
  if (!(thermal_quanta >= 0.0)) throw DomainError("thermal occupancy must be non-negative");
  return std::sqrt(thermal_quanta + 0.5);
}

SensingResult snr_qfi_linear(const ChainParams& params, double eps, double tau) {
  params.validate();
  return assemble(params, dispersive_shift(params), eps, tau);
}

SensingResult snr_nhse(const ChainParams& params, double eps, double hop_phase, double tau) {
  params.validate();
  return assemble(params, boundary_hop_shift(params, hop_phase), eps, tau);
}

double homodyne_signal_nhse(const ChainParams& params, double eps, double hop_phase, double tau) {
  params.validate();
  if (!(tau >= 0.0)) throw DomainError("integration time must be non-negative");
  const FirstOrderShift d = boundary_hop_shift(params, hop_phase);
  return std::sqrt(params.kappa * tau) * std::abs(eps * projected(d, params.homodyne_angle));
}

double golden_section_maximum(const std::function<double(double)>& f, double lo, double hi,
                              double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nhsense
