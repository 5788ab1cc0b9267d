#include "nhsense/oracle.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "linalg.hpp"
#include "nhsense/errors.hpp"

namespace nhsense {

namespace {

void require_stable(const DynamicalMatrix& m) {
  const double margin = stability_margin(m);
  if (!(margin < 0.0)) throw StabilityError("dynamical matrix is not strictly stable");
}

// Solves M x = rhs through the balanced factorisation.
Eigen::MatrixXd solve_balanced(const detail::Balanced& b, const Eigen::MatrixXd& rhs) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b.matrix);
  Eigen::MatrixXd x = lu.solve(b.scale.asDiagonal().inverse() * rhs);
  x = b.scale.asDiagonal() * x;
  if (!x.allFinite()) throw NumericalError("singular dynamical matrix");
  return x;
}

}  // namespace

Eigen::MatrixXcd resolvent_susceptibility(const DynamicalMatrix& m, double omega) {
  using Cplx = std::complex<double>;
  const detail::Balanced b = detail::balance(m.entries());
  const Eigen::Index n = m.dim();
  Eigen::MatrixXcd shifted = -b.matrix.cast<Cplx>();
  shifted.diagonal().array() -= Cplx(0.0, omega);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  if (!(lu.rcond() > 64.0 * std::numeric_limits<double>::epsilon())) {
    throw PoleError("resolvent evaluated at an eigenfrequency");
  }
  Eigen::MatrixXcd inv = lu.inverse();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) inv(r, c) *= b.scale[r] / b.scale[c];
  }
  return inv;
}

Eigen::VectorXd drive_vector(const ChainParams& params) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(2 * params.sites);
  const double amp = -std::sqrt(2.0 * params.kappa) * params.drive_amplitude;
  f[0] = amp * std::cos(params.drive_phase);
  f[params.sites] = amp * std::sin(params.drive_phase);
  return f;
}

Eigen::VectorXd steady_state_means(const DynamicalMatrix& m, const ChainParams& params) {
  require_stable(m);
  return steady_state_response(m, drive_vector(params));
}

Eigen::VectorXd steady_state_response(const DynamicalMatrix& m, const Eigen::VectorXd& drive) {
  if (drive.size() != m.dim()) throw DomainError("drive vector has wrong dimension");
  return solve_balanced(detail::balance(m.entries()), -drive).col(0);
}

Eigen::MatrixXd steady_state_covariance(const DynamicalMatrix& m, const NoiseModel& noise,
                                        const ChainParams& params) {
  require_stable(m);
  const detail::Balanced b = detail::balance(m.entries());
  const Eigen::Index n = m.dim();
  Eigen::MatrixXd diffusion = Eigen::MatrixXd::Zero(n, n);
  const double d = params.kappa * noise.input_variance();
  diffusion(m.x(1), m.x(1)) = d / (b.scale[m.x(1)] * b.scale[m.x(1)]);
  diffusion(m.p(1), m.p(1)) = d / (b.scale[m.p(1)] * b.scale[m.p(1)]);
  Eigen::MatrixXd sigma = detail::solve_lyapunov(b.matrix, diffusion);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) sigma(r, c) *= b.scale[r] * b.scale[c];
  }
  return sigma;
}

Eigen::Matrix2d output_noise_spectrum(const DynamicalMatrix& m, const NoiseModel& noise,
                                      const ChainParams& params) {
  const Eigen::MatrixXd sigma = steady_state_covariance(m, noise, params);
  const Eigen::Index n = m.dim();
  const double root_kappa = std::sqrt(params.kappa);
  const double s_in = noise.input_variance();

  // Fluctuations obey v' = M v + L xi with L = -sqrt(kappa) [e_x1, e_p1];
  // the output is y = xi + sqrt(kappa) P^T v.
  Eigen::MatrixXd select = Eigen::MatrixXd::Zero(n, 2);
  select(m.x(1), 0) = 1.0;
  select(m.p(1), 1) = 1.0;
  const Eigen::MatrixXd coupling = -root_kappa * select;

  const detail::Balanced b = detail::balance(m.entries());
  // int_0^inf e^{Mt} S dt = -M^{-1} S.
  const Eigen::MatrixXd forward = -solve_balanced(b, sigma);
  const Eigen::MatrixXd state_part = forward + forward.transpose();
  const Eigen::MatrixXd cross = -solve_balanced(b, coupling * s_in);

  Eigen::Matrix2d out = s_in * Eigen::Matrix2d::Identity();
  out += params.kappa * select.transpose() * state_part * select;
  const Eigen::Matrix2d c = root_kappa * select.transpose() * cross;
  out += c + c.transpose();
  return out;
}

Eigen::Matrix2d input_output_map(const DynamicalMatrix& m, double kappa) {
  const detail::Balanced b = detail::balance(m.entries());
  const double root_kappa = std::sqrt(kappa);
  Eigen::Matrix2d out;
  for (int col = 0; col < 2; ++col) {
    Eigen::VectorXd drive = Eigen::VectorXd::Zero(m.dim());
    drive[col == 0 ? m.x(1) : m.p(1)] = -root_kappa;
    const Eigen::VectorXd v = solve_balanced(b, -drive).col(0);
    out(0, col) = (col == 0 ? 1.0 : 0.0) + root_kappa * v[m.x(1)];
    out(1, col) = (col == 1 ? 1.0 : 0.0) + root_kappa * v[m.p(1)];
  }
  return out;
}

Eigen::VectorXd transient_means(const DynamicalMatrix& m, const ChainParams& params, double t) {
  const Eigen::VectorXd readout = Eigen::VectorXd::Zero(m.dim());
  return transient_window(m, drive_vector(params), readout, t).state;
}

TransientWindow transient_window(const DynamicalMatrix& m, const Eigen::VectorXd& drive,
                                 const Eigen::VectorXd& readout, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and non-negative");
  const Eigen::Index n = m.dim();
  if (drive.size() != n || readout.size() != n) throw DomainError("vector has wrong dimension");
  if (t == 0.0) return {Eigen::VectorXd::Zero(n), 0.0};

  // Augmented state (w, integral, 1) in balanced coordinates v = diag(scale) w.
  const detail::Balanced b = detail::balance(m.entries());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n + 2, n + 2);
  g.topLeftCorner(n, n) = b.matrix;
  g.block(0, n + 1, n, 1) = drive.cwiseQuotient(b.scale);
  g.block(n, 0, 1, n) = readout.cwiseProduct(b.scale).transpose();
  const Eigen::MatrixXd propagator = (g * t).exp();
  if (!propagator.allFinite()) throw NumericalError("matrix exponential overflow");

  TransientWindow out;
  out.state = propagator.block(0, n + 1, n, 1).col(0).cwiseProduct(b.scale);
  out.integral = propagator(n, n + 1);
  return out;
}

}  // namespace nhsense
