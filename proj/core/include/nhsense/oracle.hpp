#pragma once

#include <Eigen/Dense>

#include "nhsense/dynamics.hpp"
#include "nhsense/params.hpp"

namespace nhsense {

struct NoiseModel {
  double thermal_quanta = 0.0;
  // Symmetrised variance of each input quadrature.
  double input_variance() const { return thermal_quanta + 0.5; }
};

// (-i omega I - M)^{-1}; entry (r, c) is the response of quadrature r to a
// force on quadrature c.
Eigen::MatrixXcd resolvent_susceptibility(const DynamicalMatrix& m, double omega);

// Coherent drive f = -sqrt(2 kappa) beta (cos theta e_x1 + sin theta e_p1).
Eigen::VectorXd drive_vector(const ChainParams& params);

// Fixed point of v' = M v + f. Requires a stable M.
Eigen::VectorXd steady_state_means(const DynamicalMatrix& m, const ChainParams& params);

// Same without the spectral stability check, for callers that know M is stable.
Eigen::VectorXd steady_state_response(const DynamicalMatrix& m, const Eigen::VectorXd& drive);

// Symmetrised covariance solving M S + S M^T + D = 0.
Eigen::MatrixXd steady_state_covariance(const DynamicalMatrix& m, const NoiseModel& noise,
                                        const ChainParams& params);

// Zero-frequency symmetrised spectrum of the output quadratures (X_out, P_out),
// built from the Lyapunov covariance.
Eigen::Matrix2d output_noise_spectrum(const DynamicalMatrix& m, const NoiseModel& noise,
                                      const ChainParams& params);

// Zero-frequency map (X_in, P_in) -> (X_out, P_out) with X_out = X_in + sqrt(kappa) x_1.
Eigen::Matrix2d input_output_map(const DynamicalMatrix& m, double kappa);

// v(t) for v' = M v + f, v(0) = 0.
Eigen::VectorXd transient_means(const DynamicalMatrix& m, const ChainParams& params, double t);

struct TransientWindow {
  Eigen::VectorXd state;
  double integral;  // int_0^t readout . v(s) ds
};

TransientWindow transient_window(const DynamicalMatrix& m, const Eigen::VectorXd& drive,
                                 const Eigen::VectorXd& readout, double t);

}  // namespace nhsense
