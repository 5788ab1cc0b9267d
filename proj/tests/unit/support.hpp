#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "nhsense/nhsense.hpp"

namespace testing_support {

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  const double scale = std::abs(want);
  return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611ULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// Vectorised Lyapunov solve: (I (x) A + A (x) I) vec(X) = -vec(Q).
inline Eigen::MatrixXd kron_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      big.block(i * n, j * n, n, n) += (i == j ? 1.0 : 0.0) * a;
      big.block(i * n, j * n, n, n).diagonal().array() += a(i, j);
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  Eigen::VectorXd x = big.fullPivLu().solve(rhs);
  return Eigen::Map<Eigen::MatrixXd>(x.data(), n, n);
}

// Classical fourth-order Runge-Kutta for v' = M v + f with a running integral of r.v.
struct Rk4Result {
  Eigen::VectorXd state;
  double integral;
};

inline Rk4Result rk4(const Eigen::MatrixXd& m, const Eigen::VectorXd& f, const Eigen::VectorXd& r,
                     double t, int steps) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n + 1);
  auto rhs = [&](const Eigen::VectorXd& s) {
    Eigen::VectorXd d(n + 1);
    d.head(n) = m * s.head(n) + f;
    d[n] = r.dot(s.head(n));
    return d;
  };
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = rhs(z);
    const Eigen::VectorXd k2 = rhs(z + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(z + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(z + h * k3);
    z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {z.head(n), z[n]};
}

}  // namespace testing_support
