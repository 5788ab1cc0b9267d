#include "linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <vector>

#include "nhsense/errors.hpp"

namespace nhsense::detail {

namespace {

struct Edge {
  int from;
  int to;
  double weight;  // squared entry a(from, to)
};

// sum_e w_e exp(u_to - u_from)
double objective(const std::vector<Edge>& edges, const Eigen::VectorXd& u) {
  double f = 0.0;
  for (const auto& e : edges) f += e.weight * std::exp(u[e.to] - u[e.from]);
  return f;
}

}  // namespace

Balanced balance(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Edge> edges;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i != j && a(i, j) != 0.0) edges.push_back({i, j, a(i, j) * a(i, j)});
    }
  }

  // Minimise the off-diagonal Frobenius norm of diag(s)^{-1/2} a diag(s)^{1/2}
  // over u = ln s. The objective is convex and its Hessian is a weighted graph
  // Laplacian, so damped Newton with a sparse factorisation converges quickly
  // even where the optimal scales span many decades.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  double f = objective(edges, u);
  constexpr int max_iterations = 200;
  constexpr double tol = 1e-9;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  std::vector<Eigen::Triplet<double>> triplets;
  for (int iter = 0; iter < max_iterations && f > 0.0; ++iter) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    triplets.clear();
    for (const auto& e : edges) {
      const double t = e.weight * std::exp(u[e.to] - u[e.from]);
      grad[e.to] += t;
      grad[e.from] -= t;
      diag[e.to] += t;
      diag[e.from] += t;
      triplets.emplace_back(e.to, e.from, -t);
      triplets.emplace_back(e.from, e.to, -t);
    }
    double imbalance = 0.0;
    for (int k = 0; k < n; ++k) {
      if (diag[k] > 0.0) imbalance = std::max(imbalance, std::abs(grad[k]) / diag[k]);
    }
    if (imbalance < tol) break;

    const double shift = 1e-12 * diag.maxCoeff();
    for (int k = 0; k < n; ++k) triplets.emplace_back(k, k, diag[k] + shift);
    Eigen::SparseMatrix<double> hess(n, n);
    hess.setFromTriplets(triplets.begin(), triplets.end());
    solver.compute(hess);
    if (solver.info() != Eigen::Success) break;
    const Eigen::VectorXd step = -solver.solve(grad);
    const double slope = grad.dot(step);
    if (!(slope < 0.0)) break;

    double t = 1.0;
    double trial = objective(edges, u + step);
    while (!(trial <= f + 1e-4 * t * slope) && t > 1e-12) {
      t *= 0.5;
      trial = objective(edges, u + t * step);
    }
    if (!(trial < f)) break;
    u += t * step;
    f = trial;
  }

  Balanced out{a, (0.5 * u.array()).exp().matrix()};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out.matrix(i, j) *= out.scale[j] / out.scale[i];
  }
  return out;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  using Complex = std::complex<double>;
  const Eigen::Index n = a.rows();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a.cast<Complex>());
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition did not converge");
  const Eigen::MatrixXcd& u = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();

  // t y + y t^H = -u^H q u, solved column by column from the right.
  Eigen::MatrixXcd c = -(u.adjoint() * q.cast<Complex>() * u);
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    Eigen::VectorXcd rhs = c.col(j);
    for (Eigen::Index k = j + 1; k < n; ++k) rhs -= std::conj(t(j, k)) * y.col(k);
    const Complex shift = std::conj(t(j, j));
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Complex acc = rhs(i);
      for (Eigen::Index k = i + 1; k < n; ++k) acc -= t(i, k) * y(k, j);
      const Complex diag = t(i, i) + shift;
      if (diag == Complex(0.0)) throw NumericalError("singular Lyapunov operator");
      y(i, j) = acc / diag;
    }
  }
  Eigen::MatrixXd x = (u * y * u.adjoint()).real();
  return 0.5 * (x + x.transpose());
}

double max_real_eigenvalue(const Eigen::MatrixXd& a) {
  const Balanced b = balance(a);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(b.matrix, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues().real().maxCoeff();
}

}  // namespace nhsense::detail
