#include "nhsense/dynamics.hpp"

#include <cmath>

#include "linalg.hpp"
#include "nhsense/errors.hpp"

namespace nhsense {

DynamicalMatrix::DynamicalMatrix(int sites, Eigen::MatrixXd entries)
    : sites_(sites), entries_(std::move(entries)) {
  if (sites < 1 || entries_.rows() != 2 * sites || entries_.cols() != 2 * sites) {
    throw DomainError("dynamical matrix must be 2N x 2N");
  }
}

namespace {

DynamicalMatrix assemble(const ChainParams& params, const Perturbation& pert, double kappa) {
  params.validate();
  const int n_sites = params.sites;
  const HoppingParams h = params.effective();
  const double forward = h.effective_hopping * std::exp(h.amplification);
  const double backward = h.effective_hopping * std::exp(-h.amplification);

  DynamicalMatrix out(n_sites, Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites));
  Eigen::MatrixXd m = out.entries();
  for (int n = 1; n <= n_sites; ++n) {
    if (n > 1) {
      m(out.x(n), out.x(n - 1)) = forward;
      m(out.p(n), out.p(n - 1)) = backward;
    }
    if (n < n_sites) {
      m(out.x(n), out.x(n + 1)) = -backward;
      m(out.p(n), out.p(n + 1)) = -forward;
    }
  }
  m(out.x(1), out.x(1)) -= 0.5 * kappa;
  m(out.p(1), out.p(1)) -= 0.5 * kappa;

  const double eps = pert.epsilon;
  const int last = n_sites;
  switch (pert.kind) {
    case PerturbationKind::None:
      if (eps != 0.0) throw DomainError("perturbation of kind None must have epsilon = 0");
      break;
    case PerturbationKind::DispersiveLast:
      m(out.x(last), out.p(last)) += eps;
      m(out.p(last), out.x(last)) -= eps;
      break;
    case PerturbationKind::BoundaryHop: {
      // V = e^{i phi} a1^dag aN + h.c.
      const double c = std::cos(pert.hop_phase);
      const double s = std::sin(pert.hop_phase);
      m(out.x(1), out.x(last)) += eps * s;
      m(out.x(1), out.p(last)) += eps * c;
      m(out.p(1), out.x(last)) -= eps * c;
      m(out.p(1), out.p(last)) += eps * s;
      m(out.x(last), out.x(1)) -= eps * s;
      m(out.x(last), out.p(1)) += eps * c;
      m(out.p(last), out.x(1)) -= eps * c;
      m(out.p(last), out.p(1)) -= eps * s;
      break;
    }
  }
  return DynamicalMatrix(n_sites, std::move(m));
}

}  // namespace

DynamicalMatrix build_dynamical_matrix(const ChainParams& params, const Perturbation& pert) {
  return assemble(params, pert, params.kappa);
}

double stability_margin(const DynamicalMatrix& m) { return detail::max_real_eigenvalue(m.entries()); }

bool z2_symmetry_check(const ChainParams& params, const Perturbation& pert) {
  const DynamicalMatrix m = assemble(params, pert, 0.0);
  const int n_sites = m.sites();

  // x_n -> -p_{N+1-n}, p_n -> -x_{N+1-n}; time reversal flips the generator sign.
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m.dim(), m.dim());
  for (int n = 1; n <= n_sites; ++n) {
    const int mirror = n_sites + 1 - n;
    g(m.x(n), m.p(mirror)) = -1.0;
    g(m.p(n), m.x(mirror)) = -1.0;
  }
  const Eigen::MatrixXd transformed = -(g * m.entries() * g.transpose());
  const double scale = std::max(1.0, m.entries().cwiseAbs().maxCoeff());
  return (transformed - m.entries()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace nhsense
