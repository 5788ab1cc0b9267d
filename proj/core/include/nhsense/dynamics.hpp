#pragma once

#include <Eigen/Dense>

#include "nhsense/params.hpp"

namespace nhsense {

// Generator of the first-moment dynamics on (x_1..x_N, p_1..p_N).
class DynamicalMatrix {
 public:
  DynamicalMatrix(int sites, Eigen::MatrixXd entries);

  int sites() const { return sites_; }
  int dim() const { return 2 * sites_; }
  const Eigen::MatrixXd& entries() const { return entries_; }

  // Zero-based row/column of the quadrature on a one-based site.
  int x(int site) const { return site - 1; }
  int p(int site) const { return sites_ + site - 1; }

  Eigen::MatrixXd x_block() const { return entries_.topLeftCorner(sites_, sites_); }
  Eigen::MatrixXd p_block() const { return entries_.bottomRightCorner(sites_, sites_); }
  Eigen::MatrixXd xp_block() const { return entries_.topRightCorner(sites_, sites_); }
  Eigen::MatrixXd px_block() const { return entries_.bottomLeftCorner(sites_, sites_); }

 private:
  int sites_;
  Eigen::MatrixXd entries_;
};

DynamicalMatrix build_dynamical_matrix(const ChainParams& params,
                                       const Perturbation& pert = Perturbation::none());

// max Re(lambda) over the spectrum.
double stability_margin(const DynamicalMatrix& m);

// Invariance of the kappa = 0 generator under time reversal combined with a
// quadrature rotation and spatial inversion.
bool z2_symmetry_check(const ChainParams& params, const Perturbation& pert);

}  // namespace nhsense
