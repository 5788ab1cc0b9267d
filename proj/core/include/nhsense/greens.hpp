#pragma once

#include <complex>

#include "nhsense/params.hpp"

namespace nhsense {

using Complex = std::complex<double>;

enum class Quadrature { X, P };

// Chebyshev polynomial of the second kind, n >= -1, by three-term recurrence.
double chebyshev_u(int n, double x);

// Undamped chain (kappa = 0) in the A = 0 frame.
Complex chi0_bare(int n, int m, double omega, const ChainParams& params);

// Waveguide-dressed response in the A = 0 frame.
Complex chi_dressed(int n, int m, double omega, const ChainParams& params);

// Lab-frame quadrature response of the unperturbed chain.
Complex chi_quadrature(Quadrature alpha, Quadrature beta, int n, int m, double omega,
                       const ChainParams& params);

struct LogComplex {
  double log_abs;
  double arg;
  Complex value() const;
};

// Same as chi_quadrature but safe when e^{A|n-m|} overflows.
LogComplex chi_quadrature_log(Quadrature alpha, Quadrature beta, int n, int m, double omega,
                              const ChainParams& params);

// Response at site n to a drive at site 1 with a detuning eps0 on the last site,
// in the frame where the last site carries no gauge factor.
Complex chi_perturbed(int n, double omega, const ChainParams& params, double eps0);

// Lab-frame quadrature response at site n to a drive on quadrature beta at site 1.
Complex chi_perturbed_quadrature(Quadrature alpha, Quadrature beta, int n, double omega,
                                 const ChainParams& params, double eps0);

}  // namespace nhsense
