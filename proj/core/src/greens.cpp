#include "nhsense/greens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "nhsense/errors.hpp"

namespace nhsense {

namespace {

constexpr double kPoleThreshold = 1e-300;
const double kOverflowExponent = 300.0 * std::numbers::ln10;

Complex ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_site(int n, const ChainParams& params) {
  if (n < 1 || n > params.sites) {
    std::ostringstream msg;
    msg << "site index " << n << " outside 1.." << params.sites;
    throw DomainError(msg.str());
  }
}

Complex checked_ratio(Complex num, Complex den, const char* what) {
  if (std::abs(den) < kPoleThreshold) throw PoleError(std::string(what) + ": denominator vanishes");
  const Complex out = num / den;
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
    throw NumericalError(std::string(what) + ": non-finite result");
  }
  return out;
}

// U_k(omega / 2J) for k = -1 .. N.
class ChebyshevTable {
 public:
  ChebyshevTable(int max_order, double x) : values_(static_cast<std::size_t>(max_order) + 2) {
    values_[0] = 0.0;
    if (max_order >= 0) values_[1] = 1.0;
    for (int k = 1; k <= max_order; ++k) {
      values_[k + 1] = 2.0 * x * values_[k] - values_[k - 1];
    }
  }
  double operator()(int k) const { return values_.at(static_cast<std::size_t>(k + 1)); }

 private:
  std::vector<double> values_;
};

double gauge_exponent(Quadrature q, double amplification, int n, int m) {
  const double e = amplification * (n - m);
  return q == Quadrature::X ? e : -e;
}

}  // namespace

double chebyshev_u(int n, double x) {
  if (n < -1) throw DomainError("Chebyshev order must be >= -1");
  if (n == -1) return 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex chi0_bare(int n, int m, double omega, const ChainParams& params) {
  check_site(n, params);
  check_site(m, params);
  const int sites = params.sites;
  const double j = params.effective_hopping();
  const ChebyshevTable u(sites, omega / (2.0 * j));
  const int lo = std::min(n, m);
  const int hi = std::max(n, m);
  return checked_ratio(ipow(1 + n - m) * (u(lo - 1) * u(sites - hi)), Complex(j * u(sites)),
                       "bare susceptibility");
}

Complex chi_dressed(int n, int m, double omega, const ChainParams& params) {
  check_site(n, params);
  check_site(m, params);
  const int sites = params.sites;
  const double j = params.effective_hopping();
  const double half_kappa = 0.5 * params.kappa;
  const ChebyshevTable u(sites, omega / (2.0 * j));
  const int lo = std::min(n, m);
  const int hi = std::max(n, m);
  // Dyson dressing of the bare form, with the common factor U_N cancelled.
  const Complex num =
      ipow(n - m) * u(sites - hi) * Complex(-half_kappa * u(lo - 2), j * u(lo - 1));
  const Complex den = j * Complex(j * u(sites), half_kappa * u(sites - 1));
  return checked_ratio(num, den, "dressed susceptibility");
}

Complex LogComplex::value() const { return std::polar(std::exp(log_abs), arg); }

Complex chi_quadrature(Quadrature alpha, Quadrature beta, int n, int m, double omega,
                       const ChainParams& params) {
  if (alpha != beta) {
    check_site(n, params);
    check_site(m, params);
    return {0.0, 0.0};
  }
  const double e = gauge_exponent(alpha, params.amplification(), n, m);
  if (e > kOverflowExponent) {
    throw NumericalError("quadrature susceptibility overflows; use chi_quadrature_log");
  }
  return std::exp(e) * chi_dressed(n, m, omega, params);
}

LogComplex chi_quadrature_log(Quadrature alpha, Quadrature beta, int n, int m, double omega,
                              const ChainParams& params) {
  if (alpha != beta) {
    check_site(n, params);
    check_site(m, params);
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  const Complex base = chi_dressed(n, m, omega, params);
  return {std::log(std::abs(base)) + gauge_exponent(alpha, params.amplification(), n, m),
          std::arg(base)};
}

Complex chi_perturbed(int n, double omega, const ChainParams& params, double eps0) {
  check_site(n, params);
  const int sites = params.sites;
  const double j = params.effective_hopping();
  const double half_kappa = 0.5 * params.kappa;
  const double r = eps0 / j;
  const ChebyshevTable u(sites, omega / (2.0 * j));
  const Complex num = ipow(n) * (u(sites - n) - r * u(sites - 1 - n));
  const Complex den = Complex(j * u(sites) - eps0 * u(sites - 1),
                              half_kappa * (u(sites - 1) - r * u(sites - 2)));
  return checked_ratio(num, den, "perturbed susceptibility");
}

Complex chi_perturbed_quadrature(Quadrature alpha, Quadrature beta, int n, double omega,
                                 const ChainParams& params, double eps0) {
  const Complex forward = chi_perturbed(n, omega, params, eps0);
  const Complex mirrored = std::conj(chi_perturbed(n, -omega, params, eps0));
  const double a = params.amplification();
  const int sites = params.sites;
  if (alpha == beta) {
    const Complex even = 0.5 * (forward + mirrored);
    const double e = gauge_exponent(alpha, a, n, 1);
    if (e > kOverflowExponent) throw NumericalError("perturbed quadrature susceptibility overflows");
    return std::exp(e) * even;
  }
  const Complex odd = (forward - mirrored) / Complex(0.0, 2.0);
  const double e = a * (2 * sites - n - 1);
  if (e > kOverflowExponent) throw NumericalError("perturbed quadrature susceptibility overflows");
  return alpha == Quadrature::P ? std::exp(e) * odd : -std::exp(-e) * odd;
}

}  // namespace nhsense
