#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace nhsense;
using testing_support::rel_err;
using testing_support::uniform;
using testing_support::uniform_int;

namespace {

const Complex I(0.0, 1.0);

// The generator with the site-1 damping removed.
DynamicalMatrix undamped(const ChainParams& p) {
  const auto m = build_dynamical_matrix(p);
  Eigen::MatrixXd e = m.entries();
  e(m.x(1), m.x(1)) += 0.5 * p.kappa;
  e(m.p(1), m.p(1)) += 0.5 * p.kappa;
  return DynamicalMatrix(p.sites, e);
}

double random_omega(double j) {
  double w = 0.0;
  do {
    w = uniform(-3.0 * j, 3.0 * j);
  } while (std::abs(w) < 1e-3);
  return w;
}

}  // namespace

TEST_CASE("chebyshev_u") {
  CHECK(chebyshev_u(-1, 0.3) == 0.0);
  CHECK(chebyshev_u(0, 0.3) == 1.0);
  CHECK(chebyshev_u(0, -7.0) == 1.0);
  CHECK(chebyshev_u(3, 0.0) == 0.0);
  CHECK(chebyshev_u(5, 1.0) == doctest::Approx(6.0));
  CHECK_THROWS_AS(chebyshev_u(-2, 0.0), DomainError);

  for (int k = 0; k < 300; ++k) {
    const int n = uniform_int(0, 40);
    const double theta = uniform(1e-3, std::numbers::pi - 1e-3);
    const double trig = std::sin((n + 1) * theta) / std::sin(theta);
    CHECK(std::abs(chebyshev_u(n, std::cos(theta)) - trig) <= 1e-12 * std::max(1.0, std::abs(trig)) * (n + 1));
  }
  for (int k = 0; k < 300; ++k) {
    const int n = uniform_int(0, 30);
    const double t = uniform(1e-2, 2.0);
    const double hyper = std::sinh((n + 1) * t) / std::sinh(t);
    CHECK(rel_err(chebyshev_u(n, std::cosh(t)), hyper) <= 1e-12 * (n + 1));
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(rel_err(chebyshev_u(n, -std::cosh(t)), sign * hyper) <= 1e-12 * (n + 1));
  }
  CHECK(chebyshev_u(7, -1.0) == doctest::Approx(-8.0));
}

TEST_CASE("chi0_bare") {
  SUBCASE("single mode") {
    ChainParams p;
    for (double w : {-2.0, 0.3, 5.0}) CHECK(rel_err(chi0_bare(1, 1, w, p), I / w) <= 1e-15);
  }
  SUBCASE("phase-symmetric in the site indices") {
    const auto p = ChainParams::from_effective(7, 1.4, 0.0);
    for (int k = 0; k < 50; ++k) {
      const int n = uniform_int(1, 7);
      const int m = uniform_int(1, 7);
      const double w = random_omega(1.4);
      const Complex phase = std::pow(I, 2 * (n - m));
      CHECK(rel_err(chi0_bare(n, m, w, p), phase * chi0_bare(m, n, w, p)) <= 1e-13);
    }
  }
  SUBCASE("matches the undamped resolvent") {
    for (int k = 0; k < 200; ++k) {
      const int sites = uniform_int(1, 9);
      const double j = uniform(0.3, 3.0);
      const auto p = ChainParams::from_effective(sites, j, 0.0);
      const double w = random_omega(j);
      const Eigen::MatrixXcd g = resolvent_susceptibility(undamped(p), w);
      const int n = uniform_int(1, sites);
      const int m = uniform_int(1, sites);
      CHECK(rel_err(chi0_bare(n, m, w, p), g(n - 1, m - 1)) <= 1e-10);
    }
  }
  SUBCASE("pole at an undamped resonance") {
    const auto p = ChainParams::from_effective(3, 1.0, 0.0);
    CHECK_THROWS_AS(chi0_bare(1, 1, 0.0, p), PoleError);
    CHECK_THROWS_AS(chi0_bare(0, 1, 0.5, p), DomainError);
  }
}

TEST_CASE("chi_dressed") {
  SUBCASE("zero-frequency values for odd N") {
    for (int sites = 1; sites <= 21; sites += 2) {
      auto p = ChainParams::from_effective(sites, 2.0, 0.0, 0.7);
      CHECK(rel_err(chi_dressed(1, 1, 0.0, p), 2.0 / 0.7) <= 1e-14);
      CHECK(std::abs(std::abs(chi_dressed(sites, 1, 0.0, p)) - 2.0 / 0.7) <= 1e-14);
    }
  }
  SUBCASE("matches the damped resolvent") {
    for (int k = 0; k < 300; ++k) {
      const int sites = uniform_int(1, 9);
      const double j = uniform(0.3, 3.0);
      const auto p = ChainParams::from_effective(sites, j, 0.0, uniform(0.1, 2.0));
      const double w = uniform(-3.0 * j, 3.0 * j);
      const Eigen::MatrixXcd g = resolvent_susceptibility(build_dynamical_matrix(p), w);
      const int n = uniform_int(1, sites);
      const int m = uniform_int(1, sites);
      CHECK(rel_err(chi_dressed(n, m, w, p), g(n - 1, m - 1)) <= 1e-10);
    }
  }
  SUBCASE("equals the Dyson composition of the bare response") {
    for (int k = 0; k < 200; ++k) {
      const int sites = uniform_int(1, 9);
      const auto p = ChainParams::from_effective(sites, 1.0, 0.0, uniform(0.1, 2.0));
      const double w = random_omega(1.0);
      const int n = uniform_int(1, sites);
      const int m = uniform_int(1, sites);
      const double hk = 0.5 * p.kappa;
      const Complex dyson = chi0_bare(n, m, w, p) - hk * chi0_bare(n, 1, w, p) * chi0_bare(1, m, w, p) /
                                                         (1.0 + hk * chi0_bare(1, 1, w, p));
      CHECK(rel_err(chi_dressed(n, m, w, p), dyson) <= 1e-9);
    }
  }
  SUBCASE("first-column and first-row forms") {
    const int sites = 7;
    const auto p = ChainParams::from_effective(sites, 1.3, 0.0, 0.9);
    for (int k = 0; k < 40; ++k) {
      const double w = uniform(-3.0, 3.0);
      const double x = w / 2.6;
      const Complex den = 1.3 * chebyshev_u(sites, x) + I * 0.45 * chebyshev_u(sites - 1, x);
      for (int n = 1; n <= sites; ++n) {
        const Complex col = std::pow(I, n) * chebyshev_u(sites - n, x) / den;
        const Complex row = -std::pow(I, -n) * chebyshev_u(sites - n, x) / den;
        CHECK(rel_err(chi_dressed(n, 1, w, p), col) <= 1e-13);
        CHECK(rel_err(chi_dressed(1, n, w, p), row) <= 1e-13);
      }
    }
  }
}

TEST_CASE("chi_quadrature") {
  const auto p = ChainParams::from_effective(9, 1.5, 0.35, 1.0);
  CHECK(chi_quadrature(Quadrature::X, Quadrature::P, 3, 2, 0.4, p) == Complex(0.0));
  CHECK(chi_quadrature(Quadrature::P, Quadrature::X, 3, 2, 0.4, p) == Complex(0.0));

  const auto hermitian = ChainParams::from_effective(9, 1.5, 0.0, 1.0);
  CHECK(chi_quadrature(Quadrature::X, Quadrature::X, 4, 2, 0.3, hermitian) ==
        chi_dressed(4, 2, 0.3, hermitian));
  CHECK(chi_quadrature(Quadrature::P, Quadrature::P, 4, 2, 0.3, hermitian) ==
        chi_dressed(4, 2, 0.3, hermitian));

  for (int sites = 1; sites <= 21; sites += 2) {
    const auto q = ChainParams::from_effective(sites, 3.0, 0.4, 1.0);
    const double want = 2.0 * std::exp(0.4 * (sites - 1));
    CHECK(std::abs(std::abs(chi_quadrature(Quadrature::X, Quadrature::X, sites, 1, 0.0, q)) - want) <=
          1e-12 * want);
  }

  SUBCASE("factorises the full quadrature resolvent") {
    for (int k = 0; k < 150; ++k) {
      const int sites = uniform_int(1, 11);
      const double j = uniform(0.3, 3.0);
      const double a = uniform(0.0, 0.8);
      const auto q = ChainParams::from_effective(sites, j, a, uniform(0.2, 2.0));
      const auto m = build_dynamical_matrix(q);
      const double w = uniform(-3.0 * j, 3.0 * j);
      const Eigen::MatrixXcd g = resolvent_susceptibility(m, w);
      const int n = uniform_int(1, sites);
      const int l = uniform_int(1, sites);
      CHECK(rel_err(chi_quadrature(Quadrature::X, Quadrature::X, n, l, w, q), g(m.x(n), m.x(l))) <= 1e-10);
      CHECK(rel_err(chi_quadrature(Quadrature::P, Quadrature::P, n, l, w, q), g(m.p(n), m.p(l))) <= 1e-10);
      CHECK(std::abs(g(m.x(n), m.p(l))) <= 1e-12);
      CHECK(std::abs(g(m.p(n), m.x(l))) <= 1e-12);
    }
  }

  SUBCASE("xx and pp differ by e^{2A(n-m)}") {
    const double a = 0.35;
    for (int n = 1; n <= 9; ++n) {
      for (int l = 1; l <= 9; ++l) {
        const Complex xx = chi_quadrature(Quadrature::X, Quadrature::X, n, l, 0.2, p);
        const Complex pp = chi_quadrature(Quadrature::P, Quadrature::P, n, l, 0.2, p);
        CHECK(rel_err(xx, std::exp(2.0 * a * (n - l)) * pp) <= 1e-13);
      }
    }
  }

  SUBCASE("log-domain variant") {
    const Complex direct = chi_quadrature(Quadrature::X, Quadrature::X, 7, 2, 0.3, p);
    CHECK(rel_err(chi_quadrature_log(Quadrature::X, Quadrature::X, 7, 2, 0.3, p).value(), direct) <= 1e-13);
    const auto huge = ChainParams::from_effective(801, 1.0, 1.0);
    CHECK_THROWS_AS(chi_quadrature(Quadrature::X, Quadrature::X, 801, 1, 0.0, huge), NumericalError);
    const LogComplex l = chi_quadrature_log(Quadrature::X, Quadrature::X, 801, 1, 0.0, huge);
    CHECK(l.log_abs == doctest::Approx(std::log(2.0) + 800.0).epsilon(1e-12));
  }
}

TEST_CASE("chi_perturbed") {
  SUBCASE("reduces to the dressed response without detuning") {
    const auto p = ChainParams::from_effective(9, 1.2, 0.3, 0.8);
    for (int k = 0; k < 50; ++k) {
      const double w = uniform(-3.0, 3.0);
      const int n = uniform_int(1, 9);
      CHECK(rel_err(chi_perturbed(n, w, p, 0.0), chi_dressed(n, 1, w, p)) <= 1e-13);
    }
  }
  SUBCASE("single detuned mode") {
    ChainParams p;
    p.kappa = 0.6;
    for (double w : {-1.0, 0.0, 0.37}) {
      CHECK(rel_err(chi_perturbed(1, w, p, 0.2), I / Complex(w - 0.2, 0.3)) <= 1e-15);
    }
  }
  SUBCASE("quadrature forms match the perturbed resolvent") {
    for (int k = 0; k < 200; ++k) {
      const int sites = uniform_int(1, 9);
      const double j = uniform(0.3, 3.0);
      const double a = uniform(0.0, 0.6);
      const double eps = uniform(-0.5, 0.5);
      const auto p = ChainParams::from_effective(sites, j, a, uniform(0.2, 2.0));
      const auto m = build_dynamical_matrix(p, Perturbation::dispersive_last(eps));
      const double w = uniform(-3.0 * j, 3.0 * j);
      const Eigen::MatrixXcd g = resolvent_susceptibility(m, w);
      const int n = uniform_int(1, sites);
      for (auto alpha : {Quadrature::X, Quadrature::P}) {
        for (auto beta : {Quadrature::X, Quadrature::P}) {
          const int r = alpha == Quadrature::X ? m.x(n) : m.p(n);
          const int c = beta == Quadrature::X ? m.x(1) : m.p(1);
          CHECK(rel_err(chi_perturbed_quadrature(alpha, beta, n, w, p, eps), g(r, c)) <= 1e-9);
        }
      }
    }
  }
  SUBCASE("first order in the detuning composes unperturbed responses") {
    const int sites = 5;
    const auto p = ChainParams::from_effective(sites, 1.0, 0.25, 1.0);
    const double h = 1e-6;
    const Complex up = chi_perturbed_quadrature(Quadrature::P, Quadrature::X, 1, 0.0, p, h);
    const Complex down = chi_perturbed_quadrature(Quadrature::P, Quadrature::X, 1, 0.0, p, -h);
    const Complex slope = (up - down) / (2.0 * h);
    const Complex chain = -chi_quadrature(Quadrature::P, Quadrature::P, 1, sites, 0.0, p) *
                          chi_quadrature(Quadrature::X, Quadrature::X, sites, 1, 0.0, p);
    CHECK(rel_err(slope, chain) <= 1e-8);
  }
}
