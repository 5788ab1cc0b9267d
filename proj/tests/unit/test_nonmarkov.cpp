#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace nhsense;
using testing_support::rel_err;

namespace {

constexpr double kEps0 = 1e-8;
constexpr double kPhotons = 5e9;

// Bracket evaluated directly in extended precision.
long double reference_bracket(long double x) {
  return 1.0L + std::exp(-x) + (2.0L / x) * std::expm1(-x);
}

}  // namespace

TEST_CASE("timescales") {
  SUBCASE("single site") {
    const auto p = ChainParams::from_effective(1, 1.0, 0.2);
    const Timescales t = timescales(p, kEps0, kPhotons);
    CHECK(t.tau_star == doctest::Approx(1.25e5).epsilon(1e-12));
    CHECK(t.escape == 2.0);
    CHECK(t.round_trip == 1.0);
  }
  SUBCASE("closed forms") {
    auto p = ChainParams::from_effective(9, 40.0, 0.3, 2.0);
    p.thermal_quanta = 0.25;
    const Timescales t = timescales(p, 1e-6, 1e8);
    const double z = last_site_fraction(0.3, 9);
    const double want = 1.5 * 4e12 * std::exp(-0.6 * 8) / (16.0 * z * 1e8 * 2.0);
    CHECK(t.tau_star == doctest::Approx(want).epsilon(1e-13));
    CHECK(t.round_trip == doctest::Approx(9.0 / 40.0).epsilon(1e-15));
    CHECK(t.escape == 5.0);
  }
  SUBCASE("two-site step ratio approaches e^{-4A}") {
    const double a = 0.5;
    const double lo = timescales(ChainParams::from_effective(41, 1.0, a), kEps0, kPhotons).tau_star;
    const double hi = timescales(ChainParams::from_effective(43, 1.0, a), kEps0, kPhotons).tau_star;
    CHECK(hi / lo == doctest::Approx(std::exp(-4.0 * a)).epsilon(1e-12));
  }
  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(timescales(ChainParams::from_effective(4, 1.0, 0.2), kEps0, kPhotons), DomainError);
    CHECK_THROWS_AS(timescales(ChainParams::from_effective(3, 1.0, 0.2), 0.0, kPhotons), DomainError);
    CHECK_THROWS_AS(timescales(ChainParams::from_effective(3, 1.0, 0.2), kEps0, 0.0), DomainError);
  }
}

TEST_CASE("single_pole_bracket") {
  SUBCASE("agrees with extended precision") {
    for (double x : {0.05, 0.2, 0.49, 0.51, 1.0, 5.0, 40.0}) {
      const double want = static_cast<double>(reference_bracket(x));
      CHECK(single_pole_bracket(x) == doctest::Approx(want).epsilon(1e-13));
    }
  }
  SUBCASE("short-window expansion") {
    for (double x : {1e-6, 1e-4, 1e-2}) {
      const double want = x * x / 6.0 - x * x * x / 12.0 + x * x * x * x / 40.0;
      CHECK(single_pole_bracket(x) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  SUBCASE("long-window limit") {
    CHECK(single_pole_bracket(1e8) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK_THROWS_AS(single_pole_bracket(0.0), DomainError);
  }
}

TEST_CASE("snr_single_pole") {
  const auto p = ChainParams::from_effective(7, 1e4, 0.2);
  const Timescales t = timescales(p, kEps0, kPhotons);
  SUBCASE("steady-state recovery") {
    const double tau = 1e9 * t.escape;
    CHECK(snr_single_pole(p, kEps0, tau, kPhotons) ==
          doctest::Approx(std::sqrt(tau / t.tau_star)).epsilon(1e-8));
  }
  SUBCASE("matches the transient solution at large hopping") {
    const TransientSnr numeric(p, kEps0, kPhotons);
    for (double f : {0.1, 0.3, 1.0, 3.0, 10.0}) {
      const double tau = f * t.escape;
      CHECK(numeric(tau) == doctest::Approx(snr_single_pole(p, kEps0, tau, kPhotons)).epsilon(0.02));
    }
  }
  SUBCASE("monotone in the window") {
    double prev = 0.0;
    for (double tau = 1e-3; tau < 1e7; tau *= 1.3) {
      const double s = snr_single_pole(p, kEps0, tau, kPhotons);
      CHECK(s >= prev);
      prev = s;
    }
  }
  CHECK_THROWS_AS(snr_single_pole(p, kEps0, 0.0, kPhotons), DomainError);
}

TEST_CASE("snr_finite_j") {
  const auto p = ChainParams::from_effective(11, 1e3, 0.2);
  const Timescales t = timescales(p, kEps0, kPhotons);
  CHECK(snr_finite_j(p, kEps0, 0.5 * t.round_trip, kPhotons) == 0.0);
  CHECK(snr_finite_j(p, kEps0, t.round_trip, kPhotons) == 0.0);
  const double tau = 2.0 * t.round_trip;
  CHECK(snr_finite_j(p, kEps0, tau, kPhotons) == snr_single_pole(p, kEps0, tau, kPhotons));
  CHECK(snr_transient_numeric(p, kEps0, tau, kPhotons) ==
        doctest::Approx(snr_single_pole(p, kEps0, tau, kPhotons)).epsilon(0.1));
}

TEST_CASE("single_pole_chi_xx") {
  for (int sites : {1, 3, 5, 11, 21}) {
    const auto p = ChainParams::from_effective(sites, 1e3, 0.3);
    for (double w : {0.0, 0.3 / (sites + 1), -1.0 / (sites + 1)}) {
      const Complex exact = chi_quadrature(Quadrature::X, Quadrature::X, sites, 1, w, p);
      CHECK(rel_err(single_pole_chi_xx(p, w), exact) <= 0.05);
    }
  }
  CHECK_THROWS_AS(single_pole_chi_xx(ChainParams::from_effective(2, 1.0, 0.1), 0.0), DomainError);
}

TEST_CASE("snr_transient_numeric") {
  SUBCASE("long windows recover the steady-state rate") {
    const auto p = with_total_photons(ChainParams::from_effective(5, 2.0, 0.3), kPhotons);
    const Timescales t = timescales(p, kEps0, kPhotons);
    const double tau = 1e4 * t.escape;
    CHECK(snr_transient_numeric(p, kEps0, tau, kPhotons) ==
          doctest::Approx(snr_qfi_linear(p, kEps0, tau).snr).epsilon(1e-3));
  }
  SUBCASE("no signal before a round trip") {
    for (int sites : {11, 21}) {
      const auto p = with_total_photons(ChainParams::from_effective(sites, 1.0, 0.2), kPhotons);
      const double tau = 0.5 * timescales(p, kEps0, kPhotons).round_trip;
      CHECK(snr_transient_numeric(p, kEps0, tau, kPhotons) < 0.01 * snr_qfi_linear(p, kEps0, tau).snr);
    }
  }
  SUBCASE("monotone in the window") {
    for (int sites : {5, 21}) {
      for (double j : {1.0, 10.0, 100.0}) {
        const TransientSnr snr(ChainParams::from_effective(sites, j, 0.2), kEps0, kPhotons);
        double prev = 0.0;
        for (double tau = 0.01; tau < 1e3; tau *= 1.2) {
          const double s = snr(tau);
          CHECK(s >= prev);
          prev = s;
        }
      }
    }
  }
}

TEST_CASE("measurement_time") {
  SUBCASE("weak measurement") {
    const auto p = ChainParams::from_effective(1, 10.0, 0.2);
    const double want = timescales(p, kEps0, kPhotons).tau_star;
    CHECK(measurement_time(p, kEps0, kPhotons, TimeMode::Analytic) == doctest::Approx(want).epsilon(0.01));
  }
  SUBCASE("strong measurement approaches the fifth-root law") {
    const auto p = ChainParams::from_effective(5, 1e6, 0.2);
    double prev_err = 1.0;
    for (double eps0 : {1e-4, 1e-3, 1e-2}) {
      const Timescales t = timescales(p, eps0, kPhotons);
      const double tau = measurement_time_unbounded(p, eps0, kPhotons);
      const double err = std::abs(tau / strong_measurement_asymptote(t) - 1.0);
      CHECK(err < prev_err);
      prev_err = err;
    }
    CHECK(prev_err < 0.05);
  }
  SUBCASE("strong-regime size scaling") {
    const double eps0 = 1e-2;
    const double a = 0.2;
    auto scaled = [&](int sites) {
      const auto p = ChainParams::from_effective(sites, 1e6, a);
      return measurement_time_unbounded(p, eps0, kPhotons) /
             (std::pow(sites + 1.0, 0.8) * std::exp(-2.0 * a * (sites - 1) / 5.0));
    };
    CHECK(scaled(11) == doctest::Approx(scaled(21)).epsilon(0.05));
  }
  SUBCASE("round-trip floor") {
    const auto p = ChainParams::from_effective(21, 0.01, 0.2);
    const Timescales t = timescales(p, kEps0, kPhotons);
    CHECK(measurement_time(p, kEps0, kPhotons, TimeMode::Analytic) == t.round_trip);
  }
  SUBCASE("numeric and analytic agree within a factor of two") {
    for (int sites : {1, 11, 31}) {
      for (double j : {10.0, 1000.0}) {
        const auto p = ChainParams::from_effective(sites, j, 0.2);
        const double an = measurement_time(p, kEps0, kPhotons, TimeMode::Analytic);
        const double nu = measurement_time(p, kEps0, kPhotons, TimeMode::Numeric);
        CHECK(nu / an < 2.0);
        CHECK(an / nu < 2.0);
      }
    }
  }
}
