#include "nhsense/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nhsense/nhsense.hpp"

namespace nhsense::cli {

namespace {

double rel(Complex got, Complex want) {
  const double scale = std::abs(want);
  return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

class Frequencies {
 public:
  explicit Frequencies(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [-3J, 3J], kept away from zero where undamped chains have poles.
  double next(double j) {
    std::uniform_real_distribution<double> dist(-3.0 * j, 3.0 * j);
    double w = 0.0;
    do {
      w = dist(gen_);
    } while (std::abs(w) < 1e-3 * j);
    return w;
  }

 private:
  std::mt19937_64 gen_;
};

DynamicalMatrix undamped(const ChainParams& p) {
  const DynamicalMatrix m = build_dynamical_matrix(p);
  Eigen::MatrixXd e = m.entries();
  e(m.x(1), m.x(1)) += 0.5 * p.kappa;
  e(m.p(1), m.p(1)) += 0.5 * p.kappa;
  return DynamicalMatrix(p.sites, e);
}

std::vector<int> odd_only(const std::vector<int>& sites) {
  std::vector<int> out;
  std::copy_if(sites.begin(), sites.end(), std::back_inserter(out), [](int n) { return n % 2 == 1; });
  return out;
}

struct Accumulator {
  CheckOutcome out;
  void add(double err) {
    ++out.cases;
    out.max_error = std::max(out.max_error, std::isfinite(err) ? err : 1e300);
  }
};

CheckOutcome bare_vs_resolvent(const RunConfig& c) {
  Accumulator acc;
  Frequencies freq(101);
  for (int sites : c.sites) {
    const auto p = ChainParams::from_effective(sites, 1.0, 0.0, c.kappa);
    const DynamicalMatrix m = undamped(p);
    for (int k = 0; k < c.verify_frequencies; ++k) {
      const double w = freq.next(1.0);
      const Eigen::MatrixXcd g = resolvent_susceptibility(m, w);
      for (int n = 1; n <= sites; ++n) acc.add(rel(chi0_bare(n, 1, w, p), g(m.x(n), m.x(1))));
      acc.add(rel(chi0_bare(1, sites, w, p), g(m.x(1), m.x(sites))));
    }
  }
  return acc.out;
}

CheckOutcome dressed_vs_resolvent(const RunConfig& c) {
  Accumulator acc;
  Frequencies freq(102);
  for (int sites : c.sites) {
    const auto p = ChainParams::from_effective(sites, 1.0, 0.0, c.kappa);
    const DynamicalMatrix m = build_dynamical_matrix(p);
    for (int k = 0; k < c.verify_frequencies; ++k) {
      const double w = freq.next(1.0);
      const Eigen::MatrixXcd g = resolvent_susceptibility(m, w);
      for (int n = 1; n <= sites; ++n) acc.add(rel(chi_dressed(n, 1, w, p), g(m.x(n), m.x(1))));
      acc.add(rel(chi_dressed(sites, sites, w, p), g(m.x(sites), m.x(sites))));
    }
  }
  return acc.out;
}

CheckOutcome quadrature_vs_resolvent(const RunConfig& c) {
  Accumulator acc;
  Frequencies freq(103);
  for (const Coupling& k : c.couplings) {
    for (int sites : c.sites) {
      const auto p = ChainParams::from_effective(sites, k.effective_hopping, k.amplification, c.kappa);
      const DynamicalMatrix m = build_dynamical_matrix(p);
      for (int f = 0; f < c.verify_frequencies; ++f) {
        const double w = freq.next(k.effective_hopping);
        const Eigen::MatrixXcd g = resolvent_susceptibility(m, w);
        for (int n = 1; n <= sites; ++n) {
          acc.add(rel(chi_quadrature(Quadrature::X, Quadrature::X, n, 1, w, p), g(m.x(n), m.x(1))));
          acc.add(rel(chi_quadrature(Quadrature::P, Quadrature::P, 1, n, w, p), g(m.p(1), m.p(n))));
        }
      }
    }
  }
  return acc.out;
}

CheckOutcome perturbed_vs_resolvent(const RunConfig& c) {
  Accumulator acc;
  Frequencies freq(104);
  const Complex i(0.0, 1.0);
  for (double eps : c.eps0) {
    for (int sites : c.sites) {
      // Number-conserving chain: the complex response is a combination of quadrature blocks.
      const auto p = ChainParams::from_effective(sites, 1.0, 0.0, c.kappa);
      const DynamicalMatrix m = build_dynamical_matrix(p, Perturbation::dispersive_last(eps));
      for (int f = 0; f < c.verify_frequencies; ++f) {
        const double w = freq.next(1.0);
        const Eigen::MatrixXcd g = resolvent_susceptibility(m, w);
        for (int n = 1; n <= sites; ++n) {
          const Complex want =
              0.5 * (g(m.x(n), m.x(1)) + g(m.p(n), m.p(1)) + i * (g(m.p(n), m.x(1)) - g(m.x(n), m.p(1))));
          acc.add(rel(chi_perturbed(n, w, p, eps), want));
        }
      }
    }
  }
  return acc.out;
}

CheckOutcome perturbed_quadrature_vs_resolvent(const RunConfig& c) {
  Accumulator acc;
  Frequencies freq(105);
  for (const Coupling& k : c.couplings) {
    for (double eps : c.eps0) {
      for (int sites : c.sites) {
        const auto p = ChainParams::from_effective(sites, k.effective_hopping, k.amplification, c.kappa);
        const DynamicalMatrix m = build_dynamical_matrix(p, Perturbation::dispersive_last(eps));
        for (int f = 0; f < c.verify_frequencies; ++f) {
          const double w = freq.next(k.effective_hopping);
          const Eigen::MatrixXcd g = resolvent_susceptibility(m, w);
          const int n = 1 + f % sites;
          for (auto a : {Quadrature::X, Quadrature::P}) {
            for (auto b : {Quadrature::X, Quadrature::P}) {
              const int r = a == Quadrature::X ? m.x(n) : m.p(n);
              const int col = b == Quadrature::X ? m.x(1) : m.p(1);
              const Complex want = g(r, col);
              const Complex got = chi_perturbed_quadrature(a, b, n, w, p, eps);
              if (a == b) {
                acc.add(rel(got, want));
              } else if (eps == 0.0) {
                // Cross-quadrature entries vanish identically.
                acc.add(std::abs(got - want));
              } else {
                // Cross entries are O(eps) differences of O(1) amplitudes; judge them
                // against the diagonal amplitude carried through the same gauge factor.
                const int r_swap = a == Quadrature::X ? m.p(n) : m.x(n);
                const int col_swap = b == Quadrature::X ? m.p(1) : m.x(1);
                const double gauge = std::sqrt(std::abs(want) / std::abs(g(r_swap, col_swap)));
                const double scale = gauge * std::sqrt(std::abs(g(m.x(n), m.x(1)) * g(m.p(n), m.p(1))));
                acc.add(std::abs(got - want) / std::max(std::abs(want), scale));
              }
            }
          }
        }
      }
    }
  }
  return acc.out;
}

CheckOutcome zero_frequency_values(const RunConfig& c) {
  Accumulator acc;
  for (const Coupling& k : c.couplings) {
    for (int sites : odd_only(c.sites)) {
      const auto p = ChainParams::from_effective(sites, k.effective_hopping, k.amplification, c.kappa);
      acc.add(rel(chi_dressed(1, 1, 0.0, p), 2.0 / c.kappa));
      const double want = 2.0 / c.kappa * std::exp(k.amplification * (sites - 1));
      acc.add(std::abs(std::abs(chi_quadrature(Quadrature::X, Quadrature::X, sites, 1, 0.0, p)) - want) / want);
    }
  }
  return acc.out;
}

CheckOutcome output_noise(const RunConfig& c) {
  Accumulator acc;
  for (const Coupling& k : c.couplings) {
    for (double nth : c.thermal_quanta) {
      for (int sites : c.sites) {
        auto p = ChainParams::from_effective(sites, k.effective_hopping, k.amplification, c.kappa);
        p.thermal_quanta = nth;
        const Eigen::Matrix2d s = output_noise_spectrum(build_dynamical_matrix(p), NoiseModel{nth}, p);
        const double want = nth + 0.5;
        acc.add(std::abs(s(0, 0) - want) / want);
        acc.add(std::abs(s(1, 1) - want) / want);
        acc.add(std::abs(s(0, 1)) / want);
      }
    }
  }
  return acc.out;
}

CheckOutcome scattering_vs_input_output(const RunConfig& c) {
  Accumulator acc;
  std::vector<double> shifts = c.eps0;
  shifts.push_back(0.5 * c.kappa);
  for (const Coupling& k : c.couplings) {
    for (double eps : shifts) {
      for (int sites : odd_only(c.sites)) {
        const auto p = ChainParams::from_effective(sites, k.effective_hopping, k.amplification, c.kappa);
        const ScatteringMatrix s = scattering_matrix(0.0, p, eps);
        acc.add(std::abs(std::norm(s.reflection) + std::norm(s.transmission) - 1.0));
        const Eigen::Matrix2d got = s.matrix().real();
        const Eigen::Matrix2d want = input_output_map(build_dynamical_matrix(p, Perturbation::dispersive_last(eps)), c.kappa);
        // With the gain stripped from the off-diagonals the map is the orthogonal
        // matrix [[R, -T], [T, R]], so absolute errors are relative to its norm.
        const double gain = std::exp(s.log_gain);
        const Eigen::Matrix2d strip = (Eigen::Matrix2d() << 1.0, gain, 1.0 / gain, 1.0).finished();
        acc.add((got - want).cwiseProduct(strip).cwiseAbs().maxCoeff());
      }
    }
  }
  return acc.out;
}

CheckOutcome photons_vs_steady_state(const RunConfig& c) {
  Accumulator acc;
  for (const Coupling& k : c.couplings) {
    for (int sites : c.sites) {
      auto p = ChainParams::from_effective(sites, k.effective_hopping, k.amplification, c.kappa);
      p.drive_amplitude = 1.0;
      p.drive_phase = c.drive_phase;
      const PhotonBudget b = photon_numbers(p);
      const DynamicalMatrix m = build_dynamical_matrix(p);
      const Eigen::VectorXd v = steady_state_means(m, p);
      double total = 0.0;
      for (int n = 1; n <= sites; ++n) total += 0.5 * (v[m.x(n)] * v[m.x(n)] + v[m.p(n)] * v[m.p(n)]);
      acc.add(std::abs(b.n_coherent - total) / total);
      const double last = 0.5 * (v[m.x(sites)] * v[m.x(sites)] + v[m.p(sites)] * v[m.p(sites)]);
      acc.add(std::abs(b.n_last - last) / std::max(last, 1e-300 + 1e-12 * total));
    }
  }
  return acc.out;
}

// Central difference of the exact steady state in the shift. The response is
// rational in eps, so a step well inside the linear regime leaves O(h^2) error.
CheckOutcome signal_vs_finite_difference(const RunConfig& c) {
  Accumulator acc;
  for (const Coupling& k : c.couplings) {
    for (int sites : odd_only(c.sites)) {
      auto p = ChainParams::from_effective(sites, k.effective_hopping, k.amplification, c.kappa);
      p.drive_amplitude = 1.0;
      p.homodyne_angle = c.homodyne_angle;
      const double h = 1e-6 * c.kappa * std::exp(-2.0 * k.amplification * (sites - 1));
      const DynamicalMatrix up = build_dynamical_matrix(p, Perturbation::dispersive_last(h));
      const DynamicalMatrix down = build_dynamical_matrix(p, Perturbation::dispersive_last(-h));
      const Eigen::VectorXd d = (steady_state_means(up, p) - steady_state_means(down, p)) / (2.0 * h);
      const double slope = std::cos(p.homodyne_angle) * d[up.x(1)] + std::sin(p.homodyne_angle) * d[up.p(1)];
      const double want = std::sqrt(c.kappa) * std::abs(slope);
      const double got = homodyne_signal_linear(p, 1.0, 1.0);
      // Readouts orthogonal to the response give want ~ 0; judge those against the full response.
      const double full = std::sqrt(c.kappa) * std::hypot(d[up.x(1)], d[up.p(1)]);
      acc.add(std::abs(got - want) / std::max(want, 1e-6 * full));
    }
  }
  return acc.out;
}

}  // namespace

std::vector<VerifyCheck> verification_checks(const RunConfig& config) {
  const RunConfig& c = config;
  return {
      {"chi0_bare_vs_resolvent", [&c] { return bare_vs_resolvent(c); }},
      {"chi_dressed_vs_resolvent", [&c] { return dressed_vs_resolvent(c); }},
      {"chi_quadrature_vs_resolvent", [&c] { return quadrature_vs_resolvent(c); }},
      {"chi_perturbed_vs_resolvent", [&c] { return perturbed_vs_resolvent(c); }},
      {"chi_perturbed_quadrature_vs_resolvent", [&c] { return perturbed_quadrature_vs_resolvent(c); }},
      {"zero_frequency_values", [&c] { return zero_frequency_values(c); }},
      {"output_noise_vs_lyapunov", [&c] { return output_noise(c); }},
      {"scattering_vs_input_output", [&c] { return scattering_vs_input_output(c); }},
      {"photons_vs_steady_state", [&c] { return photons_vs_steady_state(c); }},
      {"signal_vs_finite_difference", [&c] { return signal_vs_finite_difference(c); }},
  };
}

}  // namespace nhsense::cli
