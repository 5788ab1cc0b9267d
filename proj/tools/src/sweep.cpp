#include "nhsense/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

#include "nhsense/cli/verify.hpp"
#include "nhsense/nhsense.hpp"

namespace nhsense::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Point {
  int sites;
  Coupling coupling;
  double eps0;
  double photons;
  double thermal;
  double tau;
  double hop_phase;
};

enum Axis : unsigned {
  kCoupling = 1u << 0,
  kEps = 1u << 1,
  kPhotons = 1u << 2,
  kThermal = 1u << 3,
  kTau = 1u << 4,
  kHop = 1u << 5,
};

using Evaluator = std::function<std::vector<Cell>(const RunConfig&, const Point&)>;

struct TaskSpec {
  std::vector<std::string> columns;  // without status
  unsigned axes;
  Evaluator evaluate;
};

ChainParams chain(const RunConfig& c, const Point& p, int sites) {
  ChainParams out = ChainParams::from_effective(sites, p.coupling.effective_hopping, p.coupling.amplification,
                                                c.kappa);
  out.thermal_quanta = p.thermal;
  out.drive_phase = c.drive_phase;
  out.homodyne_angle = c.homodyne_angle;
  return out;
}

ChainParams chain(const RunConfig& c, const Point& p) { return chain(c, p, p.sites); }

double z_or_nan(const ChainParams& p) {
  return p.odd_sites() ? last_site_fraction(p.amplification(), p.sites) : kNaN;
}

std::vector<Cell> snr_linear_row(const RunConfig& c, const Point& p) {
  const ChainParams params = with_total_photons(chain(c, p), p.photons);
  const SensingResult r = snr_qfi_linear(params, p.eps0, p.tau);
  return {r.signal, r.noise, r.snr, r.qfi, r.qfi / p.photons, r.phi_opt, z_or_nan(params)};
}

double qfi_per_photon(const RunConfig& c, const Point& p, int sites) {
  const ChainParams params = with_total_photons(chain(c, p, sites), 1.0);
  return snr_qfi_linear(params, 1.0, p.tau).qfi;
}

std::vector<Cell> qfi_scan_row(const RunConfig& c, const Point& p) {
  const double q = qfi_per_photon(c, p, p.sites);
  const double base = qfi_per_photon(c, p, 1);
  const ChainParams params = chain(c, p);
  const double z = z_or_nan(params);
  return {q, q / base, z * std::exp(2.0 * params.amplification() * (p.sites - 1)), z};
}

std::vector<Cell> nhse_row(const RunConfig& c, const Point& p) {
  auto hop = [&](int sites) {
    const ChainParams params = with_total_photons(chain(c, p, sites), 1.0);
    return snr_nhse(params, 1.0, p.hop_phase, p.tau).qfi;
  };
  const double q = hop(p.sites);
  return {qfi_per_photon(c, p, p.sites), q, q / hop(1), z_or_nan(chain(c, p))};
}

std::vector<Cell> meas_time_row(const RunConfig& c, const Point& p) {
  const ChainParams params = chain(c, p);
  const Timescales t = timescales(params, p.eps0, p.photons);
  const double k = c.kappa;
  const double unbounded = measurement_time_unbounded(params, p.eps0, p.photons);
  const double analytic = measurement_time(params, p.eps0, p.photons, TimeMode::Analytic);
  const double numeric = measurement_time(params, p.eps0, p.photons, TimeMode::Numeric);
  return {k * t.round_trip, k * t.escape,     k * t.tau_star, k * unbounded,
          k * analytic,     k * numeric,      k * strong_measurement_asymptote(t)};
}

std::vector<Cell> fig3_row(const RunConfig& c, const Point& p) {
  const ChainParams params = chain(c, p);
  const Timescales t = timescales(params, p.eps0, p.photons);
  const double k = c.kappa;
  return {k * measurement_time(params, p.eps0, p.photons, TimeMode::Numeric),
          k * measurement_time(params, p.eps0, p.photons, TimeMode::Analytic), k * t.round_trip, k * t.tau_star};
}

std::vector<Cell> nonpert_row(const RunConfig& c, const Point& p) {
  const ChainParams params = with_total_photons(chain(c, p), p.photons);
  const ScatteringMatrix s = scattering_matrix(0.0, params, p.eps0);
  const double q = q_factor(params, p.eps0);
  const double full = snr_nonpert_with_q(params, p.eps0, p.tau, p.photons, q);
  const double linear = snr_qfi_linear(params, p.eps0, p.tau).snr;
  const auto a_star = optimal_amplification(p.eps0, c.kappa, p.sites);
  return {s.reflection.real(), s.transmission.real(), q, full, linear, full / linear, a_star.value_or(kNaN)};
}

double nonpert_snr(const RunConfig& c, const Point& p, int sites) {
  const ChainParams params = with_total_photons(chain(c, p, sites), p.photons);
  return snr_nonpert(params, p.eps0, p.tau, p.photons);
}

std::vector<Cell> fig4_row(const RunConfig& c, const Point& p) {
  const double ratio = nonpert_snr(c, p, p.sites) / nonpert_snr(c, p, 1);
  const ChainParams params = chain(c, p);
  const double a = params.amplification();
  const double linear = std::sqrt(z_or_nan(params)) * std::exp(a * (p.sites - 1));
  return {ratio, linear, optimal_sites(a, p.eps0, c.kappa)};
}

const TaskSpec& spec(Task task) {
  static const TaskSpec snr_linear{
      {"N", "J_over_kappa", "A", "eps0_over_kappa", "n_tot", "n_th", "kappa_tau", "signal", "noise", "snr", "qfi",
       "qfi_per_photon", "phi_opt", "Z"},
      kCoupling | kEps | kPhotons | kThermal | kTau,
      snr_linear_row};
  static const TaskSpec qfi_scan{
      {"N", "J_over_kappa", "A", "n_th", "kappa_tau", "qfi_per_photon", "qfi_ratio", "predicted_ratio", "Z"},
      kCoupling | kThermal | kTau,
      qfi_scan_row};
  static const TaskSpec nhse{{"N", "J_over_kappa", "A", "n_th", "kappa_tau", "hop_phase",
                              "qfi_per_photon_dispersive", "qfi_per_photon_hop", "hop_ratio", "Z"},
                             kCoupling | kThermal | kTau | kHop,
                             nhse_row};
  static const TaskSpec meas_time{
      {"N", "J_over_kappa", "A", "eps0_over_kappa", "n_tot", "n_th", "kappa_t_rt", "kappa_t_esc", "kappa_tau_star",
       "kappa_tau_M_unbounded", "kappa_tau_M_analytic", "kappa_tau_M_numeric", "kappa_tau_M_strong_asymptote"},
      kCoupling | kEps | kPhotons | kThermal,
      meas_time_row};
  static const TaskSpec nonpert{{"N", "J_over_kappa", "A", "eps0_over_kappa", "n_tot", "kappa_tau", "R", "T", "Q",
                                 "snr_nonpert", "snr_linear", "snr_ratio", "A_star"},
                                kCoupling | kEps | kPhotons | kTau,
                                nonpert_row};
  static const TaskSpec fig3{
      {"N", "J_over_kappa", "kappa_tau_M_numeric", "kappa_tau_M_analytic", "kappa_t_rt", "kappa_tau_star"},
      kCoupling | kEps | kPhotons,
      fig3_row};
  static const TaskSpec fig4{{"N", "snr_ratio", "snr_linear_prediction", "N_star"},
                             kCoupling | kEps | kPhotons | kTau,
                             fig4_row};
  switch (task) {
    case Task::SnrLinear: return snr_linear;
    case Task::QfiScan: return qfi_scan;
    case Task::NhseCompare: return nhse;
    case Task::MeasTime: return meas_time;
    case Task::NonpertScan: return nonpert;
    case Task::Fig3: return fig3;
    case Task::Fig4: return fig4;
    case Task::Verify: break;
  }
  throw std::logic_error("verify has no grid spec");
}

// Leading identification columns of a row, matching the spec's column list.
std::vector<Cell> key_cells(Task task, const RunConfig& c, const Point& p) {
  const double j = p.coupling.effective_hopping / c.kappa;
  const double a = p.coupling.amplification;
  const double e = p.eps0 / c.kappa;
  const double kt = c.kappa * p.tau;
  const long long n = p.sites;
  switch (task) {
    case Task::SnrLinear: return {n, j, a, e, p.photons, p.thermal, kt};
    case Task::QfiScan: return {n, j, a, p.thermal, kt};
    case Task::NhseCompare: return {n, j, a, p.thermal, kt, p.hop_phase};
    case Task::MeasTime: return {n, j, a, e, p.photons, p.thermal};
    case Task::NonpertScan: return {n, j, a, e, p.photons, kt};
    case Task::Fig3: return {n, j};
    case Task::Fig4: return {n};
    case Task::Verify: break;
  }
  return {};
}

std::vector<Point> grid(const RunConfig& c, unsigned axes) {
  auto pick = [&](unsigned axis, const std::vector<double>& v) {
    return (axes & axis) ? v : std::vector<double>{v.front()};
  };
  const std::vector<Coupling> couplings =
      (axes & kCoupling) ? c.couplings : std::vector<Coupling>{c.couplings.front()};
  std::vector<Point> out;
  // Sites vary fastest so each curve is contiguous.
  for (const Coupling& k : couplings) {
    for (double e : pick(kEps, c.eps0)) {
      for (double n : pick(kPhotons, c.photons)) {
        for (double th : pick(kThermal, c.thermal_quanta)) {
          for (double t : pick(kTau, c.tau)) {
            for (double h : pick(kHop, c.hop_phase)) {
              for (int s : c.sites) out.push_back({s, k, e, n, th, t, h});
            }
          }
        }
      }
    }
  }
  return out;
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string error_status(const std::exception& e) {
  std::string msg = e.what();
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return "error: " + msg;
}

Dataset run_grid(const RunConfig& c, unsigned threads) {
  const TaskSpec& s = spec(c.task);
  Dataset out;
  out.columns = task_columns(c.task);
  const std::vector<Point> points = grid(c, s.axes);
  out.rows.resize(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    std::vector<Cell> row = key_cells(c.task, c, points[i]);
    const std::size_t width = out.columns.size() - 1;
    try {
      for (Cell& v : s.evaluate(c, points[i])) row.push_back(std::move(v));
      row.emplace_back(std::string("ok"));
    } catch (const std::exception& e) {
      row.resize(width, kNaN);
      row.emplace_back(error_status(e));
    }
    out.rows[i] = std::move(row);
  });
  return out;
}

Dataset run_verify(const RunConfig& c, unsigned threads) {
  const std::vector<VerifyCheck> checks = verification_checks(c);
  Dataset out;
  out.columns = task_columns(Task::Verify);
  out.rows.resize(checks.size());
  parallel_for(checks.size(), threads, [&](std::size_t i) {
    std::vector<Cell> row{checks[i].name};
    try {
      const CheckOutcome r = checks[i].run();
      const bool pass = r.max_error < c.verify_tolerance;
      row.insert(row.end(), {Cell(r.cases), Cell(r.max_error), Cell(c.verify_tolerance)});
      row.emplace_back(std::string(pass ? "ok" : "fail"));
    } catch (const std::exception& e) {
      row.insert(row.end(), {Cell(0LL), Cell(kNaN), Cell(c.verify_tolerance)});
      row.emplace_back(error_status(e));
    }
    out.rows[i] = std::move(row);
  });
  return out;
}

}  // namespace

std::size_t Dataset::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const std::vector<Cell>& r) {
    const auto* s = std::get_if<std::string>(&r.back());
    return !s || *s != "ok";
  }));
}

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("NHSENSE_MAX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return std::max(1u, n);
}

std::vector<std::string> task_columns(Task task) {
  std::vector<std::string> out;
  if (task == Task::Verify) {
    out = {"check", "cases", "max_rel_error", "tolerance"};
  } else {
    out = spec(task).columns;
  }
  out.push_back("status");
  return out;
}

Dataset run_sweep(const RunConfig& config, unsigned threads) {
  return config.task == Task::Verify ? run_verify(config, threads) : run_grid(config, threads);
}

}  // namespace nhsense::cli
