#include "nhsense/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nhsense/errors.hpp"
#include "nhsense/params.hpp"

namespace nhsense::cli {

namespace {

namespace pt = boost::property_tree;

const std::vector<std::pair<Task, std::string>> kTaskNames = {
    {Task::SnrLinear, "snr-linear"}, {Task::QfiScan, "qfi-scan"},     {Task::NhseCompare, "nhse-compare"},
    {Task::MeasTime, "meas-time"},   {Task::NonpertScan, "nonpert-scan"}, {Task::Fig3, "fig3"},
    {Task::Fig4, "fig4"},            {Task::Verify, "verify"}};

const std::map<std::string, std::set<std::string>> kSchema = {
    {"chain",
     {"sites", "amplification", "hopping", "bare_hopping", "pair_drive", "kappa", "thermal_quanta",
      "drive_phase", "allow_even"}},
    {"probe", {"eps0", "photons", "tau", "hop_phase"}},
    {"readout", {"homodyne_angle"}},
    {"verify", {"tolerance", "frequencies"}},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& key, const std::string& token) {
  const std::string t = trim(token);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + t + "'");
  }
  return v;
}

// "a, b, c" or the inclusive range "start:stop:step".
std::vector<double> parse_list(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(key, "empty value");
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw ConfigError(key, "range must be start:stop:step");
    const double start = parse_number(key, parts[0]);
    const double stop = parse_number(key, parts[1]);
    const double step = parse_number(key, parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError(key, "range needs step > 0 and stop >= start");
    const double count = std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9);
    if (count > 1e6) throw ConfigError(key, "range has too many points");
    for (long k = 0; k <= static_cast<long>(count); ++k) out.push_back(start + k * step);
    return out;
  }
  std::stringstream ss(t);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(parse_number(key, part));
  return out;
}

double parse_scalar(const std::string& key, const std::string& text) {
  const std::vector<double> v = parse_list(key, text);
  if (v.size() != 1) throw ConfigError(key, "expected a single value");
  return v.front();
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + t + "'");
}

std::vector<int> to_sites(const std::string& key, const std::vector<double>& values) {
  std::vector<int> out;
  for (double v : values) {
    if (v != std::floor(v) || v < 1.0 || v > 1e5) throw ConfigError(key, "sites must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<int> odd_range(int lo, int hi) {
  std::vector<int> out;
  for (int n = lo; n <= hi; n += 2) out.push_back(n);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + shortest(v[i]);
  return out;
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, message);
}

void validate(const RunConfig& c) {
  require(!c.output.empty(), "output", "an output path is required");
  require(c.kappa > 0.0, "chain.kappa", "must be positive");
  require(!c.sites.empty(), "chain.sites", "grid is empty");
  if (!c.allow_even) {
    for (int n : c.sites) {
      require(n % 2 == 1, "chain.sites", "even N = " + std::to_string(n) + " (set chain.allow_even = true)");
    }
  }
  require(!c.couplings.empty(), "chain.hopping", "grid is empty");
  for (const Coupling& k : c.couplings) {
    require(k.effective_hopping > 0.0, "chain.hopping", "must be positive");
    require(k.amplification >= 0.0, "chain.amplification", "must be non-negative");
  }
  for (double v : c.thermal_quanta) require(v >= 0.0, "chain.thermal_quanta", "must be non-negative");
  for (double v : c.photons) require(v > 0.0, "probe.photons", "must be positive");
  for (double v : c.tau) require(v > 0.0, "probe.tau", "must be positive");
  require(!c.eps0.empty() && !c.photons.empty() && !c.tau.empty() && !c.thermal_quanta.empty() &&
              !c.hop_phase.empty(),
          "probe", "grid is empty");
  const bool needs_shift = c.task == Task::MeasTime || c.task == Task::Fig3 || c.task == Task::Fig4 ||
                           c.task == Task::NonpertScan;
  if (needs_shift) {
    for (double e : c.eps0) require(e != 0.0, "probe.eps0", "must be non-zero for " + task_name(c.task));
  }
  if (c.task == Task::Fig4 || c.task == Task::NonpertScan) {
    for (double e : c.eps0) require(std::abs(e) < 0.5 * c.kappa, "probe.eps0", "must satisfy |eps0| < kappa/2");
  }
  if (c.task == Task::Fig3) {
    require(c.eps0.size() == 1, "probe.eps0", "fig3 takes a single value");
    require(c.photons.size() == 1, "probe.photons", "fig3 takes a single value");
    for (const Coupling& k : c.couplings) {
      require(k.amplification == c.couplings.front().amplification, "chain.amplification",
              "fig3 takes a single value");
    }
  }
  if (c.task == Task::Fig4) {
    require(c.couplings.size() == 1, "chain.hopping", "fig4 takes a single (hopping, amplification) pair");
    require(c.eps0.size() == 1, "probe.eps0", "fig4 takes a single value");
    require(c.photons.size() == 1, "probe.photons", "fig4 takes a single value");
    require(c.tau.size() == 1, "probe.tau", "fig4 takes a single value");
    require(c.couplings.front().amplification > 0.0, "chain.amplification", "fig4 needs A > 0");
  }
  require(c.verify_tolerance > 0.0, "verify.tolerance", "must be positive");
  require(c.verify_frequencies >= 1, "verify.frequencies", "must be at least 1");
}

}  // namespace

ConfigError::ConfigError(const std::string& key, const std::string& message)
    : std::runtime_error(key.empty() ? message : key + ": " + message), key_(key) {}

std::string task_name(Task task) {
  for (const auto& [t, name] : kTaskNames) {
    if (t == task) return name;
  }
  return "unknown";
}

std::optional<Task> parse_task(const std::string& name) {
  for (const auto& [t, n] : kTaskNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

const std::vector<Task>& all_tasks() {
  static const std::vector<Task> tasks = [] {
    std::vector<Task> out;
    for (const auto& entry : kTaskNames) out.push_back(entry.first);
    return out;
  }();
  return tasks;
}

RunConfig default_config(Task task) {
  RunConfig c;
  c.task = task;
  c.sites = odd_range(1, 21);
  c.couplings = {{1.0, 0.2}};
  c.eps0 = {1e-6};
  c.photons = {1e6};
  c.thermal_quanta = {0.0};
  c.tau = {1.0};
  c.hop_phase = {0.0};
  switch (task) {
    case Task::Fig3:
    case Task::MeasTime:
      c.sites = odd_range(1, 51);
      c.couplings = {{10.0, 0.2}, {100.0, 0.2}, {1000.0, 0.2}};
      c.eps0 = {1e-8};
      c.photons = {5e9};
      break;
    case Task::Fig4:
      c.sites = odd_range(1, 301);
      c.couplings = {{1.0, 0.05}};
      c.eps0 = {1e-7};
      c.photons = {5e9};
      break;
    case Task::NonpertScan:
      c.eps0 = {1e-3};
      break;
    case Task::Verify:
      c.couplings = {{1.0, 0.3}};
      c.eps0 = {0.0, 1e-3, 0.1};
      break;
    default:
      break;
  }
  return c;
}

RunConfig parse_config(const std::string& text, std::optional<Task> task_override) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  std::optional<Task> task = task_override;
  if (auto node = tree.get_child_optional("task"); node && node->empty()) {
    const std::string name = trim(node->data());
    const auto parsed = parse_task(name);
    if (!parsed) throw ConfigError("task", "unknown task '" + name + "'");
    if (task_override && *task_override != *parsed) {
      throw ConfigError("task", "file says '" + name + "' but the command line asks for '" +
                                    task_name(*task_override) + "'");
    }
    task = parsed;
  }
  if (!task) throw ConfigError("task", "no task given");
  RunConfig c = default_config(*task);

  std::map<std::string, std::string> values;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      if (key != "task" && key != "output") throw ConfigError(key, "unknown key");
      if (key == "output") c.output = trim(node.data());
      continue;
    }
    const auto section = kSchema.find(key);
    if (section == kSchema.end()) throw ConfigError(key, "unknown section");
    for (const auto& [name, leaf] : node) {
      const std::string path = key + "." + name;
      if (!section->second.count(name)) throw ConfigError(path, "unknown key");
      values[path] = leaf.data();
    }
  }
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    const auto it = values.find(path);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };

  if (auto v = get("chain.sites")) c.sites = to_sites("chain.sites", parse_list("chain.sites", *v));
  if (auto v = get("chain.kappa")) c.kappa = parse_scalar("chain.kappa", *v);
  if (auto v = get("chain.thermal_quanta")) c.thermal_quanta = parse_list("chain.thermal_quanta", *v);
  if (auto v = get("chain.drive_phase")) c.drive_phase = parse_scalar("chain.drive_phase", *v);
  if (auto v = get("chain.allow_even")) c.allow_even = parse_bool("chain.allow_even", *v);

  const auto bare = get("chain.bare_hopping");
  const auto pair = get("chain.pair_drive");
  const auto hop = get("chain.hopping");
  const auto amp = get("chain.amplification");
  if (bare || pair) {
    if (hop || amp) {
      throw ConfigError(bare ? "chain.bare_hopping" : "chain.pair_drive",
                        "give either (hopping, amplification) or (bare_hopping, pair_drive)");
    }
    if (!bare || !pair) throw ConfigError(bare ? "chain.pair_drive" : "chain.bare_hopping", "missing partner key");
    const auto w = parse_list("chain.bare_hopping", *bare);
    const auto d = parse_list("chain.pair_drive", *pair);
    if (w.size() != d.size() && w.size() != 1 && d.size() != 1) {
      throw ConfigError("chain.pair_drive", "length must match bare_hopping or be 1");
    }
    c.couplings.clear();
    const std::size_t n = std::max(w.size(), d.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double wi = w[w.size() == 1 ? 0 : i];
      const double di = d[d.size() == 1 ? 0 : i];
      if (!(wi > 0.0)) throw ConfigError("chain.bare_hopping", "must be positive");
      if (!(std::abs(di) < wi)) {
        throw ConfigError("chain.pair_drive", "|pair_drive| = " + shortest(std::abs(di)) +
                                                  " must be below bare_hopping = " + shortest(wi) +
                                                  " for a stable chain");
      }
      const HoppingParams h = derive_hopping_params(wi, di);
      c.couplings.push_back({h.effective_hopping, h.amplification});
    }
  } else if (hop || amp) {
    std::vector<double> js;
    std::vector<double> as;
    for (const Coupling& k : c.couplings) {
      if (std::find(js.begin(), js.end(), k.effective_hopping) == js.end()) js.push_back(k.effective_hopping);
      if (std::find(as.begin(), as.end(), k.amplification) == as.end()) as.push_back(k.amplification);
    }
    if (hop) js = parse_list("chain.hopping", *hop);
    if (amp) as = parse_list("chain.amplification", *amp);
    c.couplings.clear();
    for (double a : as) {
      for (double j : js) c.couplings.push_back({j, a});
    }
  }

  if (auto v = get("probe.eps0")) c.eps0 = parse_list("probe.eps0", *v);
  if (auto v = get("probe.photons")) c.photons = parse_list("probe.photons", *v);
  if (auto v = get("probe.tau")) c.tau = parse_list("probe.tau", *v);
  if (auto v = get("probe.hop_phase")) c.hop_phase = parse_list("probe.hop_phase", *v);
  if (auto v = get("readout.homodyne_angle")) c.homodyne_angle = parse_scalar("readout.homodyne_angle", *v);
  if (auto v = get("verify.tolerance")) c.verify_tolerance = parse_scalar("verify.tolerance", *v);
  if (auto v = get("verify.frequencies")) {
    const double f = parse_scalar("verify.frequencies", *v);
    if (f != std::floor(f) || f < 1.0 || f > 1e6) throw ConfigError("verify.frequencies", "must be a positive integer");
    c.verify_frequencies = static_cast<int>(f);
  }

  validate(c);
  return c;
}

RunConfig load_config(const std::string& path, std::optional<Task> task_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), task_override);
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<double> sites_d(sites.begin(), sites.end());
  std::vector<double> js;
  std::vector<double> as;
  for (const Coupling& k : couplings) {
    js.push_back(k.effective_hopping);
    as.push_back(k.amplification);
  }
  return {
      {"task", task_name(task)},
      {"output", output},
      {"chain.sites", join(sites_d)},
      {"chain.hopping", join(js)},
      {"chain.amplification", join(as)},
      {"chain.kappa", shortest(kappa)},
      {"chain.thermal_quanta", join(thermal_quanta)},
      {"chain.drive_phase", shortest(drive_phase)},
      {"chain.allow_even", allow_even ? "true" : "false"},
      {"probe.eps0", join(eps0)},
      {"probe.photons", join(photons)},
      {"probe.tau", join(tau)},
      {"probe.hop_phase", join(hop_phase)},
      {"readout.homodyne_angle", shortest(homodyne_angle)},
      {"verify.tolerance", shortest(verify_tolerance)},
      {"verify.frequencies", std::to_string(verify_frequencies)},
  };
}

std::size_t RunConfig::grid_size() const {
  return sites.size() * couplings.size() * eps0.size() * photons.size() * thermal_quanta.size() * tau.size() *
         hop_phase.size();
}

}  // namespace nhsense::cli
