#include "fpsi/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "fpsi/convergence.hpp"
#include "fpsi/error.hpp"

namespace fpsi {

void PhysicalParams::validate() const {
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::Config, std::string(key) + ": must be positive and finite");
    }
  };
  positive("rho_f", rho_f);
  positive("mu_f", mu_f);
  positive("rho_p", rho_p);
  positive("mu_p", mu_p);
  positive("lambda_p", lambda_p);
  positive("C0", c0);
  positive("K", K);
  positive("gamma", gamma);
  positive("L", L);
  positive("dt", dt);
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::Config, "alpha: must lie in (0, 1]");
  if (!(T >= 0.0) || !std::isfinite(T)) fail(ErrorKind::Config, "T: must be nonnegative");
}

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::BenchmarkCase1: return "benchmark-case1";
    case ProblemKind::BenchmarkCase2: return "benchmark-case2";
    case ProblemKind::StokesBiotCustom: return "stokes-biot-custom";
    case ProblemKind::NsBiotDemo: return "nsbiot-demo";
  }
  return "?";
}

Config default_config(ProblemKind kind) {
  Config c;
  c.kind = kind;
  switch (kind) {
    case ProblemKind::BenchmarkCase1:
    case ProblemKind::BenchmarkCase2:
      c.n = 4;
      c.params = benchmark_params(c.n);
      break;
    case ProblemKind::StokesBiotCustom:
      c.n = 8;
      c.params = benchmark_params(c.n);
      break;
    case ProblemKind::NsBiotDemo:
      c.params = channel_params();
      c.snapshot_every = 100;
      break;
  }
  return c;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void config_error(std::string_view key, int line, const std::string& why) {
  std::string msg;
  if (line > 0) msg = "line " + std::to_string(line) + ": ";
  msg += std::string(key) + ": " + why;
  fail(ErrorKind::Config, msg);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) config_error(key, e.line, "cannot parse '" + e.value + "' as a number");
  return v;
}

int parse_int(const std::string& key, const Entry& e) {
  int v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) config_error(key, e.line, "cannot parse '" + e.value + "' as an integer");
  return v;
}

bool parse_bool(const std::string& key, const Entry& e) {
  const std::string& v = e.value;
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  config_error(key, e.line, "cannot parse '" + v + "' as a boolean");
}

Rect parse_rect(const std::string& key, const Entry& e) {
  std::array<double, 4> v{};
  std::stringstream ss(e.value);
  std::string item;
  size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 4) break;
    v[i++] = parse_double(key, {trim(item), e.line});
  }
  if (i != 4 || std::getline(ss, item, ',')) {
    config_error(key, e.line, "expected x0,x1,y0,y1");
  }
  return {v[0], v[1], v[2], v[3]};
}

ProblemKind parse_kind(const Entry& e) {
  for (ProblemKind k : {ProblemKind::BenchmarkCase1, ProblemKind::BenchmarkCase2,
                        ProblemKind::StokesBiotCustom, ProblemKind::NsBiotDemo}) {
    if (e.value == to_string(k)) return k;
  }
  config_error("kind", e.line, "unknown problem kind '" + e.value + "'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Rect& r) {
  return fmt(r.x0) + "," + fmt(r.x1) + "," + fmt(r.y0) + "," + fmt(r.y1);
}

const char* fmt(bool b) { return b ? "true" : "false"; }

using Setter = std::function<void(Config&, const std::string&, const Entry&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    auto real = [&m](const char* key, double PhysicalParams::*member) {
      m[key] = [member](Config& c, const std::string& k, const Entry& e) {
        c.params.*member = parse_double(k, e);
      };
    };
    real("rho_f", &PhysicalParams::rho_f);
    real("mu_f", &PhysicalParams::mu_f);
    real("rho_p", &PhysicalParams::rho_p);
    real("mu_p", &PhysicalParams::mu_p);
    real("lambda_p", &PhysicalParams::lambda_p);
    real("alpha", &PhysicalParams::alpha);
    real("C0", &PhysicalParams::c0);
    real("K", &PhysicalParams::K);
    real("gamma", &PhysicalParams::gamma);
    real("L", &PhysicalParams::L);
    real("dt", &PhysicalParams::dt);
    real("T", &PhysicalParams::T);
    m["n"] = [](Config& c, const std::string& k, const Entry& e) { c.n = parse_int(k, e); };
    m["output-dir"] = [](Config& c, const std::string& k, const Entry& e) {
      if (e.value.empty()) config_error(k, e.line, "must not be empty");
      c.output_dir = e.value;
    };
    m["snapshot-every"] = [](Config& c, const std::string& k, const Entry& e) {
      c.snapshot_every = parse_int(k, e);
    };
    m["sequential"] = [](Config& c, const std::string& k, const Entry& e) {
      c.sequential = parse_bool(k, e);
    };
    m["include-xi-normal-interface-term"] = [](Config& c, const std::string& k, const Entry& e) {
      c.discretization.include_xi_normal_term = parse_bool(k, e);
    };
    m["pressure-mean-zero"] = [](Config& c, const std::string& k, const Entry& e) {
      c.discretization.pressure_mean_zero = parse_bool(k, e);
    };
    m["corner-policy"] = [](Config& c, const std::string& k, const Entry& e) {
      if (e.value == "interface") {
        c.discretization.corners = CornerPolicy::InterfacePrecedence;
      } else if (e.value == "dirichlet") {
        c.discretization.corners = CornerPolicy::DirichletPrecedence;
      } else {
        config_error(k, e.line, "expected 'interface' or 'dirichlet'");
      }
    };
    m["override-resource-guard"] = [](Config& c, const std::string& k, const Entry& e) {
      c.override_resource_guard = parse_bool(k, e);
    };
    m["solver-tolerance"] = [](Config& c, const std::string& k, const Entry& e) {
      c.solver_tolerance = parse_double(k, e);
    };
    m["fixed-point-iterations"] = [](Config& c, const std::string& k, const Entry& e) {
      c.fixed_point_iterations = parse_int(k, e);
    };
    m["channel-length"] = [](Config& c, const std::string& k, const Entry& e) {
      c.channel.length = parse_double(k, e);
    };
    m["channel-height"] = [](Config& c, const std::string& k, const Entry& e) {
      c.channel.height = parse_double(k, e);
    };
    m["h"] = [](Config& c, const std::string& k, const Entry& e) {
      c.channel.h_fluid = parse_double(k, e);
    };
    m["solid-refinement"] = [](Config& c, const std::string& k, const Entry& e) {
      c.channel.solid_refinement = parse_int(k, e);
    };
    m["obstacle-a"] = [](Config& c, const std::string& k, const Entry& e) {
      c.channel.obstacle_a = parse_rect(k, e);
    };
    m["obstacle-b"] = [](Config& c, const std::string& k, const Entry& e) {
      c.channel.obstacle_b = parse_rect(k, e);
    };
    m["inlet-peak"] = [](Config& c, const std::string& k, const Entry& e) {
      c.channel.inlet_peak = parse_double(k, e);
    };
    return m;
  }();
  return table;
}

bool is_benchmark_grid(ProblemKind k) { return k != ProblemKind::NsBiotDemo; }

}  // namespace

void validate(const Config& c) {
  c.params.validate();
  if (c.n < 1) fail(ErrorKind::Config, "n: must be at least 1");
  if (c.snapshot_every < 0) fail(ErrorKind::Config, "snapshot-every: must be nonnegative");
  if (!(c.solver_tolerance > 0.0)) fail(ErrorKind::Config, "solver-tolerance: must be positive");
  if (c.fixed_point_iterations < 0) {
    fail(ErrorKind::Config, "fixed-point-iterations: must be nonnegative");
  }
  if (c.fixed_point_iterations > 0 && c.kind == ProblemKind::NsBiotDemo) {
    fail(ErrorKind::Config, "fixed-point-iterations: only available on fixed domains");
  }
  const double steps = c.params.T / c.params.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
    fail(ErrorKind::Config, "T: must be an integer multiple of dt");
  }
  if (c.kind == ProblemKind::NsBiotDemo) validate(c.channel);
}

Config parse_config_string(std::string_view text, std::string_view source) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::Config, std::string(source) + ": line " + std::to_string(line) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key != "kind" && !setters().count(key)) config_error(key, line, "unknown key");
    if (entries.count(key)) config_error(key, line, "duplicate key");
    entries[key] = {value, line};
  }
  auto kind_it = entries.find("kind");
  if (kind_it == entries.end()) config_error("kind", 0, "required key missing");
  Config c = default_config(parse_kind(kind_it->second));
  for (const auto& [key, entry] : entries) {
    if (key != "kind") setters().at(key)(c, key, entry);
  }
  // Derived defaults apply only to keys the file leaves unset.
  if (!entries.count("dt") && is_benchmark_grid(c.kind)) c.params.dt = 0.05 / c.n;
  if (!entries.count("L")) c.params.L = 1.0 / c.params.K;
  if (!entries.count("gamma") && c.kind == ProblemKind::NsBiotDemo) {
    c.params.gamma = 1.0 / std::sqrt(c.params.K);
  }
  try {
    validate(c);
  } catch (const Error& e) {
    const std::string msg = e.what();
    const std::string key = msg.substr(0, msg.find(':'));
    auto it = entries.find(key);
    if (it != entries.end()) {
      fail(e.kind(), "line " + std::to_string(it->second.line) + ": " + msg);
    }
    throw;
  }
  return c;
}

Config parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str(), path.string());
}

std::string serialize(const Config& c) {
  const PhysicalParams& p = c.params;
  std::ostringstream out;
  out << "kind = " << to_string(c.kind) << "\n"
      << "n = " << c.n << "\n"
      << "rho_f = " << fmt(p.rho_f) << "\n"
      << "mu_f = " << fmt(p.mu_f) << "\n"
      << "rho_p = " << fmt(p.rho_p) << "\n"
      << "mu_p = " << fmt(p.mu_p) << "\n"
      << "lambda_p = " << fmt(p.lambda_p) << "\n"
      << "alpha = " << fmt(p.alpha) << "\n"
      << "C0 = " << fmt(p.c0) << "\n"
      << "K = " << fmt(p.K) << "\n"
      << "gamma = " << fmt(p.gamma) << "\n"
      << "L = " << fmt(p.L) << "\n"
      << "dt = " << fmt(p.dt) << "\n"
      << "T = " << fmt(p.T) << "\n"
      << "output-dir = " << c.output_dir << "\n"
      << "snapshot-every = " << c.snapshot_every << "\n"
      << "sequential = " << fmt(c.sequential) << "\n"
      << "include-xi-normal-interface-term = " << fmt(c.discretization.include_xi_normal_term) << "\n"
      << "pressure-mean-zero = " << fmt(c.discretization.pressure_mean_zero) << "\n"
      << "corner-policy = "
      << (c.discretization.corners == CornerPolicy::InterfacePrecedence ? "interface" : "dirichlet")
      << "\n"
      << "override-resource-guard = " << fmt(c.override_resource_guard) << "\n"
      << "solver-tolerance = " << fmt(c.solver_tolerance) << "\n"
      << "fixed-point-iterations = " << c.fixed_point_iterations << "\n"
      << "channel-length = " << fmt(c.channel.length) << "\n"
      << "channel-height = " << fmt(c.channel.height) << "\n"
      << "h = " << fmt(c.channel.h_fluid) << "\n"
      << "solid-refinement = " << c.channel.solid_refinement << "\n"
      << "obstacle-a = " << fmt(c.channel.obstacle_a) << "\n"
      << "obstacle-b = " << fmt(c.channel.obstacle_b) << "\n"
      << "inlet-peak = " << fmt(c.channel.inlet_peak) << "\n";
  return out.str();
}

}  // namespace fpsi
