#include "qbounce/cli_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "qbounce/double_mirror.hpp"
#include "qbounce/errors.hpp"
#include "qbounce/free_fall.hpp"
#include "qbounce/gravity_states.hpp"
#include "qbounce/parallel.hpp"
#include "qbounce/wigner.hpp"
#include "qbounce/yukawa.hpp"

namespace qbounce {

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::levels, "levels"},   {Command::modes, "modes"},   {Command::wavefunction, "wavefunction"},
    {Command::spectrum, "spectrum"}, {Command::wigner, "wigner"}, {Command::evolve, "evolve"},
    {Command::mixture, "mixture"}, {Command::yukawa, "yukawa"}};

const std::vector<std::string> kFamilies = {"airy", "single", "superposition", "double", "region2"};

std::vector<std::string> quantities_for(Command c) {
  switch (c) {
    case Command::evolve: return {"density", "momentum", "coefficients", "norm"};
    case Command::yukawa: return {"levels", "potential", "density", "momentum"};
    default: return {"density"};
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Family whose default axes apply.
std::string axis_family(const RunConfig& c) {
  switch (c.command) {
    case Command::evolve:
    case Command::mixture:
    case Command::yukawa: return "region2";
    default: return c.family;
  }
}

void apply_default_axes(RunConfig& c) {
  const std::string f = axis_family(c);
  if (f == "airy") c.z = {-15.0, 5.0, 401};
  else if (f == "double") c.z = {0.0, c.L, 201};
  else if (f == "region2") c.z = {0.0, 80.0, 201};
  else c.z = {0.0, 10.0, 201};
  if (f == "double" || f == "region2") c.k = {-3.0, 3.0, 201};
  else c.k = {-6.0, 6.0, 201};
}

struct Binder {
  RunConfig cfg;
  std::string command;
  std::string L = "28um", h = "27um", W0 = "-1peV", delta = "10um";
  std::string z_min, z_max, t_min = "0ms", t_max = "10ms", time = "0ms";
  int z_count = 0, k_count = 0;
  double k_min = 0.0, k_max = 0.0;
  std::unique_ptr<CLI::App> app;

  Binder() : app(std::make_unique<CLI::App>("qbounce: gravitational quantum states of neutrons")) {
    auto& a = *app;
    auto& c = cfg;
    a.add_option("command", command, "levels | modes | wavefunction | spectrum | wigner | evolve | mixture | yukawa");
    a.set_help_flag("--help", "print this reference");
    a.set_config("--config", "", "key = value configuration file");
    a.allow_config_extras(CLI::config_extras_mode::error);
    a.add_option("--family", c.family, join(kFamilies));
    a.add_option("--quantity", c.quantity, "output selector for evolve / yukawa");
    a.add_option("--g", c.g, "gravitational acceleration, m/s^2");
    a.add_option("--n", c.n, "single-mirror level");
    a.add_option("--n2", c.n2, "second level of a superposition");
    a.add_option("--n-max", c.n_max, "number of levels");
    a.add_option("--m", c.m, "double-mirror mode");
    a.add_option("--m-max", c.m_max, "number of double-mirror modes");
    a.add_option("--N", c.N, "region-II truncation order");
    a.add_option("--L", L, "slit width (um)");
    a.add_option("--h", h, "step height (um)");
    a.add_option("--p1", c.p1, "weight of the first component");
    a.add_option("--p2", c.p2, "weight of the second component");
    a.add_option("--W0", W0, "Yukawa strength (peV)");
    a.add_option("--delta", delta, "Yukawa range (um)");
    a.add_option("--w0-count", c.w0_count, "W0 sweep size for yukawa levels");
    a.add_flag("--normalized", c.normalized, "use normalised single-mirror states");
    a.add_flag("--averaged", c.averaged, "drop the interference term (time average)");
    a.add_option("--z-min", z_min, "lower height (um, or scaled)");
    a.add_option("--z-max", z_max, "upper height (um, or scaled)");
    a.add_option("--z-count", z_count, "height samples");
    a.add_option("--k-min", k_min, "lower wavenumber (1/um, or scaled)");
    a.add_option("--k-max", k_max, "upper wavenumber (1/um, or scaled)");
    a.add_option("--k-count", k_count, "wavenumber samples");
    a.add_option("--t-min", t_min, "first time (ms)");
    a.add_option("--t-max", t_max, "last time (ms)");
    a.add_option("--t-count", c.t.count, "time samples");
    a.add_option("--time", time, "time for single-time outputs (ms)");
    a.add_option("--output", c.output, "output path, - for stdout");
    a.add_option("--abs-tol", c.tolerances.abs_tol, "quadrature absolute tolerance");
    a.add_option("--rel-tol", c.tolerances.rel_tol, "quadrature relative tolerance");
    a.add_option("--max-subdivisions", c.tolerances.max_subdivisions, "quadrature subdivision budget");
    a.add_option("--tail-cutoff", c.tolerances.tail_cutoff, "Airy envelope treated as zero");
    a.add_option("--tail-pad", c.tolerances.tail_pad, "scaled padding beyond the outer turning point");
    a.add_option("--k-limit", c.tolerances.k_max, "largest scaled wavenumber for transforms");
  }

  RunConfig finish() {
    auto& a = *app;
    auto& c = cfg;
    if (command.empty()) throw ConfigError("command", "missing; expected one of levels, modes, wavefunction, "
                                                      "spectrum, wigner, evolve, mixture, yukawa");
    c.command = command_from_name(command);
    c.L = parse_quantity("L", L, "um");
    c.h = parse_quantity("h", h, "um");
    c.W0 = parse_quantity("W0", W0, "peV");
    c.delta = parse_quantity("delta", delta, "um");
    c.t.lo = parse_quantity("t-min", t_min, "ms");
    c.t.hi = parse_quantity("t-max", t_max, "ms");
    c.time = parse_quantity("time", time, "ms");
    apply_default_axes(c);
    if (a.count("--z-min")) c.z.lo = parse_quantity("z-min", z_min, "um");
    if (a.count("--z-max")) c.z.hi = parse_quantity("z-max", z_max, "um");
    if (a.count("--z-count")) c.z.count = z_count;
    if (a.count("--k-min")) c.k.lo = k_min;
    if (a.count("--k-max")) c.k.hi = k_max;
    if (a.count("--k-count")) c.k.count = k_count;
    validate(c);
    return c;
  }
};

[[noreturn]] void rethrow_cli(const CLI::ParseError& e) {
  std::string what = e.what();
  std::string key = "arguments";
  const std::string ini = "INI was not able to parse ";
  if (const auto at = what.find(ini); at != std::string::npos) {
    key = what.substr(at + ini.size());  // unknown key in a config file
  } else if (const auto pos = what.find("--"); pos != std::string::npos) {
    key = what.substr(pos + 2, what.find_first_of(" =", pos) - pos - 2);
  }
  throw ConfigError(key, what);
}

}  // namespace

std::vector<double> Axis::samples() const { return linspace(lo, hi, static_cast<std::size_t>(count)); }

bool RunConfig::operator==(const RunConfig& o) const {
  const auto& a = tolerances;
  const auto& b = o.tolerances;
  return command == o.command && family == o.family && quantity == o.quantity && g == o.g && n == o.n &&
         n2 == o.n2 && n_max == o.n_max && m == o.m && m_max == o.m_max && N == o.N && L == o.L && h == o.h &&
         p1 == o.p1 && p2 == o.p2 && W0 == o.W0 && delta == o.delta && w0_count == o.w0_count &&
         normalized == o.normalized && averaged == o.averaged && z == o.z && k == o.k && t == o.t &&
         time == o.time && output == o.output && a.abs_tol == b.abs_tol && a.rel_tol == b.rel_tol &&
         a.max_subdivisions == b.max_subdivisions && a.tail_cutoff == b.tail_cutoff &&
         a.tail_pad == b.tail_pad && a.k_max == b.k_max;
}

const char* command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

Command command_from_name(const std::string& name) {
  for (const auto& [cmd, n] : kCommands) {
    if (name == n) return cmd;
  }
  throw ConfigError("command", "unknown command '" + name +
                                   "'; expected one of levels, modes, wavefunction, spectrum, wigner, evolve, "
                                   "mixture, yukawa");
}

double parse_quantity(const std::string& key, const std::string& text, const std::string& unit) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  double scale = 1.0;
  auto strip = [&s](const std::string& suffix) {
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
      s.resize(s.size() - suffix.size());
      return true;
    }
    return false;
  };
  if (!strip(unit) && unit == "ms" && strip("s")) scale = 1000.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw ConfigError(key, "malformed value '" + text + "'; expected a number with optional unit " + unit);
  }
  return v * scale;
}

std::string usage() { return Binder().app->help(); }

RunConfig parse_config(const std::vector<std::string>& args) {
  Binder b;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    b.app->parse(reversed);
  } catch (const CLI::ParseError& e) {
    rethrow_cli(e);
  }
  return b.finish();
}

void validate(const RunConfig& c) {
  auto in_range = [](const char* key, int v, int lo, int hi) {
    if (v < lo || v > hi) {
      throw ConfigError(key, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
    }
  };
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be a positive number, got " + num(v));
  };
  if (std::find(kFamilies.begin(), kFamilies.end(), c.family) == kFamilies.end()) {
    throw ConfigError("family", "unknown family '" + c.family + "'; expected one of " + join(kFamilies));
  }
  const auto qs = quantities_for(c.command);
  if (std::find(qs.begin(), qs.end(), c.quantity) == qs.end()) {
    throw ConfigError("quantity", "'" + c.quantity + "' not available for " + command_name(c.command) +
                                      "; expected one of " + join(qs));
  }
  positive("g", c.g);
  in_range("n", c.n, 1, 200);
  in_range("n2", c.n2, 1, 200);
  in_range("n-max", c.n_max, 1, 200);
  in_range("m-max", c.m_max, 1, 20);
  in_range("m", c.m, 1, 20);
  in_range("N", c.N, 1, 30);
  in_range("w0-count", c.w0_count, 1, 1000);
  positive("L", c.L);
  if (!(c.h >= 0.0) || !std::isfinite(c.h)) throw ConfigError("h", "must be >= 0, got " + num(c.h));
  positive("delta", c.delta);
  if (!std::isfinite(c.W0)) throw ConfigError("W0", "must be finite");
  if (!(c.p1 >= 0.0 && c.p1 <= 1.0)) throw ConfigError("p1", "must lie in [0, 1], got " + num(c.p1));
  if (!(c.p2 >= 0.0 && c.p2 <= 1.0)) throw ConfigError("p2", "must lie in [0, 1], got " + num(c.p2));
  if (std::abs(c.p1 + c.p2 - 1.0) > 1e-12) {
    throw ConfigError("p1, p2", "probabilities must sum to 1 (got " + num(c.p1 + c.p2) + ")");
  }
  auto axis = [](const char* key, const Axis& a) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) throw ConfigError(key, "axis bounds must be finite");
    if (a.count < 1 || a.count > 100000) throw ConfigError(key, "sample count must lie in [1, 100000]");
    if (a.count > 1 && !(a.hi > a.lo)) throw ConfigError(key, "need min < max for more than one sample");
  };
  axis("z-min, z-max, z-count", c.z);
  axis("k-min, k-max, k-count", c.k);
  axis("t-min, t-max, t-count", c.t);
  if (!std::isfinite(c.time)) throw ConfigError("time", "must be finite");
  if (c.output.empty()) throw ConfigError("output", "must not be empty");
  try {
    c.tolerances.validate();
  } catch (const DomainError& e) {
    throw ConfigError("abs-tol, rel-tol, max-subdivisions, tail-pad", e.what());
  }
  positive("tail-cutoff", c.tolerances.tail_cutoff);
  positive("k-limit", c.tolerances.k_max);
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream o;
  auto kv = [&o](const char* key, const std::string& v) { o << key << " = " << v << "\n"; };
  kv("command", command_name(c.command));
  kv("family", c.family);
  kv("quantity", c.quantity);
  kv("g", num(c.g));
  kv("n", std::to_string(c.n));
  kv("n2", std::to_string(c.n2));
  kv("n-max", std::to_string(c.n_max));
  kv("m", std::to_string(c.m));
  kv("m-max", std::to_string(c.m_max));
  kv("N", std::to_string(c.N));
  kv("L", num(c.L) + "um");
  kv("h", num(c.h) + "um");
  kv("p1", num(c.p1));
  kv("p2", num(c.p2));
  kv("W0", num(c.W0) + "peV");
  kv("delta", num(c.delta) + "um");
  kv("w0-count", std::to_string(c.w0_count));
  kv("normalized", c.normalized ? "true" : "false");
  kv("averaged", c.averaged ? "true" : "false");
  kv("z-min", num(c.z.lo));
  kv("z-max", num(c.z.hi));
  kv("z-count", std::to_string(c.z.count));
  kv("k-min", num(c.k.lo));
  kv("k-max", num(c.k.hi));
  kv("k-count", std::to_string(c.k.count));
  kv("t-min", num(c.t.lo) + "ms");
  kv("t-max", num(c.t.hi) + "ms");
  kv("t-count", std::to_string(c.t.count));
  kv("time", num(c.time) + "ms");
  kv("output", c.output);
  kv("abs-tol", num(c.tolerances.abs_tol));
  kv("rel-tol", num(c.tolerances.rel_tol));
  kv("max-subdivisions", std::to_string(c.tolerances.max_subdivisions));
  kv("tail-cutoff", num(c.tolerances.tail_cutoff));
  kv("tail-pad", num(c.tolerances.tail_pad));
  kv("k-limit", num(c.tolerances.k_max));
  return o.str();
}

namespace {

constexpr double kSecondsPerMs = 1e-3;

ScaleSystem scales_of(const RunConfig& c) {
  PhysicalConstants pc;
  pc.g = c.g;
  return make_scales(pc);
}

void add_scale_notes(Table& t, const ScaleSystem& s) {
  t.notes.emplace_back("z0_um", num(s.z0));
  t.notes.emplace_back("E0_peV", num(s.E0));
}

// Rows of an (outer x inner) sweep, outer in parallel; `cell` returns the
// values after the two axis columns.
template <class Cell>
void sweep(Table& t, const std::vector<double>& outer, const std::vector<double>& inner, Cell cell) {
  std::vector<std::vector<double>> rows(outer.size() * inner.size());
  parallel_for(outer.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < inner.size(); ++j) {
      std::vector<double> r{outer[i], inner[j]};
      for (double v : cell(i, j)) r.push_back(v);
      rows[i * inner.size() + j] = std::move(r);
    }
  });
  t.rows = std::move(rows);
}

template <class Cell>
void sweep1(Table& t, const std::vector<double>& axis, Cell cell) {
  std::vector<std::vector<double>> rows(axis.size());
  parallel_for(axis.size(), [&](std::size_t i) {
    std::vector<double> r{axis[i]};
    for (double v : cell(i)) r.push_back(v);
    rows[i] = std::move(r);
  });
  t.rows = std::move(rows);
}

std::vector<double> times_ms(const RunConfig& c) { return c.t.samples(); }

DoubleMirrorMode mode_of(const RunConfig& c, const ScaleSystem& s, int m) {
  return solve_modes(s, c.L, m).at(static_cast<std::size_t>(m - 1));
}

SuperpositionSpec superposition_of(const RunConfig& c, const ScaleSystem& s) {
  SuperpositionSpec sp{c.p1, c.p2, level(s, c.n), level(s, c.n2), c.normalized};
  sp.validate();
  return sp;
}

void add_grid(Table& t, const PhaseSpaceGrid& g) {
  t.rows.reserve(g.W.size());
  for (std::size_t i = 0; i < g.z_axis.size(); ++i) {
    for (std::size_t j = 0; j < g.k_axis.size(); ++j) t.rows.push_back({g.z_axis[i], g.k_axis[j], g.at(i, j)});
  }
}

Table run_wavefunction(const RunConfig& c, const ScaleSystem& s) {
  Table t;
  const auto z = c.z.samples();
  const QuadratureSpec& q = c.tolerances;
  if (c.family == "airy") {
    t.columns = {"x", "Ai", "Ai2"};
    sweep1(t, z, [&](std::size_t i) {
      const double a = airy_ai(z[i]);
      return std::vector<double>{a, a * a};
    });
  } else if (c.family == "single") {
    t.columns = {"zeta", "psi"};
    const EnergyLevel lv = level(s, c.n);
    sweep1(t, z, [&](std::size_t i) {
      return std::vector<double>{c.normalized ? eigenfunction_scaled(lv, z[i]) : eigenfunction(lv, s, z[i], false)};
    });
  } else if (c.family == "superposition") {
    const SuperpositionSpec sp = superposition_of(c, s);
    if (c.averaged) {
      t.columns = {"zeta", "density"};
      sweep1(t, z, [&](std::size_t i) { return std::vector<double>{superposition_density_averaged(sp, z[i])}; });
    } else {
      t.columns = {"zeta", "t_ms", "density"};
      const auto ts = times_ms(c);
      sweep(t, z, ts, [&](std::size_t i, std::size_t j) {
        return std::vector<double>{superposition_density(sp, s, z[i], ts[j] * kSecondsPerMs)};
      });
    }
  } else if (c.family == "double") {
    t.columns = {"z_um", "psi"};
    const DoubleMirrorMode mode = mode_of(c, s, c.m);
    sweep1(t, z, [&](std::size_t i) { return std::vector<double>{mode_value(mode, z[i])}; });
    t.notes.emplace_back("E_bar_peV", num(mode.E_bar));
  } else {
    // Continuity at release: region-I mode versus its truncated expansion.
    t.columns = {"z_um", "psi_I", "psi_II"};
    const Region2Expansion e = expansion_coefficients(mode_of(c, s, c.m), c.h, c.N, q);
    sweep1(t, z, [&](std::size_t i) {
      return std::vector<double>{region1_value(e.mode, e.h, z[i]), region2_wavefunction(e, z[i], 0.0).real()};
    });
    t.notes.emplace_back("continuity_residual", num(continuity_residual(e, q)));
  }
  return t;
}

Table run_region2_momentum(const RunConfig& c, const ScaleSystem& s) {
  Table t;
  t.columns = {"k_per_um", "t_ms", "density"};
  const Region2Expansion e = expansion_coefficients(mode_of(c, s, c.m), c.h, c.N, c.tolerances);
  const TransformTable table(e.levels, s.z0, c.k.samples(), c.tolerances);
  const auto ts = times_ms(c);
  sweep(t, table.k_axis(), ts, [&](std::size_t i, std::size_t j) {
    return std::vector<double>{momentum_density(e, table, i, ts[j] * kSecondsPerMs)};
  });
  return t;
}

Table run_spectrum(const RunConfig& c, const ScaleSystem& s) {
  Table t;
  const auto k = c.k.samples();
  const QuadratureSpec& q = c.tolerances;
  if (c.family == "single" || c.family == "airy") {
    t.columns = {"k", "f_c", "f_s", "F2"};
    const EnergyLevel lv = level(s, c.n);
    sweep1(t, k, [&](std::size_t i) {
      const MomentumComponents f = momentum_components(lv, k[i], c.normalized, q);
      return std::vector<double>{f.c, f.s, f.c * f.c + f.s * f.s};
    });
  } else if (c.family == "superposition") {
    const SuperpositionSpec sp = superposition_of(c, s);
    if (c.averaged) {
      t.columns = {"k", "density"};
      sweep1(t, k, [&](std::size_t i) {
        return std::vector<double>{superposition_momentum_density_averaged(sp, k[i], q)};
      });
    } else {
      t.columns = {"k", "t_ms", "density"};
      std::vector<MomentumComponents> f1(k.size()), f2(k.size());
      parallel_for(k.size(), [&](std::size_t i) {
        f1[i] = momentum_components(sp.l1, k[i], sp.normalized, q);
        f2[i] = momentum_components(sp.l2, k[i], sp.normalized, q);
      });
      const auto ts = times_ms(c);
      sweep(t, k, ts, [&](std::size_t i, std::size_t j) {
        return std::vector<double>{superposition_momentum_density(sp, s, f1[i], f2[i], ts[j] * kSecondsPerMs)};
      });
    }
  } else if (c.family == "double") {
    t.columns = {"k_per_um", "C2_alpha_c2", "C2_alpha_s2", "F2"};
    const DoubleMirrorMode mode = mode_of(c, s, c.m);
    const double C2 = mode.c_bar() * mode.c_bar() / (2.0 * std::numbers::pi);
    sweep1(t, k, [&](std::size_t i) {
      const MomentumComponents a = mode_alpha(mode, k[i], q);
      return std::vector<double>{C2 * a.c * a.c, C2 * a.s * a.s, C2 * (a.c * a.c + a.s * a.s)};
    });
  } else {
    return run_region2_momentum(c, s);
  }
  return t;
}

Table run_wigner(const RunConfig& c, const ScaleSystem& s) {
  Table t;
  const QuadratureSpec& q = c.tolerances;
  const double time = c.time * kSecondsPerMs;
  PhaseSpaceGrid g;
  if (c.family == "single" || c.family == "airy") {
    g = wigner_grid_single(level(s, c.n), c.z.samples(), c.k.samples(), c.normalized, q);
  } else if (c.family == "superposition") {
    const SuperpositionSpec sp = superposition_of(c, s);
    if (c.averaged) {
      g = wigner_grid_single(sp.l1, c.z.samples(), c.k.samples(), sp.normalized, q);
      const PhaseSpaceGrid g2 = wigner_grid_single(sp.l2, c.z.samples(), c.k.samples(), sp.normalized, q);
      for (std::size_t i = 0; i < g.W.size(); ++i) g.W[i] = sp.p1 * g.W[i] + sp.p2 * g2.W[i];
    } else {
      g = wigner_grid_superposition(sp, s, time, c.z.samples(), c.k.samples(), q);
    }
  } else if (c.family == "double") {
    g = wigner_grid_double_mirror(mode_of(c, s, c.m), c.z.samples(), c.k.samples());
  } else {
    const Region2Expansion e = expansion_coefficients(mode_of(c, s, c.m), c.h, c.N, q);
    g = wigner_grid_region2(e, time, c.z.samples(), c.k.samples(), q);
  }
  const bool scaled = g.unit == AxisUnit::scaled;
  t.columns = {scaled ? "zeta" : "z_um", scaled ? "k" : "k_per_um", "W"};
  add_grid(t, g);
  return t;
}

Table run_evolve(const RunConfig& c, const ScaleSystem& s) {
  const QuadratureSpec& q = c.tolerances;
  if (c.quantity == "momentum") return run_region2_momentum(c, s);
  Table t;
  const Region2Expansion e = expansion_coefficients(mode_of(c, s, c.m), c.h, c.N, q);
  if (c.quantity == "coefficients") {
    t.columns = {"n", "D", "D_overlap"};
    for (std::size_t i = 0; i < e.levels.size(); ++i) {
      t.rows.push_back({static_cast<double>(e.levels[i].n), e.D[i],
                        overlap_coefficient(e.mode, e.h, e.levels[i], q)});
    }
    return t;
  }
  const auto ts = times_ms(c);
  if (c.quantity == "norm") {
    t.columns = {"t_ms", "norm"};
    sweep1(t, ts, [&](std::size_t i) { return std::vector<double>{region2_norm(e, ts[i] * kSecondsPerMs, q)}; });
    return t;
  }
  t.columns = {"z_um", "t_ms", "density", "Gc2", "Gs2"};
  const auto z = c.z.samples();
  std::vector<Coefficients> coeffs(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) coeffs[j] = propagated_coefficients(e, ts[j] * kSecondsPerMs);
  sweep(t, z, ts, [&](std::size_t i, std::size_t j) {
    const std::complex<double> psi = evaluate_coefficients(e.levels, s.z0, coeffs[j], z[i]);
    const double gc = psi.real(), gs = -psi.imag();
    return std::vector<double>{gc * gc + gs * gs, gc * gc, gs * gs};
  });
  return t;
}

Table run_mixture(const RunConfig& c, const ScaleSystem& s) {
  Table t;
  const QuadratureSpec& q = c.tolerances;
  const auto modes = solve_modes(s, c.L, 2);
  const Region2Expansion e1 = expansion_coefficients(modes[0], c.h, c.N, q);
  const Region2Expansion e2 = expansion_coefficients(modes[1], c.h, c.N, q);
  t.columns = {"z_um", "t_ms", "coherent", "incoherent", "incoherent_c", "incoherent_s"};
  const auto z = c.z.samples();
  const auto ts = times_ms(c);
  sweep(t, z, ts, [&](std::size_t i, std::size_t j) {
    const double time = ts[j] * kSecondsPerMs;
    const TrigParts a = region2_components(e1, z[i], time);
    const TrigParts b = region2_components(e2, z[i], time);
    const double inc_c = c.p1 * a.c * a.c + c.p2 * b.c * b.c;
    const double inc_s = c.p1 * a.s * a.s + c.p2 * b.s * b.s;
    return std::vector<double>{coherent_mixture_density(e1, e2, c.p1, c.p2, z[i], time),
                               incoherent_mixture_density(e1, e2, c.p1, c.p2, z[i], time), inc_c, inc_s};
  });
  return t;
}

Table run_yukawa(const RunConfig& c, const ScaleSystem& s) {
  Table t;
  const QuadratureSpec& q = c.tolerances;
  if (c.quantity == "levels") {
    t.columns = {"W0_peV", "n", "E_n_peV", "eps_n_peV"};
    const int count = c.w0_count;
    const auto lv = levels(s, c.n_max);
    const YukawaModel unit = make_yukawa_model(s, 1.0, c.delta, c.n_max, q);
    for (int i = 0; i < count; ++i) {
      const double w0 = count == 1 ? c.W0 : c.W0 * static_cast<double>(i) / static_cast<double>(count - 1);
      for (int n = 0; n < c.n_max; ++n) {
        t.rows.push_back({w0, static_cast<double>(n + 1), lv[static_cast<std::size_t>(n)].E_n,
                          lv[static_cast<std::size_t>(n)].E_n + w0 * unit.J(n, n)});
      }
    }
    return t;
  }
  if (c.quantity == "potential") {
    t.columns = {"z_um", "V_peV", "W_peV"};
    const auto z = c.z.samples();
    sweep1(t, z, [&](std::size_t i) {
      const double w = yukawa_potential(c.W0, c.delta, z[i]);
      return std::vector<double>{s.weight() * z[i] + w, w};
    });
    return t;
  }
  const Region2Expansion e = expansion_coefficients(mode_of(c, s, c.m), c.h, c.N, q);
  const PerturbedExpansion p = make_perturbed_expansion(e, make_yukawa_model(s, c.W0, c.delta, c.N, q));
  const auto ts = times_ms(c);
  if (c.quantity == "density") {
    t.columns = {"z_um", "t_ms", "density", "delta"};
    const auto z = c.z.samples();
    std::vector<Coefficients> cp(ts.size()), c0(ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
      cp[j] = perturbed_coefficients(p, ts[j] * kSecondsPerMs);
      c0[j] = propagated_coefficients(e, ts[j] * kSecondsPerMs);
    }
    sweep(t, z, ts, [&](std::size_t i, std::size_t j) {
      const double dp = std::norm(evaluate_coefficients(e.levels, s.z0, cp[j], z[i]));
      const double d0 = std::norm(evaluate_coefficients(e.levels, s.z0, c0[j], z[i]));
      return std::vector<double>{dp, dp - d0};
    });
    return t;
  }
  t.columns = {"k_per_um", "t_ms", "density", "delta"};
  const TransformTable table(e.levels, s.z0, c.k.samples(), q);
  sweep(t, table.k_axis(), ts, [&](std::size_t i, std::size_t j) {
    const double time = ts[j] * kSecondsPerMs;
    const double dp = perturbed_momentum_density(p, table, i, time);
    return std::vector<double>{dp, dp - momentum_density(e, table, i, time)};
  });
  return t;
}

}  // namespace

Table run(const RunConfig& c) {
  validate(c);
  const ScaleSystem s = scales_of(c);
  Table t;
  switch (c.command) {
    case Command::levels:
      t.columns = {"n", "a_n", "E_n_peV", "z_n_um"};
      for (const auto& lv : levels(s, c.n_max)) t.rows.push_back({static_cast<double>(lv.n), lv.a_n, lv.E_n, lv.z_n});
      break;
    case Command::modes:
      t.columns = {"m", "E_bar_peV", "z_bar_um", "a_m", "b_m", "N_m"};
      for (const auto& md : solve_modes(s, c.L, c.m_max)) {
        t.rows.push_back({static_cast<double>(md.m), md.E_bar, md.z_bar, md.a, md.b, md.N});
      }
      break;
    case Command::wavefunction: t = run_wavefunction(c, s); break;
    case Command::spectrum: t = run_spectrum(c, s); break;
    case Command::wigner: t = run_wigner(c, s); break;
    case Command::evolve: t = run_evolve(c, s); break;
    case Command::mixture: t = run_mixture(c, s); break;
    case Command::yukawa: t = run_yukawa(c, s); break;
  }
  add_scale_notes(t, s);
  return t;
}

std::string format_csv(const Table& table, const RunConfig& cfg) {
  std::string out;
  // "# " lines are the run config verbatim; "## " lines are version and derived values.
  out += "## qbounce version = ";
  out += kVersion;
  out += "\n";
  std::istringstream cfg_lines(emit_config(cfg));
  for (std::string line; std::getline(cfg_lines, line);) out += "# " + line + "\n";
  for (const auto& [k, v] : table.notes) out += "## " + k + " = " + v + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void export_table(const Table& table, const RunConfig& cfg, const std::string& path) {
  const std::string text = format_csv(table, cfg);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace qbounce
