#pragma once

// Command-line front end: parses scenario flags, calls the library and
// writes an output envelope as JSON or CSV. run() returns the exit status.

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qei/bounds.hpp"
#include "qei/error.hpp"
#include "qei/exact.hpp"
#include "qei/numerics.hpp"
#include "qei/report.hpp"

#ifndef QEI_VERSION
#define QEI_VERSION "1.0.0"
#endif

namespace qei::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kDomainError = 3,
  kUnwritable = 4,
  kNumericalFailure = 5,
};

inline constexpr const char* kToolVersion = QEI_VERSION;

// Thrown for malformed input that CLI11 itself accepts (QEI_TOL, --L).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnwritableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON has no infinities; they travel as strings.
inline json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline std::string csv_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

inline std::string csv_field(const json& v) {
  if (v.is_number()) return csv_number(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Tolerance map. QEI_TOL="series_rel=1e-10,oracle_grid=800" overrides
// individual entries.
inline numerics::Tolerances parse_tolerances(const char* env) {
  numerics::Tolerances tol;
  if (env == nullptr || *env == '\0') return tol;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("QEI_TOL entry without '=': " + item);
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    double x = 0;
    const auto r = std::from_chars(val.data(), val.data() + val.size(), x);
    if (r.ec != std::errc() || r.ptr != val.data() + val.size() || !(x > 0) || !std::isfinite(x)) {
      throw UsageError("QEI_TOL value for " + key + " must be a positive number: " + val);
    }
    if (key == "root_abs") tol.root_abs = x;
    else if (key == "series_rel") tol.series_rel = x;
    else if (key == "quadrature_rel") tol.quadrature_rel = x;
    else if (key == "oracle_grid") {
      if (x != std::floor(x) || x < 8) throw UsageError("QEI_TOL oracle_grid must be an integer >= 8");
      tol.oracle_grid = static_cast<int>(x);
    } else {
      throw UsageError("unknown QEI_TOL key: " + key);
    }
  }
  return tol;
}

inline json tolerances_json(const numerics::Tolerances& t) {
  return json{{"root_abs", t.root_abs},
              {"series_rel", t.series_rel},
              {"quadrature_rel", t.quadrature_rel},
              {"oracle_grid", t.oracle_grid}};
}

struct Envelope {
  std::string command;
  json params;
  json results;
  numerics::Tolerances tolerances;

  json to_json() const {
    return json{{"command", command},
                {"params", params},
                {"results", results},
                {"tool_version", kToolVersion},
                {"tolerances", tolerances_json(tolerances)}};
  }
};

inline std::string to_csv(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

inline std::string figure_csv(const report::FigureData& f) {
  std::vector<std::string> header{f.grid_name};
  for (const auto& [name, c] : f.columns) header.push_back(name);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    std::vector<std::string> r{csv_number(f.grid[i])};
    for (const auto& [name, c] : f.columns) r.push_back(csv_number(c[i]));
    rows.push_back(std::move(r));
  }
  return to_csv(header, rows);
}

inline json figure_json(const report::FigureData& f) {
  json cols = json::object();
  for (const auto& [name, c] : f.columns) {
    json arr = json::array();
    for (double x : c) arr.push_back(number(x));
    cols[name] = std::move(arr);
  }
  json grid = json::array();
  for (double x : f.grid) grid.push_back(number(x));
  return json{{"id", f.id}, {"grid_name", f.grid_name}, {"grid", grid}, {"columns", cols}};
}

// Results payload as flat key/value rows for CSV.
inline std::string key_value_csv(const json& results) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [k, v] : results.items()) {
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) rows.push_back({k + "_" + std::to_string(i), csv_field(v[i])});
    } else {
      rows.push_back({k, csv_field(v)});
    }
  }
  return to_csv({"quantity", "value"}, rows);
}

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UnwritableError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw UnwritableError("failed writing " + path);
}

namespace detail {

struct ScenarioCommand {
  CLI::App* app;
  std::function<std::pair<bounds::Scenario, json>()> build;
};

inline std::vector<ScenarioCommand> add_scenarios(CLI::App* parent) {
  std::vector<ScenarioCommand> cmds;
  auto sub = [&](const char* name, const char* help) {
    auto* a = parent->add_subcommand(name, help);
    a->fallthrough();
    return a;
  };

  {
    auto v = std::make_shared<bounds::MinkowskiInertial>();
    auto* a = sub("inertial", "inertial worldline in Minkowski space");
    a->add_option("--d", v->d, "spacetime dimension (2 or 4)")->capture_default_str();
    a->add_option("--tau0", v->tau0, "sampling duration")->capture_default_str();
    cmds.push_back({a, [v] { return std::pair{bounds::Scenario{*v}, json{{"d", v->d}, {"tau0", number(v->tau0)}}}; }});
  }
  {
    auto v = std::make_shared<bounds::MinkowskiNull>();
    auto* a = sub("null", "null-contracted bound, four dimensions");
    a->add_option("--tau0", v->tau0, "sampling duration")->capture_default_str();
    a->add_option("--uk", v->uk, "u.k")->capture_default_str();
    cmds.push_back({a, [v] {
                      return std::pair{bounds::Scenario{*v}, json{{"tau0", number(v->tau0)}, {"uk", number(v->uk)}}};
                    }});
  }
  {
    auto v = std::make_shared<bounds::UniformAccel>();
    auto* a = sub("accel", "uniformly accelerated worldline");
    a->add_option("--alpha", v->alpha, "proper acceleration")->capture_default_str();
    a->add_option("--tau0", v->tau0, "sampling duration (inf for the averaged bound)")->capture_default_str();
    cmds.push_back({a, [v] {
                      return std::pair{bounds::Scenario{*v},
                                       json{{"alpha", number(v->alpha)}, {"tau0", number(v->tau0)}}};
                    }});
  }
  {
    auto v = std::make_shared<bounds::Conformal2D>();
    auto* a = sub("conformal2d", "two-dimensional conformal field, constant potential");
    a->add_option("--S", v->S, "potential")->capture_default_str();
    a->add_option("--tau0", v->tau0, "sampling duration")->capture_default_str();
    cmds.push_back({a, [v] {
                      return std::pair{bounds::Scenario{*v}, json{{"S", number(v->S)}, {"tau0", number(v->tau0)}}};
                    }});
  }
  {
    auto v = std::make_shared<bounds::LinearAccel2D>();
    auto* a = sub("linear-accel", "two-dimensional worldline with linearly growing acceleration");
    a->add_option("--p", v->p, "rate")->capture_default_str();
    cmds.push_back({a, [v] { return std::pair{bounds::Scenario{*v}, json{{"p", number(v->p)}}}; }});
  }
  {
    auto v = std::make_shared<bounds::Cylinder>();
    auto* a = sub("cylinder", "two-dimensional cylinder, ground or thermal state");
    a->add_option("--L", v->L, "circumference")->capture_default_str();
    a->add_option("--beta", v->beta, "inverse temperature (inf for the ground state)")->capture_default_str();
    cmds.push_back({a, [v] {
                      return std::pair{bounds::Scenario{*v}, json{{"L", number(v->L)}, {"beta", number(v->beta)}}};
                    }});
  }
  {
    auto j = std::make_shared<int>(1);
    auto lengths = std::make_shared<std::vector<double>>(std::vector<double>{1.0});
    auto* a = sub("torus", "flat four-dimensional spacetime with j compact directions");
    a->add_option("--j", *j, "number of compact directions (1..3)")->capture_default_str();
    a->add_option("--L", *lengths, "periods, ascending; one value is used for all")->delimiter(',');
    cmds.push_back({a, [j, lengths] {
                      std::vector<double> len = *lengths;
                      if (len.size() == 1 && *j > 1) len.assign(*j, len.front());
                      json arr = json::array();
                      for (double x : len) arr.push_back(number(x));
                      return std::pair{bounds::Scenario{bounds::Torus{*j, len}}, json{{"j", *j}, {"L", arr}}};
                    }});
  }
  {
    auto v = std::make_shared<bounds::Misner>();
    auto t = std::make_shared<double>(1.0);
    auto* a = sub("misner", "Misner vacuum");
    a->add_option("--a", v->a, "closure scale")->capture_default_str();
    auto* topt = a->add_option("--t", *t, "Misner time")->capture_default_str();
    cmds.push_back({a, [v, t, topt] {
                      bounds::Misner m = *v;
                      if (topt->count() > 0) m.t = *t;
                      json p{{"a", number(m.a)}, {"t", number(bounds::misner_time(m))}};
                      return std::pair{bounds::Scenario{m}, p};
                    }});
  }
  {
    auto v = std::make_shared<bounds::Rindler>();
    auto* a = sub("rindler", "static worldline in the Rindler vacuum");
    a->add_option("--xi", v->xi, "inverse proper acceleration")->capture_default_str();
    a->add_option("--zeta", v->zeta, "curvature coupling")->capture_default_str();
    cmds.push_back({a, [v] {
                      return std::pair{bounds::Scenario{*v}, json{{"xi", number(v->xi)}, {"zeta", number(v->zeta)}}};
                    }});
  }
  {
    auto v = std::make_shared<bounds::StaticBall>();
    auto* a = sub("static-ball", "static worldline inside a ball of radius r");
    a->add_option("--d", v->d, "spacetime dimension (2 or 4)")->capture_default_str();
    a->add_option("--r", v->r, "distance to the boundary")->capture_default_str();
    cmds.push_back({a, [v] {
                      return std::pair{bounds::Scenario{*v}, json{{"d", v->d}, {"r", number(v->r)}}};
                    }});
  }
  parent->require_subcommand(1);
  return cmds;
}

inline const ScenarioCommand& chosen(const std::vector<ScenarioCommand>& cmds) {
  for (const auto& c : cmds) {
    if (c.app->parsed()) return c;
  }
  throw UsageError("no scenario given");
}

inline json bound_results(const bounds::Scenario& s) {
  json arr = json::array();
  for (const auto& b : bounds::bounds_for(s)) {
    arr.push_back(json{{"direction", std::string(bounds::to_string(b.direction))},
                       {"value", number(b.value)},
                       {"provenance", b.provenance}});
  }
  return json{{"scenario", std::string(bounds::scenario_name(s))}, {"bounds", arr}};
}

inline std::string bound_csv(const json& results) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : results["bounds"]) {
    rows.push_back({b["direction"].get<std::string>(), csv_field(b["value"]), b["provenance"].get<std::string>()});
  }
  return to_csv({"direction", "value", "provenance"}, rows);
}

inline json tensor_json(const exact::StressTensorDiag& t) {
  json c = json::array();
  for (double x : t.components) c.push_back(number(x));
  return json{{"components", c}, {"frame", t.frame}};
}

inline json exact_results(const bounds::Scenario& s, const numerics::Tolerances& tol) {
  bounds::validate(s);
  json r{{"scenario", std::string(bounds::scenario_name(s))}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bounds::Cylinder>) {
          const auto d = exact::cylinder_thermal_density(v.L, v.beta, tol.series_rel);
          r["energy_density"] = number(d.value);
          r["tail_bound"] = number(d.tail_bound);
          r["n_terms"] = d.n_terms;
        } else if constexpr (std::is_same_v<T, bounds::Torus>) {
          const auto t = exact::torus_stress(v.j, v.lengths);
          r["energy_density"] = number(t.tensor.energy_density());
          r.update(tensor_json(t.tensor));
          r["tail_bound"] = number(t.tail_bound);
          r["lattice_points"] = t.lattice_points;
        } else if constexpr (std::is_same_v<T, bounds::Misner>) {
          const double time = bounds::misner_time(v);
          const auto m = exact::misner_density(v.a, time, 0.0, tol.series_rel);
          r["energy_density"] = number(m.tensor.energy_density());
          r.update(tensor_json(m.tensor));
          r["K"] = number(m.K.value);
          r["tail_bound"] = number(m.K.tail_bound / (16.0 * std::numbers::pi * std::numbers::pi * std::pow(time, 4)));
          r["n_terms"] = m.K.n_terms;
        } else if constexpr (std::is_same_v<T, bounds::Rindler>) {
          r["energy_density"] = number(exact::rindler_density(v.xi, v.zeta));
        } else {
          qei::detail::fail(ErrorKind::UnsupportedScenario,
                            "no exact value for scenario " + std::string(bounds::scenario_name(s)));
        }
      },
      s);
  return r;
}

inline json check_results(const report::ConsistencyReport& c) {
  auto opt = [](const auto& o) -> json {
    if (!o) return nullptr;
    if constexpr (std::is_same_v<std::decay_t<decltype(*o)>, bool>) return *o;
    else return number(*o);
  };
  return json{{"scenario", std::string(bounds::scenario_name(c.scenario))},
              {"exact", number(c.exact)},
              {"lower", number(c.lower)},
              {"upper", opt(c.upper)},
              {"lower_satisfied", c.lower_satisfied},
              {"upper_satisfied", opt(c.upper_satisfied)},
              {"margin_lower", number(c.margin_lower)},
              {"saturation", c.saturation}};
}

struct FigureCommand {
  CLI::App* app;
  std::string id;
};

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const char* tol_env = nullptr) {
  CLI::App app{"Quantum energy inequality bounds, exact reference densities and consistency checks", "qei"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string format;
  std::string out_path;
  auto add_io = [&](CLI::App* a, const char* default_format) {
    a->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->default_str(default_format);
    a->add_option("--out", out_path, "output file (standard output when omitted)");
  };

  auto* bound = app.add_subcommand("bound", "QEI lower (and upper) bounds for a scenario");
  auto* exact = app.add_subcommand("exact", "exact reference energy density and stress tensor");
  auto* check = app.add_subcommand("check", "compare the exact value with its QEI band");
  auto* figure = app.add_subcommand("figure", "data behind the eigenvalue, thermal band and Misner plots");
  add_io(bound, "json");
  add_io(exact, "json");
  add_io(check, "json");
  add_io(figure, "csv");
  const auto bound_cmds = detail::add_scenarios(bound);
  const auto exact_cmds = detail::add_scenarios(exact);
  const auto check_cmds = detail::add_scenarios(check);

  int k = 3;
  std::vector<double> grid;
  std::optional<double> gmin, gmax;
  int points = 60;
  std::vector<detail::FigureCommand> figs;
  for (auto [name, id, help] : {std::tuple{"accn-evals", "accn_evals", "lowest accelerated eigenvalue branches over chi"},
                                std::tuple{"thermal-band", "thermal_band", "cylinder band and thermal density over beta/L"},
                                std::tuple{"misner", "misner", "K(a) and -lambda(a)"}}) {
    auto* f = figure->add_subcommand(name, help);
    f->fallthrough();
    f->add_option("--grid", grid, "explicit grid values")->delimiter(',');
    f->add_option("--min", gmin, "grid start");
    f->add_option("--max", gmax, "grid end");
    f->add_option("--points", points, "grid size")->capture_default_str();
    if (std::string(id) == "accn_evals") f->add_option("--k", k, "number of branches (1..5)")->capture_default_str();
    figs.push_back({f, id});
  }
  figure->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    const numerics::Tolerances tol = parse_tolerances(tol_env);
    if (format.empty()) format = figure->parsed() ? "csv" : "json";
    Envelope env;
    env.tolerances = tol;
    std::string csv;
    int status = kOk;

    if (bound->parsed() || exact->parsed() || check->parsed()) {
      CLI::App* top = bound->parsed() ? bound : exact->parsed() ? exact : check;
      const auto& cmds = bound->parsed() ? bound_cmds : exact->parsed() ? exact_cmds : check_cmds;
      const auto& cmd = detail::chosen(cmds);
      auto [scenario, params] = cmd.build();
      env.command = top->get_name() + " " + cmd.app->get_name();
      env.params = params;
      if (top == bound) {
        env.results = detail::bound_results(scenario);
        csv = detail::bound_csv(env.results);
      } else if (top == exact) {
        env.results = detail::exact_results(scenario, tol);
        csv = key_value_csv(env.results);
      } else {
        const auto rep = report::check(scenario);
        env.results = detail::check_results(rep);
        csv = key_value_csv(env.results);
        if (!rep.lower_satisfied) status = kCheckFailed;
      }
    } else {
      const detail::FigureCommand* fc = nullptr;
      for (const auto& f : figs) {
        if (f.app->parsed()) fc = &f;
      }
      if (fc == nullptr) throw UsageError("no figure given");
      if (grid.empty()) {
        if (points < 1) qei::detail::fail(ErrorKind::DomainError, "--points must be positive");
        if (fc->id == "accn_evals") {
          grid = report::logspace(gmin.value_or(0.1), gmax.value_or(100.0), points);
        } else {
          grid = report::linspace(gmin.value_or(0.2), gmax.value_or(5.0), points);
        }
      }
      report::FigureData data = fc->id == "accn_evals"     ? report::figure_accn_evals(grid, k)
                                : fc->id == "thermal_band" ? report::figure_thermal_band(grid)
                                                           : report::figure_misner(grid);
      env.command = "figure " + fc->app->get_name();
      json p{{"points", grid.size()}};
      if (fc->id == "accn_evals") p["k"] = k;
      env.params = p;
      env.results = figure_json(data);
      csv = figure_csv(data);
    }

    const std::string text = format == "csv" ? csv : env.to_json().dump(2) + "\n";
    write_output(text, out_path, out);
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const UnwritableError& e) {
    err << "error: " << e.what() << "\n";
    return kUnwritable;
  } catch (const qei::Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_domain() ? kDomainError : kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace qei::cli
