// gtn: command-line front end for the tripartite nonlocality model.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gtn/errors.hpp"
#include "gtn/measures.hpp"
#include "gtn/reduced.hpp"
#include "gtn/spacetime.hpp"
#include "gtn/sweep.hpp"
#include "gtn/verify.hpp"

namespace {

struct Globals {
  double alpha = std::sqrt(2.0) / 2.0;
  double omega = 1.0;
  std::optional<double> temperature;
  std::optional<double> mass;
  double r = 0.0;
  double p = 1.0;
  std::string filter = "none";
  std::vector<std::string> subsystems{"AB1C1"};
  std::string range = "0:3:0.01";
  std::string source = "pipeline";
  std::uint64_t seed = gtn::BruteforceOptions{}.seed;
  int restarts = gtn::BruteforceOptions{}.restarts;
  std::string out;
};

gtn::FilterParams parse_filter(const std::string& text) {
  if (text == "none") return gtn::FilterParams::none();
  std::size_t used = 0;
  double f = 0.0;
  try {
    f = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw gtn::DomainError("--f expects a number in (0,1) or 'none', got '" + text + "'");
  }
  return gtn::FilterParams::strength(f);
}

gtn::ModelParams model_params(const Globals& g) {
  gtn::ModelParams mp;
  mp.alpha = g.alpha;
  mp.omega = g.omega;
  if (g.mass) {
    mp.temperature = gtn::hawking_temperature(*g.mass);
  } else {
    mp.temperature = g.temperature.value_or(0.0);
  }
  mp.r = g.r;
  mp.p = g.p;
  mp.filter = parse_filter(g.filter);
  mp.validate();
  return mp;
}

gtn::BruteforceOptions optimizer(const Globals& g) {
  gtn::BruteforceOptions o;
  o.seed = g.seed;
  o.restarts = g.restarts;
  return o;
}

std::vector<gtn::Subsystem> subsystems(const Globals& g) {
  std::vector<gtn::Subsystem> out;
  for (const auto& s : g.subsystems) out.push_back(gtn::parse_subsystem(s));
  return out;
}

// Runs `body` with the CSV destination chosen by --out.
template <class F>
void with_output(const Globals& g, F&& body) {
  if (g.out.empty() || g.out == "-") {
    body(std::cout);
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw gtn::Error("cannot open '" + g.out + "' for writing");
  body(file);
}

void print_matrix(std::ostream& os, const gtn::DensityMatrix& rho) {
  os << std::setprecision(12);
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      const auto v = rho(i, j);
      if (j) os << ' ';
      os << v.real();
      if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << 'i';
    }
    os << '\n';
  }
}

int run_state(const Globals& g) {
  const auto mp = model_params(g);
  const auto source = gtn::parse_source(g.source);
  for (auto sub : subsystems(g)) {
    std::cout << "# " << gtn::to_string(sub) << '\n';
    if (source != gtn::Source::ClosedForm) {
      if (source == gtn::Source::Both) std::cout << "# pipeline\n";
      print_matrix(std::cout, gtn::reduce(gtn::evolve_model(mp).rho, sub));
    }
    if (source != gtn::Source::Pipeline) {
      if (source == gtn::Source::Both) std::cout << "# closed form\n";
      print_matrix(std::cout, gtn::closed_form(sub, mp));
    }
  }
  return 0;
}

int run_measure(const Globals& g) {
  const auto mp = model_params(g);
  const auto source = gtn::parse_source(g.source);
  std::vector<gtn::ResultRow> rows;
  for (auto sub : subsystems(g)) {
    rows.push_back(gtn::evaluate_point(mp, sub, source, true, true, optimizer(g)));
  }
  with_output(g, [&](std::ostream& os) { gtn::write_csv(os, rows); });
  return 0;
}

int report_errors(const std::vector<gtn::ResultRow>& rows) {
  int bad = 0;
  for (const auto& row : rows) {
    if (row.error.empty()) continue;
    ++bad;
    std::cerr << "warning: " << gtn::to_string(row.subsystem) << " T=" << row.params.temperature
              << ": " << row.error << '\n';
  }
  return bad;
}

struct SweepArgs {
  std::string variable = "T";
  std::string measure = "both";
  std::string series_variable;
  std::vector<std::string> series_values;
};

int run_sweep_cmd(const Globals& g, const SweepArgs& a) {
  gtn::SweepSpec spec;
  spec.variable = gtn::parse_variable(a.variable);
  spec.range = gtn::Range::parse(g.range);
  spec.fixed = model_params(g);
  spec.subsystems = subsystems(g);
  spec.want_s = a.measure != "C";
  spec.want_c = a.measure != "S";
  spec.source = gtn::parse_source(g.source);
  spec.optimizer = optimizer(g);
  if (!a.series_variable.empty()) {
    gtn::Series series{gtn::parse_variable(a.series_variable), {}};
    for (const auto& v : a.series_values) {
      series.values.push_back(series.variable == gtn::Variable::f && v == "none"
                                  ? -1.0
                                  : std::stod(v));
    }
    spec.series = series;
  }
  const auto rows = gtn::run_sweep(spec);
  report_errors(rows);
  with_output(g, [&](std::ostream& os) { gtn::write_csv(os, rows); });
  return 0;
}

struct CriticalArgs {
  std::string kind = "gtn";
  std::string variable = "T";
  double lo = 0.0;
  std::optional<double> hi;  // 3 for T, 1 for r
};

int run_critical(const Globals& g, const CriticalArgs& a) {
  const auto mp = model_params(g);
  const auto source = gtn::parse_source(g.source);
  std::cout << std::setprecision(12);
  for (auto sub : subsystems(g)) {
    std::cout << gtn::to_string(sub) << ": ";
    try {
      gtn::Crossing c;
      if (a.kind == "gtn") {
        c = gtn::find_critical_T(mp, sub, a.lo, a.hi.value_or(3.0), gtn::kSvetlichnyLocalBound, source,
                                 optimizer(g));
        std::cout << "T_c=" << c.value << " S=" << c.measure;
      } else {
        const auto var = gtn::parse_variable(a.variable);
        const double hi = a.hi.value_or(var == gtn::Variable::r ? 1.0 : 3.0);
        c = gtn::find_sudden_death_C(mp, sub, var, a.lo, hi, source);
        std::cout << a.variable << "_c=" << c.value;
      }
      std::cout << " iterations=" << c.iterations << '\n';
    } catch (const gtn::NoCrossing& e) {
      std::cout << (e.below_target ? "already absent" : "never dies") << '\n';
    }
  }
  return 0;
}

int run_verify(const Globals& g) {
  bool ok = true;
  for (const auto& check : gtn::run_verify_suite(optimizer(g))) {
    std::printf("%s  %-24s worst=%.3e tol=%.0e  %.2fs  %s\n", check.passed ? "PASS" : "FAIL",
                check.name.c_str(), check.worst, check.tolerance, check.seconds,
                check.detail.c_str());
    ok = ok && check.passed;
  }
  return ok ? 0 : 1;
}

int run_preset(const Globals& g, const std::string& name) {
  if (name == "list") {
    for (const auto& n : gtn::preset_names()) std::cout << n << '\n';
    return 0;
  }
  auto spec = gtn::figure_preset(name);
  spec.optimizer = optimizer(g);
  spec.source = gtn::parse_source(g.source);
  const auto rows = gtn::run_sweep(spec);
  report_errors(rows);
  with_output(g, [&](std::ostream& os) { gtn::write_csv(os, rows); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genuine tripartite nonlocality and entanglement of Dirac fields near a black hole"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  Globals g;
  app.add_option("--alpha", g.alpha, "initial-state amplitude");
  app.add_option("--omega", g.omega, "mode frequency");
  auto* t_opt = app.add_option("--T", g.temperature, "Hawking temperature");
  auto* m_opt = app.add_option("--mass", g.mass, "black-hole mass, T = 1/(8 pi M)");
  t_opt->excludes(m_opt);
  app.add_option("--r", g.r, "damping strength");
  app.add_option("--p", g.p, "bath ground-state weight");
  app.add_option("--f", g.filter, "filter strength in (0,1) or 'none'");
  app.add_option("--subsystem", g.subsystems, "AB1C1 AB1B2 AC1C2 AB2C2 AB1C2 AB2C1")
      ->delimiter(',');
  app.add_option("--range", g.range, "start:stop:step");
  app.add_option("--source", g.source, "pipeline|closed|both");
  app.add_option("--seed", g.seed, "optimizer seed");
  app.add_option("--restarts", g.restarts, "optimizer restarts");
  app.add_option("--out", g.out, "CSV output path (default stdout)");

  auto* state = app.add_subcommand("state", "print reduced density matrices")->fallthrough();
  auto* meas = app.add_subcommand("measure", "S and C at one parameter tuple")->fallthrough();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "sweep one parameter and write CSV")->fallthrough();
  sweep->add_option("--var", sweep_args.variable, "T|r|p|f|alpha|omega");
  sweep->add_option("--measure", sweep_args.measure, "S|C|both");
  sweep->add_option("--series", sweep_args.series_variable, "second variable, one curve each");
  sweep->add_option("--values", sweep_args.series_values, "series values (f accepts none)")
      ->delimiter(',');

  CriticalArgs crit_args;
  auto* crit = app.add_subcommand("critical", "critical temperature or death point")->fallthrough();
  crit->add_option("--kind", crit_args.kind, "gtn (S = 4 in T) | gte (C = 0)")
      ->check(CLI::IsMember({"gtn", "gte"}));
  crit->add_option("--var", crit_args.variable, "T|r (gte only)");
  crit->add_option("--lo", crit_args.lo, "bracket start");
  crit->add_option("--hi", crit_args.hi, "bracket end");

  auto* verify = app.add_subcommand("verify", "closed forms and oracles self-check")->fallthrough();

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "run a figure recipe")->fallthrough();
  preset->add_option("name", preset_name, "fig2a..fig9b, or 'list'")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*state) return run_state(g);
    if (*meas) return run_measure(g);
    if (*sweep) return run_sweep_cmd(g, sweep_args);
    if (*crit) return run_critical(g, crit_args);
    if (*verify) return run_verify(g);
    if (*preset) return run_preset(g, preset_name);
  } catch (const gtn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
