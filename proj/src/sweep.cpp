#include "gtn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace gtn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::array<std::string_view, 6> kVariableNames{"T", "r", "p", "f", "alpha", "omega"};
const std::array<std::string_view, 3> kSourceNames{"pipeline", "closed", "both"};

double parse_double(std::string_view text) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw DomainError("not a number: '" + s + "'");
  return v;
}

std::string describe(const ModelParams& mp) {
  std::ostringstream os;
  os << "T=" << mp.temperature << " alpha=" << mp.alpha << " omega=" << mp.omega
     << " r=" << mp.r << " p=" << mp.p << " f=" << mp.filter.csv_value();
  return os.str();
}

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(Variable v) { return kVariableNames[static_cast<std::size_t>(v)]; }

Variable parse_variable(std::string_view text) {
  for (std::size_t k = 0; k < kVariableNames.size(); ++k) {
    if (kVariableNames[k] == text) return static_cast<Variable>(k);
  }
  throw DomainError("unknown sweep variable '" + std::string(text) + "'");
}

std::string_view to_string(Source s) { return kSourceNames[static_cast<std::size_t>(s)]; }

Source parse_source(std::string_view text) {
  for (std::size_t k = 0; k < kSourceNames.size(); ++k) {
    if (kSourceNames[k] == text) return static_cast<Source>(k);
  }
  throw DomainError("unknown source '" + std::string(text) + "' (pipeline|closed|both)");
}

Range Range::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw DomainError("range must look like start:stop:step, got '" + std::string(text) + "'");
  }
  Range r{parse_double(text.substr(0, first)),
          parse_double(text.substr(first + 1, second - first - 1)),
          parse_double(text.substr(second + 1))};
  r.validate();
  return r;
}

void Range::validate() const {
  if (!(start < stop)) throw DomainError("range needs start < stop");
  if (!(step > 0.0)) throw DomainError("range needs step > 0");
}

std::vector<double> Range::points() const {
  validate();
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

void SweepSpec::validate() const {
  range.validate();
  if (subsystems.empty()) throw DomainError("sweep needs at least one subsystem");
  if (!want_s && !want_c) throw DomainError("sweep needs at least one measure");
  if (series && series->variable == variable) {
    throw DomainError("series variable must differ from the swept variable");
  }
  fixed.validate();
}

ModelParams with_value(ModelParams mp, Variable v, double value) {
  switch (v) {
    case Variable::T: mp.temperature = value; break;
    case Variable::r: mp.r = value; break;
    case Variable::p: mp.p = value; break;
    case Variable::f: mp.filter = FilterParams::from_csv(value); break;
    case Variable::alpha: mp.alpha = value; break;
    case Variable::omega: mp.omega = value; break;
  }
  return mp;
}

ResultRow evaluate_point(const ModelParams& mp, Subsystem sub, Source source, bool want_s,
                         bool want_c, const BruteforceOptions& opts) {
  ResultRow row;
  row.params = mp;
  row.subsystem = sub;

  std::optional<DensityMatrix> state;
  try {
    if (source != Source::ClosedForm) {
      const Evolved ev = evolve_model(mp);
      row.Z = ev.z;
      state = reduce(ev.rho, sub);
    }
    if (source != Source::Pipeline) {
      auto tabulated = closed_form(sub, mp);
      if (source == Source::Both) {
        const double dev = (tabulated.entries() - state->entries()).cwiseAbs().maxCoeff();
        if (dev > kRouteAgreement) {
          row.S = row.C = kNaN;
          row.error = "closed form deviates from pipeline by " + fmt12(dev);
          return row;
        }
      } else {
        row.Z = mp.filter.active() ? closed_form_normalization(sub, mp) : 1.0;
        state = std::move(tabulated);
      }
    }
  } catch (const FilterAnnihilation& e) {
    throw FilterAnnihilation(e.z, describe(mp));
  }

  const MeasureResult m = measure(*state, opts, want_s, want_c);
  row.S = want_s ? m.S : kNaN;
  row.C = want_c ? m.C : kNaN;
  return row;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const std::vector<double> grid = spec.range.points();
  std::vector<ModelParams> lines;
  if (spec.series) {
    for (double v : spec.series->values) {
      lines.push_back(with_value(spec.fixed, spec.series->variable, v));
    }
  } else {
    lines.push_back(spec.fixed);
  }

  struct Task {
    ModelParams params;
    Subsystem sub;
  };
  std::vector<Task> tasks;
  for (const auto& line : lines) {
    for (double x : grid) {
      const ModelParams mp = with_value(line, spec.variable, x);
      mp.validate();
      for (Subsystem sub : spec.subsystems) tasks.push_back({mp, sub});
    }
  }

  std::vector<ResultRow> rows(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    rows[i] = evaluate_point(tasks[i].params, tasks[i].sub, spec.source, spec.want_s,
                             spec.want_c, spec.optimizer);
  });
  return rows;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& mp = row.params;
    out << fmt12(mp.temperature) << ',' << fmt12(mp.alpha) << ',' << fmt12(mp.omega) << ','
        << fmt12(mp.r) << ',' << fmt12(mp.p) << ',' << fmt12(mp.filter.csv_value()) << ','
        << to_string(row.subsystem) << ',' << fmt12(row.S) << ',' << fmt12(row.C) << ','
        << fmt12(row.Z) << '\n';
  }
}

std::string format_csv(std::span<const ResultRow> rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

Crossing find_critical_T(const ModelParams& fixed, Subsystem sub, double t_lo, double t_hi,
                         double target, Source source, const BruteforceOptions& opts) {
  if (!(t_lo >= 0.0 && t_lo < t_hi)) throw DomainError("critical-T bracket needs 0 <= lo < hi");
  auto gap = [&](double t) {
    return evaluate_point(with_value(fixed, Variable::T, t), sub, source, true, false, opts).S -
           target;
  };
  double lo = t_lo, hi = t_hi;
  double g_lo = gap(lo), g_hi = gap(hi);
  if (g_lo <= 0.0 && g_hi <= 0.0) throw NoCrossing(true, g_lo + target, g_hi + target);
  if (g_lo > 0.0 && g_hi > 0.0) throw NoCrossing(false, g_lo + target, g_hi + target);

  Crossing out;
  double mid = 0.5 * (lo + hi), g_mid = gap(mid);
  for (out.iterations = 1; out.iterations < 200 && std::abs(g_mid) > 1e-8; ++out.iterations) {
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    g_mid = gap(mid);
  }
  out.value = mid;
  out.measure = g_mid + target;
  return out;
}

Crossing find_sudden_death_C(const ModelParams& fixed, Subsystem sub, Variable variable,
                             double lo, double hi, Source source) {
  if (variable != Variable::T && variable != Variable::r) {
    throw DomainError("sudden-death search runs over T or r");
  }
  if (!(lo < hi)) throw DomainError("sudden-death bracket needs lo < hi");
  auto conc = [&](double v) {
    return evaluate_point(with_value(fixed, variable, v), sub, source, false, true).C;
  };
  const double c_lo = conc(lo), c_hi = conc(hi);
  const bool alive_lo = c_lo > 0.0, alive_hi = c_hi > 0.0;
  if (alive_lo && alive_hi) throw NoCrossing(false, c_lo, c_hi);
  if (!alive_lo && !alive_hi) throw NoCrossing(true, c_lo, c_hi);

  double alive = alive_lo ? lo : hi;
  double dead = alive_lo ? hi : lo;
  Crossing out;
  while (std::abs(dead - alive) > 1e-8 * std::max(1.0, std::abs(alive)) && out.iterations < 200) {
    const double mid = 0.5 * (alive + dead);
    (conc(mid) > 0.0 ? alive : dead) = mid;
    ++out.iterations;
  }
  out.value = 0.5 * (alive + dead);
  out.measure = conc(alive);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PresetDef {
  Subsystem sub;
  bool want_s;
  double r;
  double p;
  Series series;
};

const std::map<std::string, PresetDef, std::less<>>& presets() {
  const Series rs{Variable::r, {0.0, 0.4, 0.7}};
  auto filt = [](double f) { return Series{Variable::f, {-1.0, f}}; };
  static const std::map<std::string, PresetDef, std::less<>> table{
      {"fig2a", {Subsystem::AB1C1, true, 0.0, 1.0, rs}},
      {"fig2b", {Subsystem::AB1C1, false, 0.0, 1.0, rs}},
      {"fig2c", {Subsystem::AB1C1, false, 0.0, 0.8, rs}},
      {"fig3a", {Subsystem::AB1C1, true, 0.4, 1.0, filt(0.7)}},
      {"fig3b", {Subsystem::AB1C1, true, 0.7, 1.0, filt(0.85)}},
      {"fig3c", {Subsystem::AB1C1, false, 0.7, 1.0, filt(0.7)}},
      {"fig3d", {Subsystem::AB1C1, false, 0.7, 0.8, filt(0.75)}},
      {"fig4a", {Subsystem::AB1B2, true, 0.0, 1.0, rs}},
      {"fig4b", {Subsystem::AB1B2, false, 0.0, 1.0, rs}},
      {"fig5a", {Subsystem::AB1B2, true, 0.7, 1.0, filt(0.8)}},
      {"fig5b", {Subsystem::AB1B2, false, 0.7, 1.0, filt(0.8)}},
      {"fig6a", {Subsystem::AB2C2, true, 0.0, 1.0, rs}},
      {"fig6b", {Subsystem::AB2C2, false, 0.0, 1.0, rs}},
      {"fig7a", {Subsystem::AB2C2, true, 0.4, 1.0, filt(0.9)}},
      {"fig7b", {Subsystem::AB2C2, false, 0.7, 1.0, filt(0.8)}},
      {"fig8a", {Subsystem::AB1C2, true, 0.0, 1.0, rs}},
      {"fig8b", {Subsystem::AB1C2, false, 0.0, 1.0, rs}},
      {"fig9a", {Subsystem::AB1C2, true, 0.4, 1.0, filt(0.9)}},
      {"fig9b", {Subsystem::AB1C2, false, 0.7, 1.0, filt(0.8)}},
  };
  return table;
}

}  // namespace

SweepSpec figure_preset(std::string_view name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) throw UnknownPreset("unknown figure preset '" + std::string(name) + "'");
  const PresetDef& def = it->second;
  SweepSpec spec;
  spec.name = it->first;
  spec.variable = Variable::T;
  spec.range = Range{0.0, 3.0, 0.01};
  spec.fixed.alpha = std::sqrt(2.0) / 2.0;
  spec.fixed.omega = 1.0;
  spec.fixed.r = def.r;
  spec.fixed.p = def.p;
  spec.fixed.filter = FilterParams::none();
  spec.series = def.series;
  spec.subsystems = {def.sub};
  spec.want_s = def.want_s;
  spec.want_c = !def.want_s;
  return spec;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, def] : presets()) out.push_back(name);
  return out;
}

}  // namespace gtn
