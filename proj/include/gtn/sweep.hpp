#pragma once

// Parameter sweeps, critical-point root finders and figure recipes.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gtn/measures.hpp"
#include "gtn/reduced.hpp"

namespace gtn {

enum class Variable { T, r, p, f, alpha, omega };
std::string_view to_string(Variable v);
Variable parse_variable(std::string_view text);

enum class Source { Pipeline, ClosedForm, Both };
std::string_view to_string(Source s);
Source parse_source(std::string_view text);

/// "T -> infinity" is evaluated at this multiple of omega.
inline constexpr double kInfiniteTemperature = 1e6;
/// Max entrywise disagreement tolerated between the two routes.
inline constexpr double kRouteAgreement = 1e-9;

struct Range {
  double start = 0.0;
  double stop = 3.0;
  double step = 0.01;

  /// Parses "start:stop:step".
  static Range parse(std::string_view text);
  void validate() const;
  /// start, start + step, ... up to stop (inclusive within 1e-9 steps).
  std::vector<double> points() const;
};

/// A second variable taking a short list of values, one curve per value.
/// For f, a negative value means the filter is skipped.
struct Series {
  Variable variable = Variable::r;
  std::vector<double> values;
};

struct SweepSpec {
  std::string name;
  Variable variable = Variable::T;
  Range range;
  ModelParams fixed;
  std::optional<Series> series;
  std::vector<Subsystem> subsystems{Subsystem::AB1C1};
  bool want_s = true;
  bool want_c = true;
  Source source = Source::Pipeline;
  BruteforceOptions optimizer;

  void validate() const;
};

struct ResultRow {
  ModelParams params;
  Subsystem subsystem = Subsystem::AB1C1;
  double S = 0.0;
  double C = 0.0;
  double Z = 1.0;
  /// Non-empty when the pipeline and closed-form routes disagree; S and C
  /// are NaN in that case.
  std::string error;
};

/// Returns `mp` with `v` set to `value` (f: negative means no filter).
ModelParams with_value(ModelParams mp, Variable v, double value);

/// Evaluates one grid point. Measures not requested are NaN.
ResultRow evaluate_point(const ModelParams& mp, Subsystem sub, Source source, bool want_s,
                         bool want_c, const BruteforceOptions& opts = {});

/// One row per (series value, grid point, subsystem), in that nesting order.
/// Grid points are evaluated on up to `threads` workers (0 = hardware
/// concurrency); the output order does not depend on scheduling.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

inline constexpr std::string_view kCsvHeader = "T,alpha,omega,r,p,f,subsystem,S,C,Z";

void write_csv(std::ostream& out, std::span<const ResultRow> rows);
std::string format_csv(std::span<const ResultRow> rows);

struct Crossing {
  double value = 0.0;    ///< critical parameter
  double measure = 0.0;  ///< measure evaluated at `value`
  int iterations = 0;
};

/// Bisection in T for S(T) = target on [t_lo, t_hi], to |S - target| <= 1e-8
/// within 200 iterations. Throws NoCrossing when S - target has the same
/// sign at both ends (below_target set when both ends are <= target).
Crossing find_critical_T(const ModelParams& fixed, Subsystem sub, double t_lo, double t_hi,
                         double target = kSvetlichnyLocalBound,
                         Source source = Source::Pipeline, const BruteforceOptions& opts = {});

/// Bisection on the boundary of {C > 0} over `variable` (T or r) to 1e-8
/// resolution. Throws NoCrossing when C is positive at both ends
/// (below_target = false) or zero at both ends (below_target = true).
Crossing find_sudden_death_C(const ModelParams& fixed, Subsystem sub, Variable variable,
                             double lo, double hi, Source source = Source::Pipeline);

/// Figure recipes fig2a..fig9b.
SweepSpec figure_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace gtn
