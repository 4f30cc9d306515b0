#include "gtn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace gtn {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckResult finish(std::string name, double worst, double tol, const Stopwatch& sw,
                   std::string detail = {}) {
  return {std::move(name), worst <= tol, worst, tol, sw.seconds(), std::move(detail)};
}

}  // namespace

ModelParams sample_model_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ModelParams mp;
  mp.alpha = unit(rng);
  mp.omega = 1.0;
  mp.temperature = 1.0 / (0.1 + 19.9 * unit(rng));
  mp.r = unit(rng);
  mp.p = unit(rng);
  mp.filter = unit(rng) < 0.25 ? FilterParams::none()
                               : FilterParams::strength(0.05 + 0.9 * unit(rng));
  return mp;
}

CheckResult check_closed_form(Subsystem sub, int samples, std::uint64_t seed) {
  Stopwatch sw;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  ModelParams worst_at;
  for (int k = 0; k < samples; ++k) {
    const ModelParams mp = sample_model_params(rng);
    const double d = closed_form_discrepancy(sub, mp);
    if (d > worst) {
      worst = d;
      worst_at = mp;
    }
  }
  std::ostringstream os;
  os << samples << " tuples; worst at alpha=" << worst_at.alpha << " T=" << worst_at.temperature
     << " r=" << worst_at.r << " p=" << worst_at.p << " f=" << worst_at.filter.csv_value();
  return finish("closed form " + std::string(to_string(sub)), worst, 1e-10, sw, os.str());
}

CheckResult check_svetlichny_oracle(int states, const BruteforceOptions& opts,
                                    std::uint64_t seed) {
  Stopwatch sw;
  constexpr Subsystem kXForm[] = {Subsystem::AB1C1, Subsystem::AB2C2, Subsystem::AB1C2,
                                  Subsystem::AB2C1};
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < states; ++k) {
    const ModelParams mp = sample_model_params(rng);
    const DensityMatrix rho = reduce(evolve_model(mp).rho, kXForm[k % 4]);
    const double formula = svetlichny_x(as_x_state(rho));
    const double searched = svetlichny_bruteforce(rho, opts).value;
    worst = std::max(worst, std::abs(formula - searched));
  }
  return finish("svetlichny oracle", worst, 1e-6, sw,
                std::to_string(states) + " states, " + std::to_string(opts.restarts) +
                    " restarts");
}

CheckResult check_pure_concurrence(int samples, std::uint64_t seed) {
  Stopwatch sw;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> pair(0, 3);
  const Labels labels{Mode::A, Mode::B1, Mode::C1};
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const int i = pair(rng);
    Vector psi = Vector::Zero(8);
    psi(i) = Complex(gauss(rng), gauss(rng));
    psi(7 - i) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    const PureState state(psi, labels);
    const auto x = as_x_state(DensityMatrix::from_pure(state));
    worst = std::max(worst, std::abs(gtc_x(x) - gtc_pure(state)));
  }
  return finish("pure-state concurrence", worst, 1e-10, sw,
                std::to_string(samples) + " rank-1 states");
}

CheckResult check_half_filter(int samples, std::uint64_t seed) {
  Stopwatch sw;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    ModelParams mp = sample_model_params(rng);
    mp.filter = FilterParams::none();
    const Matrix plain = evolve_model(mp).rho.entries();
    mp.filter = FilterParams::strength(0.5);
    const Matrix half = evolve_model(mp).rho.entries();
    worst = std::max(worst, (plain - half).cwiseAbs().maxCoeff());
  }
  return finish("half-strength filter", worst, 1e-12, sw, std::to_string(samples) + " tuples");
}

std::vector<CheckResult> run_verify_suite(const BruteforceOptions& opts) {
  std::vector<CheckResult> out;
  for (Subsystem sub : kAllSubsystems) out.push_back(check_closed_form(sub));
  out.push_back(check_svetlichny_oracle(50, opts));
  out.push_back(check_pure_concurrence());
  out.push_back(check_half_filter());
  return out;
}

}  // namespace gtn
