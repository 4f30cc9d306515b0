#pragma once

// Self-checks: closed forms against the pipeline, closed-form measures
// against their numerical oracles.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gtn/measures.hpp"
#include "gtn/reduced.hpp"

namespace gtn {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  ///< largest observed deviation
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

/// alpha in [0,1], omega = 1, omega/T in [0.1, 20], r, p in [0,1],
/// f = none with probability 1/4, otherwise uniform in (0.05, 0.95).
ModelParams sample_model_params(std::mt19937_64& rng);

/// Max entrywise |closed_form - reduce| over `samples` random tuples.
CheckResult check_closed_form(Subsystem sub, int samples = 500, std::uint64_t seed = 7);

/// svetlichny_bruteforce vs svetlichny_x on `states` reduced states drawn
/// from the X-form subsystems.
CheckResult check_svetlichny_oracle(int states = 50, const BruteforceOptions& opts = {},
                                    std::uint64_t seed = 11);

/// gtc_x vs gtc_pure on random rank-1 X-form states.
CheckResult check_pure_concurrence(int samples = 200, std::uint64_t seed = 13);

/// Filter at f = 1/2 vs no filter on the five-mode state.
CheckResult check_half_filter(int samples = 50, std::uint64_t seed = 17);

/// Every check above, in a fixed order.
std::vector<CheckResult> run_verify_suite(const BruteforceOptions& opts = {});

}  // namespace gtn
