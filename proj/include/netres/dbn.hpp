#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "netres/capabilities.hpp"

namespace netres {

// The five resilience performances of one time slice. The chain order
// prepare -> resist -> adapt -> recover -> evolve is also the intra-slice
// parent order of the network.
struct PerformanceState {
  double prepare = 1.0;
  double resist = 1.0;
  double adapt = 1.0;
  double recover = 1.0;
  double evolve = 1.0;
  int time_index = 0;

  static constexpr std::size_t size() { return 5; }
  double operator[](std::size_t k) const;
  double& operator[](std::size_t k);

  friend bool operator==(const PerformanceState&, const PerformanceState&) = default;
};

struct TransitionModel {
  // Tempering of each conditional factor: f(x) = alpha + (1 - alpha) clamp(x, 0, 1).
  double factor_alpha = 0.5;
  // Aggregation weights for P(t); must sum to 1.
  std::array<double, 5> weights{0.2, 0.2, 0.2, 0.2, 0.2};
  // capability_source[k] selects which capability drives performance k.
  std::array<std::size_t, 5> capability_source{0, 1, 2, 3, 4};

  // Throws Error(config) on alpha outside [0,1], negative weights, weights
  // not summing to 1 within 1e-12, or an invalid capability mapping.
  void validate() const;
  double factor(double x) const;
};

// One two-slice transition. The head of the chain depends on its own previous
// value; every later performance X with parent W becomes
//   f(X_t) * f(W_t) * f(W_{t+1}) * cap_X.
// Throws Error(numeric) on non-finite inputs.
PerformanceState dbn_step(const PerformanceState& prev, const CapabilityValues& normalized_caps,
                          const TransitionModel& model);

// Weighted sum of the five performances.
double aggregate_performance(const PerformanceState& state, const TransitionModel& model);

struct ResilienceSeries {
  std::vector<double> performance;
  std::vector<PerformanceState> states;
  std::vector<CapabilityVector> capabilities;
  double p_nor = 1.0;
};

// Mean of P over [t, t+window) divided by p_nor. Throws Error(range) when the
// window does not fit in the series or window < 1.
double instantaneous_resilience(const ResilienceSeries& series, std::size_t t, std::size_t window);

struct CumulativeResilience {
  double raw = 0.0;
  double clamped = 0.0;  // min(raw, 1)
};

// Mean of P over [t1, t1+horizon) divided by p_nor. Throws Error(range) when
// horizon <= 0 or the horizon runs past the series.
CumulativeResilience cumulative_resilience(const ResilienceSeries& series, std::size_t t1, long horizon);

}  // namespace netres
