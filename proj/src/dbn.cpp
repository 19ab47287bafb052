#include "netres/dbn.hpp"

#include <algorithm>
#include <cmath>

#include "netres/error.hpp"

namespace netres {

double PerformanceState::operator[](std::size_t k) const {
  switch (k) {
    case 0: return prepare;
    case 1: return resist;
    case 2: return adapt;
    case 3: return recover;
    case 4: return evolve;
  }
  fail(ErrorKind::range, "performance index out of range");
}

double& PerformanceState::operator[](std::size_t k) {
  switch (k) {
    case 0: return prepare;
    case 1: return resist;
    case 2: return adapt;
    case 3: return recover;
    case 4: return evolve;
  }
  fail(ErrorKind::range, "performance index out of range");
}

void TransitionModel::validate() const {
  if (!std::isfinite(factor_alpha) || factor_alpha < 0.0 || factor_alpha > 1.0)
    fail(ErrorKind::config, "factor_alpha must lie in [0,1]");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) fail(ErrorKind::config, "performance weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) fail(ErrorKind::config, "performance weights must sum to 1");
  for (std::size_t src : capability_source)
    if (src >= CapabilityValues::size()) fail(ErrorKind::config, "capability mapping index out of range");
}

double TransitionModel::factor(double x) const {
  return factor_alpha + (1.0 - factor_alpha) * std::clamp(x, 0.0, 1.0);
}

PerformanceState dbn_step(const PerformanceState& prev, const CapabilityValues& normalized_caps,
                          const TransitionModel& model) {
  for (std::size_t k = 0; k < PerformanceState::size(); ++k) {
    if (!std::isfinite(prev[k])) fail(ErrorKind::numeric, "non-finite performance in previous slice");
    if (!std::isfinite(normalized_caps[k])) fail(ErrorKind::numeric, "non-finite capability");
  }
  PerformanceState next;
  next.time_index = prev.time_index + 1;
  next[0] = model.factor(prev[0]) * normalized_caps[model.capability_source[0]];
  for (std::size_t k = 1; k < PerformanceState::size(); ++k) {
    next[k] = model.factor(prev[k]) * model.factor(prev[k - 1]) * model.factor(next[k - 1]) *
              normalized_caps[model.capability_source[k]];
  }
  return next;
}

double aggregate_performance(const PerformanceState& state, const TransitionModel& model) {
  double sum = 0.0;
  for (double w : model.weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-12) fail(ErrorKind::config, "performance weights must sum to 1");
  double p = 0.0;
  for (std::size_t k = 0; k < PerformanceState::size(); ++k) p += model.weights[k] * state[k];
  return p;
}

double instantaneous_resilience(const ResilienceSeries& series, std::size_t t, std::size_t window) {
  if (window < 1 || t + window > series.performance.size())
    fail(ErrorKind::range, "resilience window exceeds the series");
  double sum = 0.0;
  for (std::size_t k = t; k < t + window; ++k) sum += series.performance[k];
  return sum / (static_cast<double>(window) * series.p_nor);
}

CumulativeResilience cumulative_resilience(const ResilienceSeries& series, std::size_t t1, long horizon) {
  if (horizon <= 0) fail(ErrorKind::range, "cumulative resilience horizon must be positive");
  const auto h = static_cast<std::size_t>(horizon);
  if (t1 + h > series.performance.size()) fail(ErrorKind::range, "cumulative resilience horizon exceeds the series");
  double sum = 0.0;
  for (std::size_t k = t1; k < t1 + h; ++k) sum += series.performance[k];
  CumulativeResilience out;
  out.raw = sum / (static_cast<double>(h) * series.p_nor);
  out.clamped = std::min(out.raw, 1.0);
  return out;
}

}  // namespace netres
