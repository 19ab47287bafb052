#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "netres/network.hpp"

namespace netres {

// RRC, SRC, CRC, RCC, DEC in that order.
struct CapabilityValues {
  double rrc = 0.0;
  double src = 0.0;
  double crc = 0.0;
  double rcc = 0.0;
  double dec = 0.0;

  static constexpr std::size_t size() { return 5; }
  double operator[](std::size_t k) const;
  double& operator[](std::size_t k);

  friend bool operator==(const CapabilityValues&, const CapabilityValues&) = default;
};

struct CapabilityVector {
  CapabilityValues raw;
  CapabilityValues normalized;
  // Set when the SRC denominator was floored (no criticality-weighted risk).
  bool risk_free = false;

  friend bool operator==(const CapabilityVector&, const CapabilityVector&) = default;
};

inline constexpr double kSrcDenominatorFloor = 1e-6;
inline constexpr double kDefaultCapMax = 1.25;

// Which |N| and |E| the formulas divide by (the 1/|N|, 1/|E| prefactors and
// the |N|-1 degree normalizer). Graph metrics such as betweenness, FR, R* and
// H are always taken on the live topology.
//   original: counts of the intact network, so destroyed elements count as
//             zero contributions and damage lowers every average;
//   live:     counts of the current live network.
enum class CountBasis { original, live };

CountBasis parse_count_basis(std::string_view name);
std::string_view to_string(CountBasis basis);

// The five formulas sum over live elements. Degenerate networks (no nodes,
// or fewer than 2 live nodes where a formula divides by |N|-1) evaluate to 0.

double rapid_response(const ResilientNetwork& net, const NetworkMetrics& m, CountBasis basis = CountBasis::original);
double sustained_resistance(const ResilientNetwork& net, const NetworkMetrics& m,
                            CountBasis basis = CountBasis::original);
double continuous_running(const ResilientNetwork& net, const NetworkMetrics& m,
                          CountBasis basis = CountBasis::original);
double rapid_convergence(const ResilientNetwork& net, const NetworkMetrics& m,
                         CountBasis basis = CountBasis::original);
double dynamic_evolution(const ResilientNetwork& net, CountBasis basis = CountBasis::original);

// Denominator of SRC before flooring: sum I_i L_i + sum I_ij L_ij.
double sustained_resistance_risk(const ResilientNetwork& net, const NetworkMetrics& m);

double rapid_response(const ResilientNetwork& net);
double sustained_resistance(const ResilientNetwork& net);
double continuous_running(const ResilientNetwork& net);
double rapid_convergence(const ResilientNetwork& net);

// All five raw capabilities; `normalized` is left as-is (zero).
CapabilityVector evaluate_capabilities(const ResilientNetwork& net, CountBasis basis = CountBasis::original);

// min(raw / baseline_raw, cap_max) per component. Throws Error(config) naming
// the component when a baseline value is not strictly positive.
CapabilityVector normalize_capabilities(const CapabilityVector& raw, const CapabilityVector& baseline,
                                        double cap_max = kDefaultCapMax);

}  // namespace netres
