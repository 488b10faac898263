#pragma once

#include <string>
#include <vector>

#include "cpseq/sequences.hpp"

namespace cpseq {

struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  double at(int i) const { return min + (max - min) * i / (count - 1); }
};

// Excitation-profile scan layout: transition probability over
// (static detuning x constituent-pulse duration), everything else taken
// from the base pulse.
struct GridSpec {
  AxisSpec detuning;  // rad/s
  AxisSpec duration;  // s
  PulseSpec base_pulse;

  void validate() const;

  // Default layout: Omega/2pi = 50 kHz rectangular pulses, T in [2, 18] us
  // (81 pts), Delta/2pi in [-60, 60] kHz (121 pts).
  static GridSpec default_grid();
};

struct ProfileGrid {
  AxisSpec detuning;
  AxisSpec duration;
  std::vector<double> values;  // row-major: [duration_index * detuning.count + detuning_index]
  std::string sequence_name;
  std::string provenance;  // engine version + tolerances

  double at(int duration_index, int detuning_index) const {
    return values[static_cast<std::size_t>(duration_index) * detuning.count + detuning_index];
  }
};

// Rabi/detuning errors along a correlated line:
// Omega -> Omega (1+e), Delta -> Delta0 + kappa * Omega * e.
struct CorrelationPath {
  double kappa = 0.0;  // dimensionless correlation slope
  double span_min = -0.1;
  double span_max = 0.1;
  int count = 2;
};

// Per-cell composite transition probability. Cells are independent and run
// in parallel; results are written by index so the output is identical for
// any worker count. `parallel = false` is the serial reference path.
ProfileGrid scan_profile(const CompositeSequence& seq, const GridSpec& grid, bool parallel = true,
                         double tolerance = kDefaultStepperTol);

std::vector<std::pair<double, double>> scan_correlated(const CompositeSequence& seq,
                                                       const CorrelationPath& path,
                                                       const PulseSpec& base,
                                                       double tolerance = kDefaultStepperTol);

// Fraction of cells at or above the threshold.
double high_fidelity_area(const ProfileGrid& grid, double threshold);

}  // namespace cpseq
