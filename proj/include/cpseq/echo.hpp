#pragma once

#include <optional>
#include <vector>

#include "cpseq/scanner.hpp"

namespace cpseq {

// Inhomogeneously broadened ensemble: per-member detuning offset (rad/s)
// and Rabi-frequency scale factor, sampled deterministically from the seed.
struct EnsembleSpec {
  // Gaussian widths; a nonempty sampled list overrides the matching Gaussian.
  double detuning_sigma = 0.0;    // rad/s
  double rabi_scale_sigma = 0.0;  // dimensionless, mean 1
  std::vector<double> detuning_samples;
  std::vector<double> rabi_scale_samples;
  int member_count = 1;
  unsigned long long rng_seed = 1;

  struct Member {
    double detuning_offset;  // rad/s
    double rabi_scale;
  };
  std::vector<Member> sample() const;

  void validate() const;
};

// CPMG-style rephasing protocol: equal-superposition coherence, free
// precession, an even number of inversion blocks at tau - 2tau - ... - tau
// spacing. The block's own duration is subtracted from the free intervals.
struct EchoProtocol {
  double storage_time = 400e-6;  // s
  int inversion_count = 2;       // even
  CompositeSequence inversion_sequence;
  PulseSpec base_pulse;
  std::optional<double> decoherence_time;  // s; exponential envelope when set

  void validate() const;
};

// |ensemble-averaged final coherence| / |initial|, times the exponential
// decoherence envelope when configured. Value in [0,1].
double rephasing_efficiency(const EchoProtocol& protocol, const EnsembleSpec& ensemble,
                            double tolerance = kDefaultStepperTol);

// rephasing_efficiency per grid cell with the base-pulse detuning/duration
// overridden; cell-parallel with deterministic reduction. When `normalized`
// the map is divided by its global maximum.
ProfileGrid efficiency_map(const EchoProtocol& protocol, const EnsembleSpec& ensemble,
                           const GridSpec& grid, bool normalized = false, bool parallel = true,
                           double tolerance = kDefaultStepperTol);

}  // namespace cpseq
