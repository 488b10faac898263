#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "cpseq/su2.hpp"

namespace cpseq {

enum class EnvelopeShape { Rectangular, Gaussian, Sampled };

// One constituent physical pulse. The engine starts from Omega(t) and
// Delta(t) directly:
//   Omega(t) = omega_peak * envelope(t)
//   Delta(t) = detuning0 + chirp * (t - duration/2) + stark_coeff * Omega(t)
// The chirp is referenced to the pulse center so it sweeps symmetrically.
// The Gaussian envelope is truncated at +-3 sigma with sigma = duration/6,
// so the nominal duration equals the full window.
struct PulseSpec {
  EnvelopeShape shape = EnvelopeShape::Rectangular;
  double omega_peak = 0.0;   // rad/s
  double duration = 0.0;     // s
  double detuning0 = 0.0;    // rad/s
  double chirp = 0.0;        // rad/s^2
  double stark_coeff = 0.0;  // dimensionless
  // (time_s, amplitude fraction of peak) pairs for Sampled; monotone in time.
  std::vector<std::pair<double, double>> samples;

  double envelope_at(double t) const;  // fraction of peak in [0,1]
  double omega_at(double t) const { return omega_peak * envelope_at(t); }
  double detuning_at(double t) const;

  void validate() const;
};

// Running integral delta(t) of the instantaneous detuning. Used by the
// phase-accumulating reference integrator.
struct PhaseAccumulator {
  double delta_integral = 0.0;  // radians
  void advance(double detuning, double dt) { delta_integral += detuning * dt; }
};

struct ConvergenceError : std::runtime_error {
  double residual;
  explicit ConvergenceError(double r)
      : std::runtime_error("propagate: step refinement did not converge"), residual(r) {}
};

// Time-ordered propagator over [0, duration] with a fixed number of
// piecewise-constant steps; each step is the exact 2x2 exponential of the
// midpoint-sampled Hamiltonian H = (1/2)(Delta sigma_z + Omega sigma_x),
// so the result is exactly unitary at any step count.
Unitary2 propagate_fixed(const PulseSpec& pulse, int steps);

// Adaptive variant: halves the step until successive refinements agree
// entrywise within `tolerance`. Throws ConvergenceError past the step
// budget, std::domain_error on invalid input.
Unitary2 propagate(const PulseSpec& pulse, double tolerance = kDefaultStepperTol);

// Same dynamics solved in the frame where the coupling carries
// the accumulated phase e^{-i delta(t)} and the Hamiltonian has no diagonal
// part. Related to propagate() by a known diagonal frame rotation; kept as
// an independent route for cross-checking the frame convention.
Unitary2 propagate_delta_frame(const PulseSpec& pulse, int steps);

// 1 - |u11|^2 of propagate's result.
double transition_probability(const PulseSpec& pulse, double tolerance = kDefaultStepperTol);

// Convenience: resonant rectangular pulse with area pi at the given Rabi
// frequency (rad/s).
PulseSpec resonant_pi_pulse(double omega_peak);

}  // namespace cpseq
