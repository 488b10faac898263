#pragma once

namespace cpseq {

// Validation tolerance for unitarity of any constructed or composed 2x2
// propagator. Products of up to 25 double-precision matrices stay well
// under this.
inline constexpr double kUnitarityTol = 1e-12;

// Round-trip tolerance for parameter extraction / reconstruction.
inline constexpr double kRoundTripTol = 1e-10;

// A harmonic coefficient below this counts as nullified.
inline constexpr double kNullifyTol = 1e-10;

// Series amplitudes below this are pruned.
inline constexpr double kPruneTol = 1e-14;

// Hard cap on the epsilon-series truncation order.
inline constexpr int kMaxTruncation = 32;

// Defaults for the adaptive time stepper.
inline constexpr double kDefaultStepperTol = 1e-10;
inline constexpr int kDefaultInitialSteps = 64;
inline constexpr int kMaxStepperSteps = 1 << 22;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace cpseq
