#pragma once

// Test-only closed-form references, kept independent of the stepper in
// src/dynamics.cpp.

#include <cmath>

#include "cpseq/su2.hpp"

namespace cpseq::testing {

// Generalized Rabi solution for a rectangular pulse with constant detuning:
// U = exp(-i T/2 (Delta sigma_z + Omega sigma_x)) evaluated analytically.
inline Unitary2 rabi_closed_form(double omega, double delta, double duration) {
  const double reff = std::sqrt(omega * omega + delta * delta);
  if (reff == 0.0) return Unitary2::identity();
  const double half = 0.5 * reff * duration;
  const double c = std::cos(half);
  const double s = std::sin(half);
  return {{c, -delta / reff * s}, {0.0, -omega / reff * s},
          {0.0, -omega / reff * s}, {c, delta / reff * s}};
}

// P = (Omega^2 / Omega_eff^2) sin^2(Omega_eff T / 2)
inline double rabi_transition_probability(double omega, double delta, double duration) {
  const double r2 = omega * omega + delta * delta;
  if (r2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(r2) * duration);
  return omega * omega / r2 * s * s;
}

}  // namespace cpseq::testing
