#pragma once

#include <complex>

#include "cpseq/constants.hpp"

namespace cpseq {

using Complex = std::complex<double>;

// Complex 2x2 matrix; carrier of all pulse propagators. Values are plain
// data, operations are pure, so instances are safe to share across workers.
struct Unitary2 {
  Complex u11{1.0, 0.0}, u12{0.0, 0.0};
  Complex u21{0.0, 0.0}, u22{1.0, 0.0};

  Unitary2 operator*(const Unitary2& o) const {
    return {u11 * o.u11 + u12 * o.u21, u11 * o.u12 + u12 * o.u22,
            u21 * o.u11 + u22 * o.u21, u21 * o.u12 + u22 * o.u22};
  }

  Unitary2 dagger() const {
    return {std::conj(u11), std::conj(u21), std::conj(u12), std::conj(u22)};
  }

  Complex determinant() const { return u11 * u22 - u12 * u21; }

  // max entrywise |U^dag U - I|
  double unitarity_defect() const;
  bool is_unitary(double tol = kUnitarityTol) const { return unitarity_defect() <= tol; }

  double max_abs_diff(const Unitary2& o) const;

  static Unitary2 identity() { return {}; }
};

// The (epsilon, alpha, beta) parameterization of a single-pulse propagator.
// epsilon in [0,1]; single-pulse transition probability is 1 - epsilon^2.
struct PulseParams {
  double epsilon = 0.0;
  double alpha = 0.0;  // radians
  double beta = 0.0;   // radians
};

struct StateVector2 {
  Complex c1{1.0, 0.0};
  Complex c2{0.0, 0.0};

  double norm2() const { return std::norm(c1) + std::norm(c2); }
};

inline StateVector2 apply(const Unitary2& u, const StateVector2& s) {
  return {u.u11 * s.c1 + u.u12 * s.c2, u.u21 * s.c1 + u.u22 * s.c2};
}

// U(alpha,beta) with u11 = eps e^{i alpha}, u12 = sqrt(1-eps^2) e^{i beta},
// u21 = -conj(u12), u22 = conj(u11). Throws std::domain_error for epsilon
// outside [0,1].
Unitary2 make_propagator(const PulseParams& p);

// diag(e^{-i phi/2}, e^{+i phi/2})
Unitary2 phase_rotation(double phi);

// R^dag(phi) U R(phi): multiplies u12 by e^{i phi} and u21 by e^{-i phi}.
// For a propagator built from PulseParams this is exactly beta -> beta+phi.
Unitary2 shift_phase(const Unitary2& u, double phi);

// Inverse of make_propagator after removing the global phase. The global
// phase is fixed so that u11 = eps e^{i alpha} with eps real nonnegative;
// when eps < 1e-14, alpha is unobservable and set to 0. Throws
// std::invalid_argument on non-unitary input.
PulseParams extract_params(const Unitary2& u);

}  // namespace cpseq
