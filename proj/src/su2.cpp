#include "cpseq/su2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpseq {

double Unitary2::unitarity_defect() const {
  const Unitary2 g = dagger() * (*this);
  double d = std::abs(g.u11 - Complex{1.0, 0.0});
  d = std::max(d, std::abs(g.u12));
  d = std::max(d, std::abs(g.u21));
  d = std::max(d, std::abs(g.u22 - Complex{1.0, 0.0}));
  return d;
}

double Unitary2::max_abs_diff(const Unitary2& o) const {
  return std::max({std::abs(u11 - o.u11), std::abs(u12 - o.u12), std::abs(u21 - o.u21),
                   std::abs(u22 - o.u22)});
}

Unitary2 make_propagator(const PulseParams& p) {
  if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0))
    throw std::domain_error("make_propagator: epsilon must be in [0,1]");
  const double q = std::sqrt(1.0 - p.epsilon * p.epsilon);
  const Complex ea = std::polar(p.epsilon, p.alpha);
  const Complex eb = std::polar(q, p.beta);
  return {ea, eb, -std::conj(eb), std::conj(ea)};
}

Unitary2 phase_rotation(double phi) {
  return {std::polar(1.0, -phi / 2.0), {0.0, 0.0}, {0.0, 0.0}, std::polar(1.0, phi / 2.0)};
}

Unitary2 shift_phase(const Unitary2& u, double phi) {
  const Complex e = std::polar(1.0, phi);
  return {u.u11, u.u12 * e, u.u21 * std::conj(e), u.u22};
}

PulseParams extract_params(const Unitary2& u) {
  if (!u.is_unitary()) throw std::invalid_argument("extract_params: input is not unitary");
  // Remove the global phase: U = e^{i psi/2} V with V in SU(2).
  const Complex det = u.determinant();
  const Complex root = std::polar(1.0, std::arg(det) / 2.0);
  const Complex v11 = u.u11 / root;
  const Complex v12 = u.u12 / root;

  PulseParams p;
  p.epsilon = std::min(1.0, std::abs(v11));
  p.alpha = p.epsilon < 1e-14 ? 0.0 : std::arg(v11);
  p.beta = std::abs(v12) < 1e-14 ? 0.0 : std::arg(v12);
  return p;
}

}  // namespace cpseq
