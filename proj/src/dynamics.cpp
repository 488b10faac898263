#include "cpseq/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace cpseq {

namespace {

bool all_finite(const PulseSpec& p) {
  return std::isfinite(p.omega_peak) && std::isfinite(p.duration) && std::isfinite(p.detuning0) &&
         std::isfinite(p.chirp) && std::isfinite(p.stark_coeff);
}

// exp(-i dt/2 (Delta sigma_z + Omega sigma_x)), exactly unitary.
Unitary2 step_exponential(double omega, double delta, double dt) {
  const double r = std::hypot(omega, delta);
  if (r == 0.0) return Unitary2::identity();
  const double a = 0.5 * r * dt;
  const double c = std::cos(a);
  const double s = std::sin(a) / r;
  const Complex d11{c, -delta * s};
  const Complex off{0.0, -omega * s};
  return {d11, off, off, std::conj(d11)};
}

}  // namespace

double PulseSpec::envelope_at(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  switch (shape) {
    case EnvelopeShape::Rectangular:
      return 1.0;
    case EnvelopeShape::Gaussian: {
      const double sigma = duration / 6.0;
      const double x = (t - duration / 2.0) / sigma;
      return std::exp(-0.5 * x * x);
    }
    case EnvelopeShape::Sampled: {
      if (samples.empty()) return 0.0;
      if (t <= samples.front().first) return samples.front().second;
      if (t >= samples.back().first) return samples.back().second;
      auto it = std::upper_bound(samples.begin(), samples.end(), t,
                                 [](double v, const auto& s) { return v < s.first; });
      const auto& [t1, a1] = *it;
      const auto& [t0, a0] = *(it - 1);
      const double w = t1 == t0 ? 0.0 : (t - t0) / (t1 - t0);
      return a0 + w * (a1 - a0);
    }
  }
  return 0.0;
}

double PulseSpec::detuning_at(double t) const {
  return detuning0 + chirp * (t - duration / 2.0) + stark_coeff * omega_at(t);
}

void PulseSpec::validate() const {
  if (!all_finite(*this)) throw std::domain_error("PulseSpec: non-finite parameter");
  if (!(duration > 0.0)) throw std::domain_error("PulseSpec: duration must be positive");
  if (omega_peak < 0.0) throw std::domain_error("PulseSpec: omega_peak must be nonnegative");
  if (shape == EnvelopeShape::Sampled) {
    if (samples.empty()) throw std::domain_error("PulseSpec: empty sampled envelope");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second) ||
          samples[i].second < 0.0)
        throw std::domain_error("PulseSpec: sampled envelope amplitudes must be nonnegative");
      if (i > 0 && samples[i].first <= samples[i - 1].first)
        throw std::domain_error("PulseSpec: sampled envelope times must be increasing");
    }
  }
}

Unitary2 propagate_fixed(const PulseSpec& pulse, int steps) {
  pulse.validate();
  const double dt = pulse.duration / steps;
  Unitary2 u = Unitary2::identity();
  for (int i = 0; i < steps; ++i) {
    const double tm = (i + 0.5) * dt;
    u = step_exponential(pulse.omega_at(tm), pulse.detuning_at(tm), dt) * u;
  }
  return u;
}

Unitary2 propagate(const PulseSpec& pulse, double tolerance) {
  if (!(tolerance > 0.0)) throw std::domain_error("propagate: tolerance must be positive");
  pulse.validate();
  int steps = kDefaultInitialSteps;
  Unitary2 prev = propagate_fixed(pulse, steps);
  double residual = 0.0;
  while (steps <= kMaxStepperSteps) {
    steps *= 2;
    const Unitary2 next = propagate_fixed(pulse, steps);
    residual = next.max_abs_diff(prev);
    if (residual < tolerance) return next;
    prev = next;
  }
  throw ConvergenceError(residual);
}

Unitary2 propagate_delta_frame(const PulseSpec& pulse, int steps) {
  pulse.validate();
  const double dt = pulse.duration / steps;
  PhaseAccumulator acc;
  Unitary2 u = Unitary2::identity();
  for (int i = 0; i < steps; ++i) {
    const double tm = (i + 0.5) * dt;
    // midpoint-rule update of delta(t) at the sampling instants
    if (i == 0)
      acc.advance(pulse.detuning_at(0.25 * dt), 0.5 * dt);
    else
      acc.advance(pulse.detuning_at(i * dt), dt);
    // H = (Omega/2)(cos(delta) sigma_x + sin(delta) sigma_y), no sigma_z term;
    // related to the sigma_z frame by U = exp(+i delta(T) sigma_z / 2) U_rot.
    const double omega = pulse.omega_at(tm);
    const double a = 0.5 * omega * dt;
    const Complex off = Complex{0.0, -std::sin(a)} * std::polar(1.0, acc.delta_integral);
    const Unitary2 step{Complex{std::cos(a), 0.0}, off, -std::conj(off),
                        Complex{std::cos(a), 0.0}};
    u = step * u;
  }
  return u;
}

double transition_probability(const PulseSpec& pulse, double tolerance) {
  const Unitary2 u = propagate(pulse, tolerance);
  return std::clamp(1.0 - std::norm(u.u11), 0.0, 1.0);
}

PulseSpec resonant_pi_pulse(double omega_peak) {
  PulseSpec p;
  p.shape = EnvelopeShape::Rectangular;
  p.omega_peak = omega_peak;
  p.duration = kPi / omega_peak;
  return p;
}

}  // namespace cpseq
