#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cpseq/dynamics.hpp"
#include "oracles.hpp"

using namespace cpseq;

namespace {

PulseSpec rect(double omega, double delta, double duration) {
  PulseSpec p;
  p.omega_peak = omega;
  p.detuning0 = delta;
  p.duration = duration;
  return p;
}

}  // namespace

TEST_CASE("resonant pi pulse inverts completely") {
  const PulseSpec p = resonant_pi_pulse(kTwoPi * 50e3);
  CHECK(transition_probability(p) == doctest::Approx(1.0).epsilon(1e-12));
  const Unitary2 u = propagate(p);
  CHECK(std::abs(u.u11) < 1e-10);
}

TEST_CASE("zero coupling gives the free-precession propagator") {
  const PulseSpec p = rect(0.0, kTwoPi * 10e3, 5e-6);
  const Unitary2 u = propagate(p);
  CHECK(std::abs(u.u12) < 1e-14);
  CHECK(std::abs(std::abs(u.u11) - 1.0) < 1e-12);
}

TEST_CASE("stepper matches the generalized Rabi formula") {
  const double omega = kTwoPi * 50e3;
  const double delta = kTwoPi * 30e3;
  const PulseSpec p = rect(omega, delta, 10e-6);
  const Unitary2 u = propagate(p);
  CHECK(u.max_abs_diff(testing::rabi_closed_form(omega, delta, 10e-6)) < 1e-10);
  CHECK(transition_probability(p) ==
        doctest::Approx(testing::rabi_transition_probability(omega, delta, 10e-6)).epsilon(1e-10));
}

TEST_CASE("stepper vs closed form over a 100-point (Delta, T) grid") {
  const double omega = kTwoPi * 50e3;
  for (int i = 0; i < 10; ++i) {
    const double delta = kTwoPi * (-60e3 + 120e3 * i / 9.0);
    for (int j = 0; j < 10; ++j) {
      const double T = 2e-6 + 16e-6 * j / 9.0;
      const Unitary2 u = propagate(rect(omega, delta, T));
      CHECK(u.max_abs_diff(testing::rabi_closed_form(omega, delta, T)) < 1e-10);
    }
  }
}

TEST_CASE("output is unitary for shaped chirped pulses") {
  PulseSpec p = rect(kTwoPi * 50e3, kTwoPi * 5e3, 10e-6);
  p.shape = EnvelopeShape::Gaussian;
  p.chirp = 1e9;
  p.stark_coeff = 0.2;
  const Unitary2 u = propagate(p, 1e-10);
  CHECK(u.unitarity_defect() < 1e-12);
}

TEST_CASE("fixed-step refinement converges at order >= 2") {
  PulseSpec p = rect(kTwoPi * 50e3, kTwoPi * 20e3, 10e-6);
  p.shape = EnvelopeShape::Gaussian;
  p.chirp = 5e8;
  const Unitary2 fine = propagate_fixed(p, 1 << 14);
  const double e1 = propagate_fixed(p, 128).max_abs_diff(fine);
  const double e2 = propagate_fixed(p, 256).max_abs_diff(fine);
  CHECK(e1 / e2 > 3.5);  // observed order ~2 means a factor ~4
}

TEST_CASE("split propagation composes for piecewise-constant envelopes") {
  const double omega = kTwoPi * 40e3;
  const double delta = kTwoPi * 12e3;
  const Unitary2 whole = propagate(rect(omega, delta, 8e-6));
  const Unitary2 first = propagate(rect(omega, delta, 4e-6));
  CHECK((first * first).max_abs_diff(whole) < 1e-10);
}

TEST_CASE("rotating frame agrees with the delta-accumulating solver") {
  PulseSpec p = rect(kTwoPi * 47e3, kTwoPi * 17e3, 9e-6);
  p.shape = EnvelopeShape::Gaussian;
  p.chirp = 3e8;
  p.stark_coeff = 0.1;
  const int steps = 1 << 15;
  const Unitary2 rotating = propagate_fixed(p, steps);
  const Unitary2 delta_frame = propagate_delta_frame(p, steps);

  // frames differ by the diagonal rotation exp(+i delta(T) sigma_z / 2)
  PhaseAccumulator acc;
  const double dt = p.duration / steps;
  for (int i = 0; i < steps; ++i) acc.advance(p.detuning_at((i + 0.5) * dt), dt);
  const Unitary2 frame{std::polar(1.0, 0.5 * acc.delta_integral),
                       {0.0, 0.0},
                       {0.0, 0.0},
                       std::polar(1.0, -0.5 * acc.delta_integral)};
  CHECK((frame * rotating).max_abs_diff(delta_frame) < 1e-6);
  // the observable never depends on the frame
  CHECK(std::abs(rotating.u11) == doctest::Approx(std::abs(delta_frame.u11)).epsilon(1e-8));
}

TEST_CASE("sampled envelope approximates its analytic shape") {
  PulseSpec g = rect(kTwoPi * 50e3, 0.0, 10e-6);
  g.shape = EnvelopeShape::Gaussian;

  PulseSpec s = g;
  s.shape = EnvelopeShape::Sampled;
  for (int i = 0; i <= 400; ++i) {
    const double t = g.duration * i / 400.0;
    s.samples.emplace_back(t, g.envelope_at(t));
  }
  CHECK(propagate(s).max_abs_diff(propagate(g)) < 1e-4);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(propagate(rect(kTwoPi * 50e3, 0.0, -1.0)), std::domain_error);
  CHECK_THROWS_AS(propagate(rect(-1.0, 0.0, 1e-6)), std::domain_error);
  PulseSpec nan_pulse = rect(kTwoPi * 50e3, 0.0, 1e-6);
  nan_pulse.chirp = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(propagate(nan_pulse), std::domain_error);
  CHECK_THROWS_AS(propagate(rect(kTwoPi * 50e3, 0.0, 1e-6), -1.0), std::domain_error);

  PulseSpec bad_samples = rect(kTwoPi * 50e3, 0.0, 1e-6);
  bad_samples.shape = EnvelopeShape::Sampled;
  bad_samples.samples = {{0.0, 1.0}, {0.0, 0.5}};
  CHECK_THROWS_AS(propagate(bad_samples), std::domain_error);
}
