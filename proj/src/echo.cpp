#include "cpseq/echo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cpseq {

void EnsembleSpec::validate() const {
  if (member_count < 1) throw std::domain_error("EnsembleSpec: member_count must be >= 1");
  if (detuning_sigma < 0.0 || rabi_scale_sigma < 0.0)
    throw std::domain_error("EnsembleSpec: sigmas must be nonnegative");
}

std::vector<EnsembleSpec::Member> EnsembleSpec::sample() const {
  validate();
  std::vector<Member> members(member_count);
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < member_count; ++i) {
    double det, scale;
    if (!detuning_samples.empty())
      det = detuning_samples[i % detuning_samples.size()];
    else
      det = detuning_sigma * gauss(rng);
    if (!rabi_scale_samples.empty())
      scale = rabi_scale_samples[i % rabi_scale_samples.size()];
    else
      scale = 1.0 + rabi_scale_sigma * gauss(rng);
    members[i] = {det, std::max(0.0, scale)};
  }
  return members;
}

void EchoProtocol::validate() const {
  if (storage_time <= 0.0) throw std::domain_error("EchoProtocol: storage_time must be positive");
  if (inversion_count < 0 || inversion_count % 2 != 0)
    throw std::domain_error("EchoProtocol: inversion_count must be even and nonnegative");
  if (inversion_count > 0) {
    if (inversion_sequence.phases.empty())
      throw std::domain_error("EchoProtocol: empty inversion sequence");
    const double block = inversion_sequence.size() * base_pulse.duration;
    if (inversion_count * block > storage_time)
      throw std::domain_error("EchoProtocol: pulse train does not fit inside storage_time");
  }
}

namespace {

Unitary2 free_precession(double detuning, double t) {
  const Complex d = std::polar(1.0, -0.5 * detuning * t);
  return {d, {0.0, 0.0}, {0.0, 0.0}, std::conj(d)};
}

// final coherence c1 * conj(c2) of one member, initial value 0.5
Complex member_coherence(const EchoProtocol& protocol, double detuning_offset, double rabi_scale,
                         double tolerance) {
  const double total_detuning = protocol.base_pulse.detuning0 + detuning_offset;
  const double sq = 1.0 / std::sqrt(2.0);
  StateVector2 c{{sq, 0.0}, {sq, 0.0}};

  if (protocol.inversion_count == 0) {
    c = apply(free_precession(total_detuning, protocol.storage_time), c);
    return c.c1 * std::conj(c.c2);
  }

  PulseSpec pulse = protocol.base_pulse;
  pulse.detuning0 = total_detuning;
  pulse.omega_peak = protocol.base_pulse.omega_peak * rabi_scale;
  const Unitary2 block = composite_physical_propagator(protocol.inversion_sequence, pulse, tolerance);

  const double block_time = protocol.inversion_sequence.size() * pulse.duration;
  const double tau =
      (protocol.storage_time - protocol.inversion_count * block_time) /
      (2.0 * protocol.inversion_count);

  const Unitary2 half_gap = free_precession(total_detuning, tau);
  const Unitary2 full_gap = free_precession(total_detuning, 2.0 * tau);

  c = apply(half_gap, c);
  for (int k = 0; k < protocol.inversion_count; ++k) {
    c = apply(block, c);
    c = apply(k + 1 == protocol.inversion_count ? half_gap : full_gap, c);
  }
  return c.c1 * std::conj(c.c2);
}

}  // namespace

double rephasing_efficiency(const EchoProtocol& protocol, const EnsembleSpec& ensemble,
                            double tolerance) {
  protocol.validate();
  const auto members = ensemble.sample();

  Complex mean{0.0, 0.0};
  for (const auto& m : members)
    mean += member_coherence(protocol, m.detuning_offset, m.rabi_scale, tolerance);
  mean /= static_cast<double>(members.size());

  double eff = std::abs(mean) / 0.5;
  if (protocol.decoherence_time)
    eff *= std::exp(-protocol.storage_time / *protocol.decoherence_time);
  return std::clamp(eff, 0.0, 1.0);
}

ProfileGrid efficiency_map(const EchoProtocol& protocol, const EnsembleSpec& ensemble,
                           const GridSpec& grid, bool normalized, bool parallel,
                           double tolerance) {
  grid.validate();
  const auto members = ensemble.sample();  // shared across cells, fixed seed

  ProfileGrid out;
  out.detuning = grid.detuning;
  out.duration = grid.duration;
  out.sequence_name = protocol.inversion_sequence.name;
  {
    std::ostringstream os;
    os << "engine=cpseq-1.0 stepper_tol=" << tolerance << " members=" << ensemble.member_count
       << " seed=" << ensemble.rng_seed;
    out.provenance = os.str();
  }
  out.values.assign(static_cast<std::size_t>(grid.detuning.count) * grid.duration.count, 0.0);

  const double envelope =
      protocol.decoherence_time ? std::exp(-protocol.storage_time / *protocol.decoherence_time)
                                : 1.0;
  const int cells = grid.detuning.count * grid.duration.count;
  int bad_cell = -1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int c = 0; c < cells; ++c) {
    EchoProtocol cell_protocol = protocol;
    cell_protocol.base_pulse.detuning0 = grid.detuning.at(c % grid.detuning.count);
    cell_protocol.base_pulse.duration = grid.duration.at(c / grid.detuning.count);
    try {
      cell_protocol.validate();
      Complex mean{0.0, 0.0};
      for (const auto& m : members)
        mean += member_coherence(cell_protocol, m.detuning_offset, m.rabi_scale, tolerance);
      mean /= static_cast<double>(members.size());
      out.values[c] = std::clamp(std::abs(mean) / 0.5 * envelope, 0.0, 1.0);
    } catch (const std::exception&) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (bad_cell < 0 || c < bad_cell) bad_cell = c;
      }
    }
  }
  if (bad_cell >= 0)
    throw std::runtime_error("efficiency_map: invalid protocol or non-convergence at cell " +
                             std::to_string(bad_cell));

  if (normalized) {
    const double peak = *std::max_element(out.values.begin(), out.values.end());
    if (peak > 0.0)
      for (double& v : out.values) v /= peak;
  }
  return out;
}

}  // namespace cpseq
