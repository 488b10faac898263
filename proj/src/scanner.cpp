#include "cpseq/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cpseq {

void GridSpec::validate() const {
  if (detuning.count < 2 || duration.count < 2)
    throw std::invalid_argument("GridSpec: axis counts must be >= 2");
  if (!(detuning.min < detuning.max) || !(duration.min < duration.max))
    throw std::invalid_argument("GridSpec: axis min must be below max");
  if (duration.min <= 0.0) throw std::invalid_argument("GridSpec: durations must be positive");
}

GridSpec GridSpec::default_grid() {
  GridSpec g;
  g.detuning = {-kTwoPi * 60e3, kTwoPi * 60e3, 121};
  g.duration = {2e-6, 18e-6, 81};
  g.base_pulse.shape = EnvelopeShape::Rectangular;
  g.base_pulse.omega_peak = kTwoPi * 50e3;
  g.base_pulse.duration = 10e-6;
  return g;
}

namespace {

std::string grid_provenance(double tolerance) {
  std::ostringstream os;
  os << "engine=cpseq-1.0 stepper_tol=" << tolerance << " unitarity_tol=" << kUnitarityTol;
  return os.str();
}

}  // namespace

ProfileGrid scan_profile(const CompositeSequence& seq, const GridSpec& grid, bool parallel,
                         double tolerance) {
  grid.validate();
  ProfileGrid out;
  out.detuning = grid.detuning;
  out.duration = grid.duration;
  out.sequence_name = seq.name;
  out.provenance = grid_provenance(tolerance);
  out.values.assign(static_cast<std::size_t>(grid.detuning.count) * grid.duration.count, 0.0);

  const int cells = grid.detuning.count * grid.duration.count;
  int failed_cell = -1;  // exceptions must not cross the parallel region
  double failed_residual = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int c = 0; c < cells; ++c) {
    const int ti = c / grid.detuning.count;
    const int di = c % grid.detuning.count;
    PulseSpec pulse = grid.base_pulse;
    pulse.detuning0 = grid.detuning.at(di);
    pulse.duration = grid.duration.at(ti);
    try {
      const Unitary2 u = composite_physical_propagator(seq, pulse, tolerance);
      out.values[c] = std::clamp(1.0 - std::norm(u.u11), 0.0, 1.0);
    } catch (const ConvergenceError& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (failed_cell < 0 || c < failed_cell) {
          failed_cell = c;
          failed_residual = e.residual;
        }
      }
    }
  }
  if (failed_cell >= 0)
    throw std::runtime_error(
        "scan_profile: no convergence at cell (duration_index=" +
        std::to_string(failed_cell / grid.detuning.count) +
        ", detuning_index=" + std::to_string(failed_cell % grid.detuning.count) + "), residual " +
        std::to_string(failed_residual));
  return out;
}

std::vector<std::pair<double, double>> scan_correlated(const CompositeSequence& seq,
                                                       const CorrelationPath& path,
                                                       const PulseSpec& base, double tolerance) {
  if (path.count < 2) throw std::invalid_argument("CorrelationPath: count must be >= 2");
  std::vector<std::pair<double, double>> out(path.count);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < path.count; ++i) {
    const double e = path.span_min + (path.span_max - path.span_min) * i / (path.count - 1);
    PulseSpec pulse = base;
    pulse.omega_peak = base.omega_peak * (1.0 + e);
    pulse.detuning0 = base.detuning0 + path.kappa * base.omega_peak * e;
    const Unitary2 u = composite_physical_propagator(seq, pulse, tolerance);
    out[i] = {e, std::clamp(1.0 - std::norm(u.u11), 0.0, 1.0)};
  }
  return out;
}

double high_fidelity_area(const ProfileGrid& grid, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("high_fidelity_area: threshold must be in (0,1)");
  std::size_t hits = 0;
  for (double v : grid.values) hits += v >= threshold ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(grid.values.size());
}

}  // namespace cpseq
