// Compares the serial reference kernel against the OpenMP kernel on the
// default profile grid and reports timings plus the observed speedup.
// The two paths must produce bit-identical values.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cpseq/scanner.hpp"

namespace {

double time_scan(const cpseq::CompositeSequence& seq, const cpseq::GridSpec& grid, bool parallel,
                 cpseq::ProfileGrid& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = cpseq::scan_profile(seq, grid, parallel);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "U13";
  const cpseq::CompositeSequence seq = cpseq::catalog_lookup(name, 0.0);
  const cpseq::GridSpec grid = cpseq::GridSpec::default_grid();

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("sequence: %s, grid: %d x %d cells\n", seq.name.c_str(), grid.duration.count,
              grid.detuning.count);

  cpseq::ProfileGrid serial, parallel;
  const double warm = time_scan(seq, grid, true, parallel);  // warm-up / thread spin-up
  (void)warm;
  const double tp = time_scan(seq, grid, true, parallel);
  const double ts = time_scan(seq, grid, false, serial);

  bool identical = serial.values.size() == parallel.values.size();
  for (std::size_t i = 0; identical && i < serial.values.size(); ++i)
    identical = serial.values[i] == parallel.values[i];

  std::printf("serial:   %.3f s\n", ts);
  std::printf("parallel: %.3f s\n", tp);
  std::printf("speedup:  %.2fx\n", ts / tp);
  std::printf("bit-identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
