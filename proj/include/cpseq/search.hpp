#pragma once

#include <string>
#include <vector>

#include "cpseq/series.hpp"

namespace cpseq {

struct SearchCandidate {
  std::vector<double> big_phi;  // canonicalized, radians in [0, 2pi)
  double residual = 0.0;        // max harmonic magnitude over orders <= target_j0
  double next_order_magnitude = 0.0;  // max coefficient magnitude at j0+1
  double objective = 0.0;

  // rational-pi form when snapping succeeds, else decimals
  std::string format() const;
};

struct SearchOptions {
  int n = 5;
  int target_j0 = 2;
  bool anagram = false;
  int restarts = 32;
  unsigned long long seed = 1;
  // relative weight of the first non-nullified order in the objective
  double next_order_weight = 1e-3;
  double accept_tol = 1e-9;
  int max_evals_per_restart = 200000;
};

// Unique representative under global sign flip and order reversal: flip if
// the first nonzero Phi lies in (pi, 2pi), then reverse if that
// lexicographically lowers the tuple.
std::vector<double> canonicalize_big_phi(const std::vector<double>& big_phi);

// Multi-start derivative-free pattern search over the 2pi-periodic Phi
// coordinates, minimizing
//   F = sum_{j<=j0} sum_m |amp(j,m)|^2 + weight * max_m |amp(j0+1, m)|,
// followed by a refinement descent on the nullification term alone (the
// weighted objective leaves a ~weight-sized residual at its minimum).
// Deterministic for a fixed seed; restarts run in parallel and merge by
// sorting on residual then canonical tuple. Candidates above accept_tol are
// dropped; an empty result reports only the best-found residual.
struct SearchResult {
  std::vector<SearchCandidate> candidates;
  double best_residual = 0.0;  // best seen, even when no candidate accepted
};

SearchResult search_phases(const SearchOptions& opts);

}  // namespace cpseq
