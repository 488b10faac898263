#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpseq/sequences.hpp"

namespace cpseq {

// Truncated polynomial in the error amplitude epsilon whose coefficients
// are finite harmonic expansions in the dephasing angle:
//   sum_{j,m} amp(j,m) eps^j e^{i m atilde}
// with m running over half-integers. Keys store the doubled harmonic index
// 2m so half-integer harmonics stay exact integers.
class HarmonicPolynomial {
 public:
  using Key = std::pair<int, int>;  // (epsilon power j, doubled harmonic 2m)

  explicit HarmonicPolynomial(int truncation) : truncation_(truncation) {}

  static HarmonicPolynomial term(int truncation, int j, int harmonic2, Complex amp);

  int truncation() const { return truncation_; }
  const std::map<Key, Complex>& coefficients() const { return coeffs_; }

  void add_term(int j, int harmonic2, Complex amp);
  HarmonicPolynomial operator+(const HarmonicPolynomial& o) const;
  HarmonicPolynomial operator*(const HarmonicPolynomial& o) const;
  HarmonicPolynomial operator-() const;

  // multiply every term by amp * e^{i shift2 * atilde / 2}
  HarmonicPolynomial rotated(int shift2, Complex amp) const;

  // drops amplitudes below the prune tolerance
  void prune();

  Complex evaluate(double epsilon, double atilde) const;

  // max_m |amp(j, m)|
  double max_harmonic_magnitude(int j) const;
  // max over atilde of |sum_m amp(j,m) e^{i m atilde}| (coarse grid plus
  // local refinement; exact when a single harmonic survives)
  double max_coefficient_magnitude(int j) const;

 private:
  int truncation_;
  std::map<Key, Complex> coeffs_;
};

// chi_k = sum_{i<=k} Phi_i, the cumulative relative phase shifts.
struct ChiPhases {
  std::vector<double> chi;  // radians, size n-2
};

ChiPhases chi_from_big_phi(const std::vector<double>& big_phi);

struct UniversalityReport {
  int n = 0;
  int claimed_j0 = 0;
  int j0_achieved = 0;
  bool passed = false;
  // (epsilon order j, max harmonic amplitude magnitude)
  std::vector<std::pair<int, double>> residuals;
  // For the n=3-type minimization: max over atilde of the first-order
  // coefficient magnitude. The analytic floor is 1.
  double minimized_first_order = 0.0;

  std::string to_text() const;  // key: value lines
};

// The (1,1) element of U(0,0) R(chi_{n-2}+atilde) ... U(0,0) R(atilde) U(0,0)
// as a truncated epsilon series with exact harmonic bookkeeping. U(0,0)
// entries enter as the series eps and +-sqrt(1-eps^2); each R factor
// contributes a fixed phase and a half-harmonic shift. Throws on a
// truncation above the configured cap.
HarmonicPolynomial expand_u11(const std::vector<double>& big_phi, int truncation);

// Residuals per order from expand_u11; passes iff every harmonic magnitude
// for j <= claimed_j0 stays below the nullification tolerance. For
// claimed_j0 = 0 the pass condition is instead that the minimized
// first-order magnitude sits at the analytic floor of 1.
UniversalityReport verify_universal(const std::vector<double>& big_phi, int claimed_j0);

// Brute-force scaling oracle: worst-case infidelity over a dense alpha grid
// per epsilon, then the fitted log-log slope. Independent of the series
// engine. Returns +infinity when the fit degenerates (zero infidelity
// everywhere).
double oracle_scaling(const CompositeSequence& seq, const std::vector<double>& eps_grid,
                      int alpha_points = 721);

// Max over random (eps, alpha, beta, delta) of
// | |u11|(phi2+delta, alpha) - |u11|(phi2, alpha-delta/2) |.
double phi2_alpha_equivalence(const PhaseLaw& law, int samples, unsigned long long seed = 12345);

}  // namespace cpseq
