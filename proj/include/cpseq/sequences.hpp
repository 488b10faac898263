#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpseq/dynamics.hpp"
#include "cpseq/rational.hpp"
#include "cpseq/su2.hpp"

namespace cpseq {

// The (Phi_1..Phi_{n-2}, phi2) control parameters of an n-pulse sequence.
struct PhaseLaw {
  int n = 3;
  std::vector<double> big_phi;  // radians, size n-2
  double phi2 = 0.0;            // radians, free parameter

  // Palindromic constraint Phi_k = Phi_{n-k-1}, required by the genuine
  // universal sets for n >= 5. Compared mod 2pi.
  bool is_anagram(double tol = 1e-12) const;

  void validate() const;
};

// Exact-rational counterpart, used for the catalog fixtures.
struct RationalPhaseLaw {
  int n = 3;
  std::vector<RationalAngle> big_phi;
  RationalAngle phi2;
};

// Realized per-pulse phases phi_1..phi_n with phi_1 = 0 (global-phase
// gauge). When built from a rational law the exact representation is kept
// alongside the floating one.
struct CompositeSequence {
  std::vector<double> phases;  // radians, phases[0] == 0
  std::optional<std::vector<RationalAngle>> exact;  // reduced into [0, 2pi)
  std::string name;  // e.g. "U5(150)" when from the catalog, else empty

  int size() const { return static_cast<int>(phases.size()); }
};

struct CatalogEntry {
  std::string name;  // "U3" .. "U25"
  std::vector<RationalAngle> big_phi;
  std::map<std::string, RationalAngle> named_variants;  // label -> phi2
  int j0 = 0;  // nullification order
};

// phi_k = (k-1) phi2 + sum_{l=1}^{k-1} (k-l-1) Phi_l, reduced mod 2pi.
CompositeSequence phases_from_law(const PhaseLaw& law);
std::vector<RationalAngle> phases_from_law_exact(const RationalPhaseLaw& law);
CompositeSequence sequence_from_rational_law(const RationalPhaseLaw& law);

// The published universal sets (U3, U5, U7, U13, U25).
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);  // throws on unknown name
CompositeSequence catalog_lookup(const std::string& name, RationalAngle phi2);
CompositeSequence catalog_lookup(const std::string& name, double phi2_radians);

// Right-to-left product of beta-shifted single-pulse propagators:
// U(a, b+phi_n) ... U(a, b+phi_1).
Unitary2 composite_propagator(const CompositeSequence& seq, const PulseParams& p);

// Same composition with the physical single-pulse propagator of `pulse`.
// Constituent pulses are identical and contiguous; only the controlled
// phases phi_k differ between them.
Unitary2 composite_physical_propagator(const CompositeSequence& seq, const PulseSpec& pulse,
                                       double tolerance = kDefaultStepperTol);
Unitary2 composite_from_single(const CompositeSequence& seq, const Unitary2& single);

// Sign-flips all phases mod 2pi (phi_1 stays 0); mirrors the excitation
// profile about Delta = 0.
CompositeSequence reflect(const CompositeSequence& seq);

}  // namespace cpseq
