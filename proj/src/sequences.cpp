#include "cpseq/sequences.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cpseq {

namespace {

double mod_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

std::vector<RationalAngle> make_phis(std::initializer_list<std::int64_t> nums, std::int64_t den) {
  std::vector<RationalAngle> v;
  for (auto n : nums) v.emplace_back(n, den);
  return v;
}

}  // namespace

bool PhaseLaw::is_anagram(double tol) const {
  const int m = static_cast<int>(big_phi.size());
  for (int k = 0; k < m; ++k) {
    const double d = mod_two_pi(big_phi[k] - big_phi[m - 1 - k]);
    if (std::min(d, kTwoPi - d) > tol) return false;
  }
  return true;
}

void PhaseLaw::validate() const {
  if (n < 3) throw std::invalid_argument("PhaseLaw: n must be >= 3");
  if (static_cast<int>(big_phi.size()) != n - 2)
    throw std::invalid_argument("PhaseLaw: need exactly n-2 Phi values");
}

CompositeSequence phases_from_law(const PhaseLaw& law) {
  law.validate();
  CompositeSequence seq;
  seq.phases.resize(law.n, 0.0);
  for (int k = 2; k <= law.n; ++k) {
    double phi = (k - 1) * law.phi2;
    for (int l = 1; l <= k - 2; ++l) phi += (k - l - 1) * law.big_phi[l - 1];
    seq.phases[k - 1] = mod_two_pi(phi);
  }
  return seq;
}

std::vector<RationalAngle> phases_from_law_exact(const RationalPhaseLaw& law) {
  if (law.n < 3 || static_cast<int>(law.big_phi.size()) != law.n - 2)
    throw std::invalid_argument("RationalPhaseLaw: need exactly n-2 Phi values");
  std::vector<RationalAngle> phases(law.n);
  for (int k = 2; k <= law.n; ++k) {
    RationalAngle phi = law.phi2 * (k - 1);
    for (int l = 1; l <= k - 2; ++l) phi = phi + law.big_phi[l - 1] * (k - l - 1);
    phases[k - 1] = phi.mod_two_pi();
  }
  return phases;
}

CompositeSequence sequence_from_rational_law(const RationalPhaseLaw& law) {
  CompositeSequence seq;
  seq.exact = phases_from_law_exact(law);
  seq.phases.reserve(law.n);
  for (const auto& r : *seq.exact) seq.phases.push_back(r.radians());
  return seq;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> c;
    c.push_back({"U3",
                 make_phis({1}, 1),
                 {{"a", {1, 2}}, {"b", {0, 1}}},
                 0});
    c.push_back({"U5",
                 make_phis({2, 3, 2}, 3),
                 {{"a", {5, 6}}, {"b", {11, 6}}},
                 2});
    c.push_back({"U7",
                 make_phis({6, 4, 5, 4, 6}, 6),
                 {{"a", {11, 12}}, {"b", {23, 12}}},
                 2});
    c.push_back({"U13",
                 make_phis({12, 16, 14, 16, 16, 11, 16, 16, 14, 16, 12}, 12),
                 {{"a", {3, 8}}, {"b", {11, 8}}},
                 4});
    c.push_back({"U25",
                 make_phis({2, 3, 2, 2, 3, 2, 3, 2, 4, 1, 2, 3, 2, 1, 4, 2, 3, 2, 3, 2, 2, 3, 2},
                           3),
                 {{"a", {5, 6}}, {"b", {11, 6}}},
                 8});
    return c;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw std::out_of_range("unknown catalog sequence: " + name);
}

CompositeSequence catalog_lookup(const std::string& name, RationalAngle phi2) {
  const CatalogEntry& e = catalog_entry(name);
  RationalPhaseLaw law;
  law.n = static_cast<int>(e.big_phi.size()) + 2;
  law.big_phi = e.big_phi;
  law.phi2 = phi2;
  CompositeSequence seq = sequence_from_rational_law(law);
  // phi2 in degrees, trailing zeros trimmed: "U5(150)", "U13(67.5)"
  const double deg = phi2.radians() * 180.0 / kPi;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", deg);
  seq.name = name + "(" + buf + ")";
  return seq;
}

CompositeSequence catalog_lookup(const std::string& name, double phi2_radians) {
  const CatalogEntry& e = catalog_entry(name);
  if (auto r = snap_to_rational(phi2_radians, 360)) return catalog_lookup(name, *r);
  PhaseLaw law;
  law.n = static_cast<int>(e.big_phi.size()) + 2;
  for (const auto& r : e.big_phi) law.big_phi.push_back(r.radians());
  law.phi2 = phi2_radians;
  CompositeSequence seq = phases_from_law(law);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", phi2_radians * 180.0 / kPi);
  seq.name = name + "(" + buf + ")";
  return seq;
}

Unitary2 composite_from_single(const CompositeSequence& seq, const Unitary2& single) {
  Unitary2 u = Unitary2::identity();
  for (double phi : seq.phases) u = shift_phase(single, phi) * u;
  return u;
}

Unitary2 composite_propagator(const CompositeSequence& seq, const PulseParams& p) {
  return composite_from_single(seq, make_propagator(p));
}

Unitary2 composite_physical_propagator(const CompositeSequence& seq, const PulseSpec& pulse,
                                       double tolerance) {
  return composite_from_single(seq, propagate(pulse, tolerance));
}

CompositeSequence reflect(const CompositeSequence& seq) {
  CompositeSequence out;
  out.name = seq.name;
  out.phases.reserve(seq.phases.size());
  for (double phi : seq.phases) out.phases.push_back(phi == 0.0 ? 0.0 : mod_two_pi(-phi));
  if (seq.exact) {
    out.exact = std::vector<RationalAngle>{};
    for (const auto& r : *seq.exact) out.exact->push_back((-r).mod_two_pi());
  }
  return out;
}

}  // namespace cpseq
