#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cpseq/sequences.hpp"

using namespace cpseq;

namespace {

std::vector<RationalAngle> exact_phases(const std::string& name, const std::string& variant) {
  const CatalogEntry& e = catalog_entry(name);
  return phases_from_law_exact({static_cast<int>(e.big_phi.size()) + 2, e.big_phi,
                                e.named_variants.at(variant)});
}

void check_exact(const std::vector<RationalAngle>& got, const std::vector<RationalAngle>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    INFO("k = " << i + 1);
    CHECK(got[i] == want[i].mod_two_pi());
  }
}

}  // namespace

TEST_CASE("three-pulse variants: exact realized phases") {
  check_exact(exact_phases("U3", "a"), {{0, 1}, {1, 2}, {2, 1}});  // 0, 90, 360->0
  // second difference Phi_1 = pi: phi = (0, phi2, 2 phi2 + pi)
  check_exact(exact_phases("U3", "b"), {{0, 1}, {0, 1}, {1, 1}});
}

TEST_CASE("five-pulse variants: exact realized phases") {
  // Phi = (2,3,2) pi/3, phi2 = 5pi/6: (0, 5/6, 7/3->1/3, 29/6->5/6, 8->0) pi
  check_exact(exact_phases("U5", "a"), {{0, 1}, {5, 6}, {1, 3}, {5, 6}, {0, 1}});
  // phi2 shifted by pi moves phi_k by (k-1) pi
  check_exact(exact_phases("U5", "b"), {{0, 1}, {11, 6}, {1, 3}, {11, 6}, {0, 1}});
}

TEST_CASE("seven-pulse variant a: exact realized phases") {
  // Phi = (6,4,5,4,6) pi/6, phi2 = 11pi/12
  check_exact(exact_phases("U7", "a"),
              {{0, 1}, {11, 12}, {34, 12}, {65, 12}, {106, 12}, {155, 12}, {216, 12}});
}

TEST_CASE("thirteen-pulse variant a starts at 67.5 degrees") {
  const auto ph = exact_phases("U13", "a");
  REQUIRE(ph.size() == 13);
  CHECK(ph[0] == RationalAngle(0, 1));
  CHECK(ph[1] == RationalAngle(3, 8));  // 67.5 deg
}

TEST_CASE("catalog shape and palindromic second differences") {
  REQUIRE(catalog().size() == 5);
  for (const CatalogEntry& e : catalog()) {
    const int n = static_cast<int>(e.big_phi.size()) + 2;
    CAPTURE(e.name);
    CHECK((n == 3 || n == 5 || n == 7 || n == 13 || n == 25));
    for (std::size_t k = 0; k < e.big_phi.size(); ++k)
      CHECK(e.big_phi[k].mod_two_pi() == e.big_phi[e.big_phi.size() - 1 - k].mod_two_pi());
    CHECK(e.named_variants.count("a") == 1);
    CHECK(e.named_variants.count("b") == 1);
  }
  CHECK(catalog_entry("U25").big_phi.size() == 23);
  CHECK(catalog_entry("U25").j0 == 8);
  CHECK_THROWS_AS(catalog_entry("U9"), std::out_of_range);
}

TEST_CASE("floating law agrees with the exact law") {
  const CatalogEntry& e = catalog_entry("U13");
  PhaseLaw law;
  law.n = 13;
  for (const RationalAngle& a : e.big_phi) law.big_phi.push_back(a.radians());
  law.phi2 = e.named_variants.at("a").radians();
  const CompositeSequence fl = phases_from_law(law);
  const CompositeSequence ex = catalog_lookup("U13", e.named_variants.at("a"));
  REQUIRE(fl.size() == ex.size());
  for (int k = 0; k < fl.size(); ++k)
    CHECK(std::abs(std::remainder(fl.phases[k] - ex.phases[k], kTwoPi)) < 1e-9);
}

TEST_CASE("catalog_lookup by radians snaps to the exact table") {
  const CompositeSequence s = catalog_lookup("U5", 5.0 * kPi / 6.0 + 1e-12);
  REQUIRE(s.exact.has_value());
  CHECK((*s.exact)[1] == RationalAngle(5, 6));
  CHECK(s.name == "U5(150)");
}

TEST_CASE("is_anagram and validate") {
  PhaseLaw ok{5, {2 * kPi / 3, kPi, 2 * kPi / 3}, 0.0};
  CHECK(ok.is_anagram());
  PhaseLaw skew{5, {2 * kPi / 3, kPi, kPi / 3}, 0.0};
  CHECK(!skew.is_anagram());
  // mod-2pi comparison: 7pi/3 == pi/3
  PhaseLaw wrapped{5, {7 * kPi / 3, kPi, kPi / 3}, 0.0};
  CHECK(wrapped.is_anagram(1e-9));

  PhaseLaw bad{4, {kPi}, 0.0};  // wrong count for n
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("phi2 offsets every realized phase difference uniformly") {
  // phi_k(phi2) - phi_k(0) = (k-1) phi2
  const CatalogEntry& e = catalog_entry("U5");
  PhaseLaw base{5, {}, 0.0};
  for (const RationalAngle& a : e.big_phi) base.big_phi.push_back(a.radians());
  PhaseLaw offset = base;
  offset.phi2 = 0.37;
  const CompositeSequence p0 = phases_from_law(base);
  const CompositeSequence p1 = phases_from_law(offset);
  for (int k = 0; k < 5; ++k) {
    const double d = std::remainder(p1.phases[k] - p0.phases[k] - k * 0.37, kTwoPi);
    CHECK(std::abs(d) < 1e-12);
  }
}

TEST_CASE("composite of ideal inversions with the three-pulse set") {
  // epsilon = 0: each pulse is a perfect inversion and the composite stays one
  const CompositeSequence seq = catalog_lookup("U3", RationalAngle(1, 2));
  const Unitary2 u = composite_propagator(seq, {0.0, 0.2, -0.4});
  CHECK(std::abs(u.u11) < 1e-14);
  // epsilon = 1: every pulse is diagonal, so is the product
  const Unitary2 v = composite_propagator(seq, {1.0, 0.2, -0.4});
  CHECK(std::abs(v.u12) < 1e-14);
}

TEST_CASE("five-pulse set keeps infidelity tiny at epsilon = 0.1") {
  const CompositeSequence seq = catalog_lookup("U5", RationalAngle(5, 6));
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double alpha = -kPi + kTwoPi * i / 64.0;
    const Unitary2 u = composite_propagator(seq, {0.1, alpha, 0.0});
    worst = std::max(worst, std::norm(u.u11));
  }
  // order-6 scaling: |u11|^2 ~ eps^6 = 1e-6 up to a modest prefactor,
  // versus eps^2 = 1e-2 for the single pulse
  CHECK(worst < 1e-4);
  CHECK(worst > 1e-9);  // and it is genuinely nonzero
}

TEST_CASE("composite_from_single matches composite_propagator") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uang(-kPi, kPi);
  const CompositeSequence seq = catalog_lookup("U7", RationalAngle(11, 12));
  for (int i = 0; i < 50; ++i) {
    const PulseParams p{0.3, uang(rng), uang(rng)};
    const Unitary2 a = composite_propagator(seq, p);
    const Unitary2 b = composite_from_single(seq, make_propagator(p));
    CHECK(a.max_abs_diff(b) < 1e-13);
  }
}

TEST_CASE("physical composite of a resonant pi pulse inverts") {
  const CompositeSequence seq = catalog_lookup("U5", RationalAngle(5, 6));
  const PulseSpec pi_pulse = resonant_pi_pulse(kTwoPi * 50e3);
  const Unitary2 u = composite_physical_propagator(seq, pi_pulse);
  CHECK(std::abs(u.u11) < 1e-9);
}

TEST_CASE("physical composite beats a single pulse off resonance") {
  PulseSpec p = resonant_pi_pulse(kTwoPi * 50e3);
  p.detuning0 = kTwoPi * 10e3;
  const double single = std::norm(propagate(p).u11);  // infidelity of one pulse
  const CompositeSequence seq = catalog_lookup("U5", RationalAngle(5, 6));
  const double composite = std::norm(composite_physical_propagator(seq, p).u11);
  CHECK(composite < single / 10.0);
}

TEST_CASE("reflect is an involution and keeps exactness") {
  const CompositeSequence seq = catalog_lookup("U5", RationalAngle(5, 6));
  const CompositeSequence r = reflect(seq);
  REQUIRE(r.exact.has_value());
  CHECK(r.phases[0] == 0.0);
  for (int k = 1; k < seq.size(); ++k) {
    const double d = std::remainder(r.phases[k] + seq.phases[k], kTwoPi);
    CHECK(std::abs(d) < 1e-12);
  }
  const CompositeSequence rr = reflect(r);
  for (int k = 0; k < seq.size(); ++k)
    CHECK(rr.phases[k] == doctest::Approx(seq.phases[k]).epsilon(1e-12));
}

TEST_CASE("reflection mirrors the detuning profile") {
  const CompositeSequence seq = catalog_lookup("U5", RationalAngle(5, 6));
  const CompositeSequence r = reflect(seq);
  PulseSpec p = resonant_pi_pulse(kTwoPi * 50e3);
  for (double dk : {5e3, 17e3, 33e3}) {
    p.detuning0 = kTwoPi * dk;
    const double plus = std::norm(composite_physical_propagator(seq, p).u12);
    p.detuning0 = -kTwoPi * dk;
    const double minus = std::norm(composite_physical_propagator(r, p).u12);
    CHECK(plus == doctest::Approx(minus).epsilon(1e-9));
  }
}
