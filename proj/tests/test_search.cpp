#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpseq/search.hpp"

using namespace cpseq;

namespace {

double dist_mod_two_pi(double a, double b) {
  const double d = std::abs(std::remainder(a - b, kTwoPi));
  return d;
}

}  // namespace

TEST_CASE("canonicalization flips and reverses deterministically") {
  // first nonzero above pi: whole tuple gets negated mod 2pi
  const std::vector<double> flipped = canonicalize_big_phi({3.5, 1.0});
  CHECK(flipped[0] == doctest::Approx(kTwoPi - 3.5));
  CHECK(flipped[1] == doctest::Approx(kTwoPi - 1.0));

  // reversal picks the lexicographically lower tuple
  const std::vector<double> rev = canonicalize_big_phi({2.0, 1.0});
  CHECK(rev[0] == doctest::Approx(1.0));
  CHECK(rev[1] == doctest::Approx(2.0));

  // involution: canonical form is a fixed point
  const std::vector<double> once = canonicalize_big_phi({3.9, 0.4, 5.1});
  const std::vector<double> twice = canonicalize_big_phi(once);
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i] == doctest::Approx(twice[i]));

  // a palindrome maps to itself (up to the sign flip rule)
  const std::vector<double> pal = canonicalize_big_phi({1.0, 2.0, 1.0});
  CHECK(pal[0] == doctest::Approx(1.0));
  CHECK(pal[1] == doctest::Approx(2.0));
}

TEST_CASE("three-pulse search lands on Phi = pi") {
  SearchOptions opts;
  opts.n = 3;
  opts.target_j0 = 0;
  opts.restarts = 8;
  opts.seed = 11;
  const SearchResult res = search_phases(opts);
  REQUIRE(!res.candidates.empty());
  CHECK(dist_mod_two_pi(res.candidates.front().big_phi[0], kPi) < 1e-6);
}

TEST_CASE("five-pulse anagram search rediscovers the published set") {
  SearchOptions opts;
  opts.n = 5;
  opts.target_j0 = 2;
  opts.anagram = true;
  opts.restarts = 24;
  opts.seed = 2024;
  const SearchResult res = search_phases(opts);
  REQUIRE(!res.candidates.empty());
  CHECK(res.candidates.front().residual < 1e-9);

  // some accepted candidate matches (2,3,2) pi/3 up to the canonical symmetry
  const std::vector<double> want =
      canonicalize_big_phi({2 * kPi / 3, kPi, 2 * kPi / 3});
  bool hit = false;
  for (const SearchCandidate& c : res.candidates) {
    bool all = true;
    for (int i = 0; i < 3; ++i) all = all && dist_mod_two_pi(c.big_phi[i], want[i]) < 1e-6;
    hit = hit || all;
  }
  CHECK(hit);
}

TEST_CASE("search is deterministic for a fixed seed") {
  SearchOptions opts;
  opts.n = 5;
  opts.target_j0 = 2;
  opts.anagram = true;
  opts.restarts = 6;
  opts.seed = 7;
  const SearchResult a = search_phases(opts);
  const SearchResult b = search_phases(opts);
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].residual == b.candidates[i].residual);
    for (std::size_t k = 0; k < a.candidates[i].big_phi.size(); ++k)
      CHECK(a.candidates[i].big_phi[k] == b.candidates[i].big_phi[k]);
  }
}

TEST_CASE("accepted candidates verify independently") {
  SearchOptions opts;
  opts.n = 5;
  opts.target_j0 = 2;
  opts.anagram = true;
  opts.restarts = 12;
  opts.seed = 5;
  const SearchResult res = search_phases(opts);
  REQUIRE(!res.candidates.empty());
  for (const SearchCandidate& c : res.candidates)
    CHECK(verify_universal(c.big_phi, opts.target_j0).passed);
}

TEST_CASE("impossible targets come back empty with a finite best residual") {
  SearchOptions opts;
  opts.n = 3;
  opts.target_j0 = 2;  // no 3-pulse set can do this
  opts.restarts = 4;
  opts.seed = 1;
  const SearchResult res = search_phases(opts);
  CHECK(res.candidates.empty());
  CHECK(res.best_residual > 1e-3);
}

TEST_CASE("input validation") {
  SearchOptions opts;
  opts.n = 4;
  CHECK_THROWS_AS(search_phases(opts), std::invalid_argument);
  opts.n = 1;
  CHECK_THROWS_AS(search_phases(opts), std::invalid_argument);
}

TEST_CASE("candidate formatting prefers rational multiples of pi") {
  SearchCandidate c;
  c.big_phi = {2 * kPi / 3, kPi, 2 * kPi / 3};
  const std::string s = c.format();
  CHECK(s.find("2pi/3") != std::string::npos);
  CHECK(s.find("pi") != std::string::npos);
}
