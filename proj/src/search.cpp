#include "cpseq/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cpseq {

namespace {

double mod_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (kTwoPi - r < 1e-9) r = 0.0;
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double frac(double x) { return x - std::floor(x); }

// palindromic expansion of the free coordinates when the anagram
// constraint is on
std::vector<double> expand_coords(const std::vector<double>& x, int m, bool anagram) {
  if (!anagram) return x;
  std::vector<double> full(m);
  for (int i = 0; i < m; ++i) full[i] = x[std::min(i, m - 1 - i)];
  return full;
}

struct Objective {
  int target_j0;
  double weight;

  double operator()(const std::vector<double>& big_phi) const {
    const HarmonicPolynomial u11 = expand_u11(big_phi, target_j0 + 1);
    double f = 0.0;
    for (const auto& [k, a] : u11.coefficients())
      if (k.first <= target_j0) f += std::norm(a);
    f += weight * u11.max_coefficient_magnitude(target_j0 + 1);
    return f;
  }
};

// pure nullification term, used by the refinement stage: the weighted
// objective trades a ~weight-sized residual against the next order, so a
// second descent on this term alone is needed to reach the floor
struct NullifyObjective {
  int target_j0;

  double operator()(const std::vector<double>& big_phi) const {
    const HarmonicPolynomial u11 = expand_u11(big_phi, std::max(target_j0, 1));
    if (target_j0 == 0) return u11.max_coefficient_magnitude(1);
    double f = 0.0;
    for (const auto& [k, a] : u11.coefficients())
      if (k.first <= target_j0) f += std::norm(a);
    return f;
  }
};

double residual_of(const std::vector<double>& big_phi, int target_j0) {
  if (target_j0 < 1) return 0.0;
  const HarmonicPolynomial u11 = expand_u11(big_phi, target_j0);
  double r = 0.0;
  for (int j = 1; j <= target_j0; ++j) r = std::max(r, u11.max_harmonic_magnitude(j));
  return r;
}

}  // namespace

std::vector<double> canonicalize_big_phi(const std::vector<double>& big_phi) {
  std::vector<double> v;
  v.reserve(big_phi.size());
  for (double x : big_phi) v.push_back(mod_two_pi(x));

  const auto first_nonzero = [](const std::vector<double>& t) {
    for (double x : t)
      if (x > 1e-9) return x;
    return 0.0;
  };
  if (first_nonzero(v) > kPi) {
    for (double& x : v) x = x == 0.0 ? 0.0 : mod_two_pi(kTwoPi - x);
  }
  std::vector<double> rev(v.rbegin(), v.rend());
  if (std::lexicographical_compare(rev.begin(), rev.end(), v.begin(), v.end())) v = rev;
  return v;
}

std::string SearchCandidate::format() const {
  std::ostringstream os;
  os.precision(12);
  os << residual << " ";
  bool all_rational = true;
  std::vector<RationalAngle> rats;
  for (double x : big_phi) {
    auto r = snap_to_rational(x, 24);
    if (!r) {
      all_rational = false;
      break;
    }
    rats.push_back(*r);
  }
  for (std::size_t i = 0; i < big_phi.size(); ++i) {
    if (i) os << ",";
    if (all_rational)
      os << rats[i].str();
    else
      os << big_phi[i];
  }
  return os.str();
}

SearchResult search_phases(const SearchOptions& opts) {
  if (opts.n < 3 || opts.n % 2 == 0)
    throw std::invalid_argument("search_phases: n must be odd and >= 3");
  if (opts.target_j0 < 0) throw std::invalid_argument("search_phases: target_j0 must be >= 0");

  const int m = opts.n - 2;
  const int dims = opts.anagram ? (m + 1) / 2 : m;
  const Objective objective{opts.target_j0, opts.next_order_weight};

  // Kronecker low-discrepancy starts, offset deterministically by the seed
  std::vector<double> gamma(dims), offset(dims);
  static constexpr int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                   41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83};
  for (int i = 0; i < dims; ++i) {
    gamma[i] = frac(std::sqrt(static_cast<double>(primes[i % 23])));
    offset[i] =
        static_cast<double>(splitmix64(opts.seed + static_cast<std::uint64_t>(i))) / 1.8446744073709552e19;
  }

  std::vector<SearchCandidate> found(opts.restarts);
  std::vector<char> kept(opts.restarts, 0);
  std::vector<double> best_residuals(opts.restarts, std::numeric_limits<double>::infinity());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<double> x(dims);
    for (int i = 0; i < dims; ++i) x[i] = kTwoPi * frac(offset[i] + (r + 1) * gamma[i]);

    int evals = 0;
    const auto descend = [&](auto&& f, double initial_step) {
      const auto eval = [&](const std::vector<double>& pt) {
        ++evals;
        return f(expand_coords(pt, m, opts.anagram));
      };
      double fx = eval(x);
      double step = initial_step;
      while (step > 1e-11 && evals < opts.max_evals_per_restart) {
        bool improved = false;
        for (int i = 0; i < dims; ++i) {
          for (double sgn : {+1.0, -1.0}) {
            std::vector<double> y = x;
            y[i] = mod_two_pi(y[i] + sgn * step);
            const double fy = eval(y);
            if (fy < fx) {
              x = y;
              fx = fy;
              improved = true;
            }
          }
        }
        if (!improved) step *= 0.5;
      }
    };

    descend(objective, 0.6);
    descend(NullifyObjective{opts.target_j0}, 1e-2);

    std::vector<double> full = expand_coords(x, m, opts.anagram);

    // snap-to-rational polish: accept only if it does not worsen the fit
    std::vector<double> snapped = full;
    bool snap_ok = true;
    for (double& v : snapped) {
      auto rat = snap_to_rational(v, 24, 1e-6);
      if (!rat) {
        snap_ok = false;
        break;
      }
      v = rat->mod_two_pi().radians();
    }
    const NullifyObjective nullify{opts.target_j0};
    if (snap_ok && nullify(snapped) <= nullify(full) + 1e-15) full = snapped;

    SearchCandidate cand;
    cand.big_phi = canonicalize_big_phi(full);
    cand.residual = residual_of(cand.big_phi, opts.target_j0);
    const HarmonicPolynomial u11 = expand_u11(cand.big_phi, opts.target_j0 + 1);
    cand.next_order_magnitude = u11.max_coefficient_magnitude(opts.target_j0 + 1);
    cand.objective = objective(cand.big_phi);
    best_residuals[r] = opts.target_j0 == 0 ? cand.next_order_magnitude : cand.residual;
    if (cand.residual < opts.accept_tol) {
      found[r] = cand;
      kept[r] = 1;
    }
  }

  SearchResult result;
  result.best_residual = *std::min_element(best_residuals.begin(), best_residuals.end());
  for (int r = 0; r < opts.restarts; ++r)
    if (kept[r]) result.candidates.push_back(found[r]);

  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const SearchCandidate& a, const SearchCandidate& b) {
              if (a.residual != b.residual) return a.residual < b.residual;
              return a.big_phi < b.big_phi;
            });
  // dedup near-identical canonical tuples
  const auto near = [](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > 1e-6) return false;
    return true;
  };
  std::vector<SearchCandidate> unique;
  for (auto& c : result.candidates) {
    bool dup = false;
    for (const auto& u : unique)
      if (near(c.big_phi, u.big_phi)) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(std::move(c));
  }
  result.candidates = std::move(unique);
  return result;
}

}  // namespace cpseq
