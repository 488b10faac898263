#include "cpseq/series.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cpseq {

HarmonicPolynomial HarmonicPolynomial::term(int truncation, int j, int harmonic2, Complex amp) {
  HarmonicPolynomial p(truncation);
  p.add_term(j, harmonic2, amp);
  return p;
}

void HarmonicPolynomial::add_term(int j, int harmonic2, Complex amp) {
  if (j > truncation_) return;
  coeffs_[{j, harmonic2}] += amp;
}

HarmonicPolynomial HarmonicPolynomial::operator+(const HarmonicPolynomial& o) const {
  HarmonicPolynomial out(std::min(truncation_, o.truncation_));
  out.coeffs_ = coeffs_;
  for (const auto& [k, a] : o.coeffs_) out.coeffs_[k] += a;
  return out;
}

HarmonicPolynomial HarmonicPolynomial::operator*(const HarmonicPolynomial& o) const {
  HarmonicPolynomial out(std::min(truncation_, o.truncation_));
  for (const auto& [k1, a1] : coeffs_) {
    if (k1.first > out.truncation_) continue;
    for (const auto& [k2, a2] : o.coeffs_) {
      const int j = k1.first + k2.first;
      if (j > out.truncation_) break;  // map is ordered by j first
      out.coeffs_[{j, k1.second + k2.second}] += a1 * a2;
    }
  }
  out.prune();
  return out;
}

HarmonicPolynomial HarmonicPolynomial::operator-() const {
  HarmonicPolynomial out(truncation_);
  for (const auto& [k, a] : coeffs_) out.coeffs_[k] = -a;
  return out;
}

HarmonicPolynomial HarmonicPolynomial::rotated(int shift2, Complex amp) const {
  HarmonicPolynomial out(truncation_);
  for (const auto& [k, a] : coeffs_) out.coeffs_[{k.first, k.second + shift2}] = a * amp;
  return out;
}

void HarmonicPolynomial::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = std::abs(it->second) < kPruneTol ? coeffs_.erase(it) : std::next(it);
}

Complex HarmonicPolynomial::evaluate(double epsilon, double atilde) const {
  Complex v{0.0, 0.0};
  for (const auto& [k, a] : coeffs_)
    v += a * std::pow(epsilon, k.first) * std::polar(1.0, 0.5 * k.second * atilde);
  return v;
}

double HarmonicPolynomial::max_harmonic_magnitude(int j) const {
  double m = 0.0;
  for (auto it = coeffs_.lower_bound({j, INT_MIN}); it != coeffs_.end() && it->first.first == j;
       ++it)
    m = std::max(m, std::abs(it->second));
  return m;
}

double HarmonicPolynomial::max_coefficient_magnitude(int j) const {
  std::vector<std::pair<int, Complex>> terms;
  for (auto it = coeffs_.lower_bound({j, INT_MIN}); it != coeffs_.end() && it->first.first == j;
       ++it)
    terms.emplace_back(it->first.second, it->second);
  if (terms.empty()) return 0.0;
  if (terms.size() == 1) return std::abs(terms.front().second);

  const auto magnitude = [&](double atilde) {
    Complex v{0.0, 0.0};
    for (const auto& [h2, a] : terms) v += a * std::polar(1.0, 0.5 * h2 * atilde);
    return std::abs(v);
  };
  // harmonics are half-integers: period 4pi; coarse grid then golden-section
  const int grid = 4096;
  double best_x = 0.0, best = -1.0;
  for (int i = 0; i < grid; ++i) {
    const double x = 2.0 * kTwoPi * i / grid;
    const double v = magnitude(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  double lo = best_x - 2.0 * kTwoPi / grid, hi = best_x + 2.0 * kTwoPi / grid;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = magnitude(a), fb = magnitude(b);
  for (int it = 0; it < 120; ++it) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = magnitude(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = magnitude(a);
    }
  }
  return std::max({best, fa, fb});
}

ChiPhases chi_from_big_phi(const std::vector<double>& big_phi) {
  ChiPhases out;
  double acc = 0.0;
  for (double phi : big_phi) {
    acc += phi;
    out.chi.push_back(acc);
  }
  return out;
}

namespace {

// sqrt(1 - eps^2) as an epsilon series at harmonic 0
HarmonicPolynomial sqrt_series(int truncation) {
  HarmonicPolynomial s(truncation);
  double coeff = 1.0;  // binomial(1/2, k) (-1)^k
  s.add_term(0, 0, coeff);
  for (int k = 1; 2 * k <= truncation; ++k) {
    coeff *= -(0.5 - (k - 1)) / k;  // binomial recurrence, sign folded in
    s.add_term(2 * k, 0, coeff);
  }
  return s;
}

struct SeriesMatrix2 {
  HarmonicPolynomial m11, m12, m21, m22;
};

}  // namespace

HarmonicPolynomial expand_u11(const std::vector<double>& big_phi, int truncation) {
  if (truncation < 1) throw std::invalid_argument("expand_u11: truncation must be >= 1");
  if (truncation > kMaxTruncation)
    throw std::length_error("expand_u11: truncation above configured cap");

  const int n = static_cast<int>(big_phi.size()) + 2;
  const HarmonicPolynomial eps = HarmonicPolynomial::term(truncation, 1, 0, 1.0);
  const HarmonicPolynomial root = sqrt_series(truncation);
  const ChiPhases chis = chi_from_big_phi(big_phi);

  // running product, seeded with the rightmost U(0,0)
  SeriesMatrix2 m{eps, root, -root, eps};
  for (int k = 0; k <= n - 2; ++k) {
    const double chi = k == 0 ? 0.0 : chis.chi[k - 1];
    const Complex p = std::polar(1.0, -0.5 * chi);
    // X = R(chi_k + atilde) * M : row 1 gains e^{-i(chi+atilde)/2},
    // row 2 the conjugate
    SeriesMatrix2 x{m.m11.rotated(-1, p), m.m12.rotated(-1, p),
                    m.m21.rotated(+1, std::conj(p)), m.m22.rotated(+1, std::conj(p))};
    // M = U(0,0) * X
    m = SeriesMatrix2{eps * x.m11 + root * x.m21, eps * x.m12 + root * x.m22,
                      eps * x.m21 + (-root) * x.m11, eps * x.m22 + (-root) * x.m12};
  }
  HarmonicPolynomial u11 = m.m11;
  u11.prune();
  return u11;
}

std::string UniversalityReport::to_text() const {
  std::ostringstream os;
  os << "n: " << n << "\n";
  os << "claimed_j0: " << claimed_j0 << "\n";
  os << "j0_achieved: " << j0_achieved << "\n";
  os << "passed: " << (passed ? "true" : "false") << "\n";
  if (claimed_j0 == 0) os << "minimized_first_order: " << minimized_first_order << "\n";
  for (const auto& [j, r] : residuals) os << "residual_order_" << j << ": " << r << "\n";
  return os.str();
}

UniversalityReport verify_universal(const std::vector<double>& big_phi, int claimed_j0) {
  UniversalityReport rep;
  rep.n = static_cast<int>(big_phi.size()) + 2;
  rep.claimed_j0 = claimed_j0;

  const int truncation = std::max(claimed_j0 + 1, 1);
  const HarmonicPolynomial u11 = expand_u11(big_phi, truncation);

  rep.minimized_first_order = u11.max_coefficient_magnitude(1);
  for (int j = 1; j <= truncation; ++j) rep.residuals.emplace_back(j, u11.max_harmonic_magnitude(j));

  rep.j0_achieved = 0;
  for (const auto& [j, r] : rep.residuals) {
    if (r >= kNullifyTol) break;
    rep.j0_achieved = j;
  }
  if (claimed_j0 == 0)
    rep.passed = std::abs(rep.minimized_first_order - 1.0) < kNullifyTol;
  else
    rep.passed = rep.j0_achieved >= claimed_j0;
  return rep;
}

double oracle_scaling(const CompositeSequence& seq, const std::vector<double>& eps_grid,
                      int alpha_points) {
  if (eps_grid.size() < 4)
    throw std::invalid_argument("oracle_scaling: need at least 4 epsilon points");
  for (double e : eps_grid)
    if (!(e > 0.0 && e <= 0.2))
      throw std::invalid_argument("oracle_scaling: epsilon values must lie in (0, 0.2]");

  std::vector<double> lx, ly;
  for (double eps : eps_grid) {
    double worst = 0.0;
    for (int i = 0; i < alpha_points; ++i) {
      const double alpha = kTwoPi * i / alpha_points;
      const Unitary2 u = composite_propagator(seq, {eps, alpha, 0.0});
      worst = std::max(worst, std::norm(u.u11));  // infidelity 1 - P
    }
    if (worst == 0.0) continue;
    lx.push_back(std::log(eps));
    ly.push_back(std::log(worst));
  }
  if (lx.empty()) return std::numeric_limits<double>::infinity();

  const auto npts = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
}

double phi2_alpha_equivalence(const PhaseLaw& law, int samples, unsigned long long seed) {
  if (samples < 1) throw std::invalid_argument("phi2_alpha_equivalence: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ueps(0.0, 1.0);
  std::uniform_real_distribution<double> uang(0.0, kTwoPi);

  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double eps = ueps(rng);
    const double alpha = uang(rng);
    const double beta = uang(rng);
    const double delta = uang(rng);

    PhaseLaw shifted = law;
    shifted.phi2 = law.phi2 + delta;
    const Unitary2 a = composite_propagator(phases_from_law(shifted), {eps, alpha, beta});
    const Unitary2 b = composite_propagator(phases_from_law(law), {eps, alpha - delta / 2.0, beta});
    worst = std::max(worst, std::abs(std::abs(a.u11) - std::abs(b.u11)));
  }
  return worst;
}

}  // namespace cpseq
