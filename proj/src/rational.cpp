#include "cpseq/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cpseq {

RationalAngle::RationalAngle(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("RationalAngle: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

RationalAngle RationalAngle::operator+(const RationalAngle& o) const {
  return {num * o.den + o.num * den, den * o.den};
}

RationalAngle RationalAngle::operator-(const RationalAngle& o) const {
  return {num * o.den - o.num * den, den * o.den};
}

RationalAngle RationalAngle::operator*(std::int64_t k) const { return {num * k, den}; }

RationalAngle RationalAngle::mod_two_pi() const {
  std::int64_t r = num % (2 * den);
  if (r < 0) r += 2 * den;
  return {r, den};
}

std::string RationalAngle::str() const {
  if (num == 0) return "0";
  std::string s;
  if (num == -1)
    s = "-";
  else if (num != 1)
    s = std::to_string(num);
  s += "pi";
  if (den != 1) s += "/" + std::to_string(den);
  return s;
}

std::optional<RationalAngle> parse_rational_angle(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return std::nullopt;

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  // Strip one "pi" wherever it appears ("pi", "2pi/3", "5/6pi").
  if (auto p = s.find("pi"); p != std::string::npos) s.erase(p, 2);

  std::int64_t num = 1, den = 1;
  if (!s.empty()) {
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      const std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
      if (!ns.empty()) {
        num = std::stoll(ns, &used);
        if (used != ns.size()) return std::nullopt;
      }
      if (slash != std::string::npos) {
        const std::string ds = s.substr(slash + 1);
        den = std::stoll(ds, &used);
        if (used != ds.size() || den == 0) return std::nullopt;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return RationalAngle{neg ? -num : num, den};
}

std::optional<RationalAngle> snap_to_rational(double radians, std::int64_t max_den, double tol) {
  const double x = radians / kPi;
  RationalAngle best{0, 1};
  double best_err = std::abs(x) * kPi;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const std::int64_t p = static_cast<std::int64_t>(std::llround(x * static_cast<double>(q)));
    const double err = std::abs(radians - static_cast<double>(p) / static_cast<double>(q) * kPi);
    if (err < best_err) {
      best = RationalAngle{p, q};
      best_err = err;
    }
  }
  if (best_err > tol) return std::nullopt;
  return best;
}

}  // namespace cpseq
