#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cpseq/constants.hpp"

namespace cpseq {

// An angle stored as an exact rational multiple of pi: value = (num/den)*pi.
// Keeps catalog phases bit-exact under the second-difference phase
// arithmetic; converted to floating radians only when fed to numerics.
struct RationalAngle {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0, gcd(num, den) == 1

  RationalAngle() = default;
  RationalAngle(std::int64_t n, std::int64_t d);

  double radians() const { return static_cast<double>(num) / static_cast<double>(den) * kPi; }

  RationalAngle operator+(const RationalAngle& o) const;
  RationalAngle operator-(const RationalAngle& o) const;
  RationalAngle operator*(std::int64_t k) const;
  RationalAngle operator-() const { return {-num, den}; }
  bool operator==(const RationalAngle& o) const { return num == o.num && den == o.den; }

  // Reduces into [0, 2pi), i.e. num/den into [0, 2).
  RationalAngle mod_two_pi() const;

  // "5/6pi", "pi", "0", "-1/3pi"
  std::string str() const;
};

// Parses a rational multiple of pi: "pi", "2pi/3", "5/6", "-1/2pi", "0".
// A bare rational is interpreted in units of pi. Returns nullopt on bad input.
std::optional<RationalAngle> parse_rational_angle(const std::string& token);

// Nearest rational p/q with q <= max_den to x/pi; nullopt if the snap misses
// by more than tol radians.
std::optional<RationalAngle> snap_to_rational(double radians, std::int64_t max_den,
                                              double tol = 1e-9);

}  // namespace cpseq
