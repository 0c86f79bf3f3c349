#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ck {

/// Arbitrary-precision integer. All exact arithmetic in the library goes
/// through this type; there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;

/// Raised when a search space (GL enumeration, discrepancy scan, group
/// table) exceeds the configured budget. The message names the estimate.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

inline Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sign_of(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

/// Reduce into [0, m). Requires m >= 1.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Reduce an Int into [0, m) and narrow to int64. Requires 1 <= m <= 2^62.
inline std::int64_t mod_i64(const Int& a, std::int64_t m) {
  return static_cast<std::int64_t>(mod_floor(a, Int(m)));
}

inline std::int64_t mod_i64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Rounded quotient, ties toward the truncated value. Requires b != 0.
inline Int div_round(const Int& a, const Int& b) {
  Int q = a / b;  // truncated
  Int r = a - q * b;
  if (abs(r) * 2 > abs(b)) q += (sign_of(r) == sign_of(b)) ? 1 : -1;
  return q;
}

inline std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Multiplicative inverse of a unit mod m. Throws if gcd(a, m) != 1.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  a = mod_i64(a, m);
  std::int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1)
    throw std::invalid_argument("inverse_mod: " + std::to_string(a) +
                                " is not a unit mod " + std::to_string(m));
  return mod_i64(s0, m);
}

}  // namespace ck
