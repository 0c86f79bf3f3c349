#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ck/int_matrix.hpp"
#include "ck/integers.hpp"
#include "ck/smith.hpp"

namespace ck {

inline constexpr std::int64_t kDefaultSearchBudget = 100'000'000;  // 10^8

/// Finitely generated Z_d-module in canonical form: an ordered divisor
/// chain of factors, each dividing d and > 1. Z_d-rank = number of factors
/// equal to d. Two structures are equal iff their chains (and d) are equal.
struct ZdModuleStructure {
  std::int64_t d = 2;
  std::vector<std::int64_t> factors;

  ZdModuleStructure() = default;

  ZdModuleStructure(std::int64_t modulus, std::vector<std::int64_t> chain)
      : d(modulus), factors(std::move(chain)) {
    if (d < 2) throw std::invalid_argument("ZdModuleStructure: modulus must be >= 2");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i] <= 1 || d % factors[i] != 0)
        throw std::invalid_argument("ZdModuleStructure: factor must divide d and exceed 1");
      if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0)
        throw std::invalid_argument("ZdModuleStructure: factors must form a divisor chain");
    }
  }

  bool trivial() const { return factors.empty(); }

  /// Number of Z_d summands.
  std::size_t rank() const {
    std::size_t r = 0;
    for (auto f : factors)
      if (f == d) ++r;
    return r;
  }

  Int order() const {
    Int o = 1;
    for (auto f : factors) o *= f;
    return o;
  }

  bool operator==(const ZdModuleStructure& o) const {
    return d == o.d && factors == o.factors;
  }

  std::string to_string() const {
    if (factors.empty()) return "trivial";
    std::string s;
    std::size_t i = 0;
    while (i < factors.size()) {
      std::size_t j = i;
      while (j < factors.size() && factors[j] == factors[i]) ++j;
      if (!s.empty()) s += " x ";
      s += "Z_" + std::to_string(factors[i]);
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
    return s;
  }
};

/// Structure of (Z^rows / column image of A) tensor Z_d, read off the SNF
/// diagonal: each entry contributes Z_gcd(entry, d), missing rows beyond
/// the diagonal contribute Z_d.
inline ZdModuleStructure cokernel_mod(const IntMatrix& a, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("cokernel_mod: modulus must be >= 2");
  const auto snf = smith_normal_form(a);
  std::vector<std::int64_t> chain;
  for (const Int& e : snf.diagonal()) {
    std::int64_t g = (e == 0) ? d : static_cast<std::int64_t>(gcd(e, Int(d)));
    if (g > 1) chain.push_back(g);
  }
  for (std::size_t i = std::min(a.rows(), a.cols()); i < a.rows(); ++i)
    chain.push_back(d);
  return ZdModuleStructure(d, std::move(chain));
}

/// Direct sum, recanonicalized into a single divisor chain.
inline ZdModuleStructure direct_sum(const std::vector<ZdModuleStructure>& parts,
                                    std::int64_t d) {
  std::vector<Int> diag;
  for (const auto& p : parts) {
    if (p.d != d) throw std::invalid_argument("direct_sum: modulus mismatch");
    for (auto f : p.factors) diag.emplace_back(f);
  }
  return cokernel_mod(IntMatrix::diagonal(diag), d);
}

/// Dense matrix over Z_d, entries normalized into [0, d).
class ZdMatrix {
public:
  ZdMatrix() : d_(2), rows_(0), cols_(0) {}

  ZdMatrix(std::int64_t d, std::size_t rows, std::size_t cols)
      : d_(check_mod(d)), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

  ZdMatrix(std::int64_t d, std::size_t rows, std::size_t cols,
           std::vector<std::int64_t> entries)
      : d_(check_mod(d)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
      throw std::invalid_argument("ZdMatrix: entry count does not match shape");
    for (auto& x : e_) x = mod_i64(x, d_);
  }

  static ZdMatrix identity(std::int64_t d, std::size_t n) {
    ZdMatrix m(d, n, n);
    if (d > 1)
      for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static ZdMatrix from_int(const IntMatrix& a, std::int64_t d) {
    ZdMatrix m(d, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = mod_i64(a.at(i, j), d);
    return m;
  }

  std::int64_t modulus() const { return d_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const ZdMatrix& o) const {
    return d_ == o.d_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  ZdMatrix operator*(const ZdMatrix& o) const {
    if (d_ != o.d_ || cols_ != o.rows_)
      throw std::invalid_argument("ZdMatrix: shape or modulus mismatch in product");
    ZdMatrix r(d_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::int64_t a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) = mod_i64(r.at(i, j) + a * o.at(k, j), d_);
      }
    return r;
  }

  IntMatrix lift() const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    return m;
  }

private:
  static std::int64_t check_mod(std::int64_t d) {
    if (d < 1) throw std::invalid_argument("ZdMatrix: modulus must be >= 1");
    return d;
  }

  std::int64_t d_;
  std::size_t rows_, cols_;
  std::vector<std::int64_t> e_;
};

/// Determinant in Z_d, computed exactly over Z and reduced. The input is
/// invertible over Z_d iff the result is a unit of Z_d.
inline std::int64_t det_mod(const ZdMatrix& a, std::int64_t d) {
  if (a.modulus() != d) throw std::invalid_argument("det_mod: modulus mismatch");
  if (a.rows() != a.cols()) throw std::invalid_argument("det_mod: matrix is not square");
  return mod_i64(a.lift().determinant(), d);
}

inline bool is_unit_mod(std::int64_t x, std::int64_t d) {
  return gcd_i64(mod_i64(x, d), d) == 1;
}

/// Inverse of an invertible matrix over Z_d via the integer adjugate.
inline ZdMatrix zd_inverse(const ZdMatrix& a) {
  const std::int64_t d = a.modulus();
  if (a.rows() != a.cols()) throw std::invalid_argument("zd_inverse: matrix is not square");
  const std::size_t n = a.rows();
  const std::int64_t det = det_mod(a, d);
  if (!is_unit_mod(det, d))
    throw std::invalid_argument("zd_inverse: determinant is not a unit mod d");
  const std::int64_t dinv = inverse_mod(det, d);
  IntMatrix lifted = a.lift();
  ZdMatrix inv(d, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(mr, mc++) = lifted.at(r, c);
        }
        ++mr;
      }
      Int cof = minor.determinant();
      if ((i + j) % 2 == 1) cof = -cof;
      inv.at(i, j) = mod_i64(mod_i64(cof, d) * dinv, d);
    }
  return inv;
}

/// |GL(n, Z_d)| via the prime-power factorization of d.
inline Int gl_order(std::size_t n, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("gl_order: modulus must be >= 2");
  Int total = 1;
  std::int64_t m = d;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    Int pn = 1;
    for (std::size_t i = 0; i < n; ++i) pn *= p;
    Int glp = 1;  // |GL(n, F_p)| = prod (p^n - p^i)
    Int pi = 1;
    for (std::size_t i = 0; i < n; ++i) {
      glp *= (pn - pi);
      pi *= p;
    }
    Int lift = 1;  // p^((k-1) n^2)
    for (std::size_t i = 0; i < n * n * static_cast<std::size_t>(k - 1); ++i) lift *= p;
    total *= glp * lift;
  }
  if (m > 1) {
    std::int64_t p = m;
    Int pn = 1;
    for (std::size_t i = 0; i < n; ++i) pn *= p;
    Int glp = 1;
    Int pi = 1;
    for (std::size_t i = 0; i < n; ++i) {
      glp *= (pn - pi);
      pi *= p;
    }
    total *= glp;
  }
  return total;
}

/// Restartable stream over GL(n, Z_d) in odometer order (row-major digits,
/// least significant last). Yields each invertible matrix exactly once.
class InvertibleMatrixStream {
public:
  InvertibleMatrixStream(std::size_t n, std::int64_t d,
                         std::int64_t budget = kDefaultSearchBudget)
      : n_(n), d_(d), digits_(n * n, 0), done_(false), first_(true) {
    if (d < 2) throw std::invalid_argument("enumerate_invertible: modulus must be >= 2");
    Int order = gl_order(n, d);
    if (order > budget)
      throw BudgetError("enumerate_invertible: |GL(" + std::to_string(n) + ", Z_" +
                        std::to_string(d) + ")| = " + order.str() +
                        " exceeds budget " + std::to_string(budget));
  }

  /// Next invertible matrix, or nullopt when exhausted.
  std::optional<ZdMatrix> next() {
    while (!done_) {
      if (!first_) advance();
      first_ = false;
      if (done_) break;
      if (invertible()) return ZdMatrix(d_, n_, n_, digits_);
    }
    return std::nullopt;
  }

private:
  void advance() {
    if (n_ == 0) {  // a single empty matrix, then exhaustion
      done_ = true;
      return;
    }
    std::size_t i = digits_.size();
    while (i > 0) {
      --i;
      if (++digits_[i] < d_) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

  bool invertible() const {
    if (n_ == 0) return true;
    if (n_ <= 3) return is_unit_mod(small_det(), d_);
    return is_unit_mod(det_mod(ZdMatrix(d_, n_, n_, digits_), d_), d_);
  }

  // Direct expansion for n <= 3; entries < d so products stay in range for
  // any budget-admissible d.
  std::int64_t small_det() const {
    const auto& e = digits_;
    switch (n_) {
      case 1:
        return e[0];
      case 2:
        return mod_i64(e[0] * e[3] - e[1] * e[2], d_);
      default: {
        std::int64_t t = 0;
        t += mod_i64(e[0] * mod_i64(e[4] * e[8] - e[5] * e[7], d_), d_);
        t -= mod_i64(e[1] * mod_i64(e[3] * e[8] - e[5] * e[6], d_), d_);
        t += mod_i64(e[2] * mod_i64(e[3] * e[7] - e[4] * e[6], d_), d_);
        return mod_i64(t, d_);
      }
    }
  }

  std::size_t n_;
  std::int64_t d_;
  std::vector<std::int64_t> digits_;
  bool done_;
  bool first_;
};

}  // namespace ck
