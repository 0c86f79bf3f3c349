#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ck/int_matrix.hpp"
#include "ck/integers.hpp"

namespace ck {

/// Smith normal form U*A*V = D with U, V unimodular and the diagonal of D
/// a nonnegative divisor chain d1 | d2 | ... | dk.
struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;

  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    const std::size_t k = std::min(D.rows(), D.cols());
    d.reserve(k);
    for (std::size_t i = 0; i < k; ++i) d.push_back(D.at(i, i));
    return d;
  }
};

namespace detail {

class SmithWorker {
public:
  explicit SmithWorker(const IntMatrix& a)
      : b_(a),
        u_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())) {}

  SmithForm run() {
    const std::size_t steps = std::min(b_.rows(), b_.cols());
    for (std::size_t t = 0; t < steps; ++t)
      if (!reduce_pivot(t)) break;
    for (std::size_t t = 0; t < steps; ++t)
      if (b_.at(t, t) < 0) negate_row(t);
    return SmithForm{std::move(b_), std::move(u_), std::move(v_)};
  }

private:
  // Pivot rule: smallest nonzero absolute value in the trailing submatrix,
  // ties broken by row-major position. Keeps the output deterministic.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < b_.rows(); ++i)
      for (std::size_t j = t; j < b_.cols(); ++j) {
        const Int& x = b_.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = std::move(ax);
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  // Clears row t and column t onto the pivot, then enforces that the pivot
  // divides the rest of the trailing submatrix. Returns false when the
  // trailing submatrix is entirely zero.
  bool reduce_pivot(std::size_t t) {
    for (;;) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) return false;
      if (pi != t) swap_rows(t, pi);
      if (pj != t) swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < b_.rows(); ++i) {
        if (b_.at(i, t) == 0) continue;
        Int q = div_round(b_.at(i, t), b_.at(t, t));
        if (q != 0) row_axpy(i, t, q);
        if (b_.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < b_.cols(); ++j) {
        if (b_.at(t, j) == 0) continue;
        Int q = div_round(b_.at(t, j), b_.at(t, t));
        if (q != 0) col_axpy(j, t, q);
        if (b_.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // leftover remainders become the next pivot

      // Divisor-chain repair: fold a non-multiple into column t and redo.
      const Int& p = b_.at(t, t);
      bool chained = true;
      for (std::size_t i = t + 1; chained && i < b_.rows(); ++i)
        for (std::size_t j = t + 1; j < b_.cols(); ++j)
          if (b_.at(i, j) % p != 0) {
            add_col(t, j);
            chained = false;
            break;
          }
      if (chained) return true;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < b_.cols(); ++k) std::swap(b_.at(i, k), b_.at(j, k));
    for (std::size_t k = 0; k < u_.cols(); ++k) std::swap(u_.at(i, k), u_.at(j, k));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < b_.rows(); ++k) std::swap(b_.at(k, i), b_.at(k, j));
    for (std::size_t k = 0; k < v_.rows(); ++k) std::swap(v_.at(k, i), v_.at(k, j));
  }

  // row i -= q * row t
  void row_axpy(std::size_t i, std::size_t t, const Int& q) {
    for (std::size_t k = 0; k < b_.cols(); ++k) b_.at(i, k) -= q * b_.at(t, k);
    for (std::size_t k = 0; k < u_.cols(); ++k) u_.at(i, k) -= q * u_.at(t, k);
  }

  // col j -= q * col t
  void col_axpy(std::size_t j, std::size_t t, const Int& q) {
    for (std::size_t k = 0; k < b_.rows(); ++k) b_.at(k, j) -= q * b_.at(k, t);
    for (std::size_t k = 0; k < v_.rows(); ++k) v_.at(k, j) -= q * v_.at(k, t);
  }

  // col i += col j
  void add_col(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < b_.rows(); ++k) b_.at(k, i) += b_.at(k, j);
    for (std::size_t k = 0; k < v_.rows(); ++k) v_.at(k, i) += v_.at(k, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < b_.cols(); ++k) b_.at(i, k) = -b_.at(i, k);
    for (std::size_t k = 0; k < u_.cols(); ++k) u_.at(i, k) = -u_.at(i, k);
  }

  IntMatrix b_, u_, v_;
};

}  // namespace detail

/// Deterministic Smith normal form of an arbitrary integer matrix.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  return detail::SmithWorker(a).run();
}

}  // namespace ck
