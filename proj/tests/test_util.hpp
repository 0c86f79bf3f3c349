#pragma once

// Shared brute-force oracles and generators for the test suites. These
// stay independent of the library code paths they check: module structure
// is verified through order profiles of explicitly enumerated quotients,
// and invertibility over Z_d through column closures, neither of which
// touches the Smith form or determinant code.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ck/int_matrix.hpp"
#include "ck/zmod.hpp"

namespace ck_test {

using ck::Int;
using ck::IntMatrix;
using ck::ZdModuleStructure;

// Subgroup of Z_d^r generated by the given vectors, as a set of encoded
// tuples (base-d digits). Requires d^r to stay small.
inline std::set<std::int64_t> subgroup_closure(const std::vector<std::vector<std::int64_t>>& gens,
                                               std::int64_t d, std::size_t r) {
  auto encode = [&](const std::vector<std::int64_t>& v) {
    std::int64_t code = 0;
    for (std::size_t i = 0; i < r; ++i) code = code * d + v[i];
    return code;
  };
  std::set<std::int64_t> seen;
  std::vector<std::vector<std::int64_t>> frontier;
  std::vector<std::int64_t> zero(r, 0);
  seen.insert(encode(zero));
  frontier.push_back(zero);
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      std::vector<std::int64_t> nxt(r);
      for (std::size_t i = 0; i < r; ++i) nxt[i] = (cur[i] + g[i]) % d;
      if (seen.insert(encode(nxt)).second) frontier.push_back(nxt);
    }
  }
  return seen;
}

// Checks that Z_d^rows / <columns of A> has the claimed structure, by
// comparing group order and the order profile #{x : m*x = 0} for every
// m dividing d. Order profiles determine finite abelian groups.
inline bool cokernel_matches_bruteforce(const IntMatrix& a, std::int64_t d,
                                        const ZdModuleStructure& claimed) {
  const std::size_t r = a.rows();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= d;  // caller keeps d^r small

  std::vector<std::vector<std::int64_t>> gens;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<std::int64_t> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = ck::mod_i64(a.at(i, j), d);
    gens.push_back(std::move(col));
  }
  const auto sub = subgroup_closure(gens, d, r);
  const std::int64_t quotient_order = total / static_cast<std::int64_t>(sub.size());
  if (Int(quotient_order) != claimed.order()) return false;

  // decode helper
  auto decode = [&](std::int64_t code) {
    std::vector<std::int64_t> v(r);
    for (std::size_t i = r; i-- > 0;) {
      v[i] = code % d;
      code /= d;
    }
    return v;
  };
  for (std::int64_t m = 1; m <= d; ++m) {
    if (d % m != 0) continue;
    std::int64_t killed = 0;
    for (std::int64_t code = 0; code < total; ++code) {
      auto v = decode(code);
      for (auto& x : v) x = (x * m) % d;
      std::int64_t enc = 0;
      for (std::size_t i = 0; i < r; ++i) enc = enc * d + v[i];
      if (sub.count(enc)) ++killed;
    }
    std::int64_t expected = 1;
    for (auto f : claimed.factors) expected *= ck::gcd_i64(f, m);
    if (killed / static_cast<std::int64_t>(sub.size()) != expected) return false;
  }
  return true;
}

// Invertibility over Z_d without determinants: the columns must generate
// all of Z_d^n.
inline bool columns_generate(const ck::ZdMatrix& m) {
  const std::size_t n = m.rows();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m.modulus();
  std::vector<std::vector<std::int64_t>> gens;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int64_t> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = m.at(i, j);
    gens.push_back(std::move(col));
  }
  return static_cast<std::int64_t>(subgroup_closure(gens, m.modulus(), n).size()) == total;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo,
                               int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
  return m;
}

// Random unimodular matrix: a product of elementary row operations
// (transvections and swaps) applied to the identity.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int ops = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int t = 0; t < ops; ++t) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    switch (kind(rng)) {
      case 0: {  // row i += c * row j
        const Int c = coef(rng);
        for (std::size_t k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
        break;
      }
      case 1:  // swap rows
        for (std::size_t k = 0; k < n; ++k) std::swap(u.at(i, k), u.at(j, k));
        break;
      default:  // negate a row
        for (std::size_t k = 0; k < n; ++k) u.at(i, k) = -u.at(i, k);
    }
  }
  return u;
}

}  // namespace ck_test
