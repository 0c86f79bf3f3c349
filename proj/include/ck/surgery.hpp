#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/int_matrix.hpp"
#include "ck/integers.hpp"
#include "ck/zmod.hpp"

namespace ck {

/// Rational surgery coefficient p/q in lowest terms, q >= 1 (the sign lives
/// in p). Integer framings are p/1.
struct SurgeryCoefficient {
  Int p;
  Int q;

  SurgeryCoefficient(Int num, Int den) : p(std::move(num)), q(std::move(den)) {
    if (q < 1) throw std::invalid_argument("SurgeryCoefficient: denominator must be >= 1");
    if (gcd(abs(p), q) != 1)
      throw std::invalid_argument("SurgeryCoefficient: p/q must be in lowest terms");
  }

  static SurgeryCoefficient integer(Int framing) {
    return SurgeryCoefficient(std::move(framing), 1);
  }

  bool operator==(const SurgeryCoefficient& o) const { return p == o.p && q == o.q; }
};

/// Weak type-d surgery: coefficient of the form (numerator)/(d*s).
inline bool is_weak_type_d(const SurgeryCoefficient& c, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("is_weak_type_d: d must be >= 2");
  return c.q % d == 0;
}

/// Type-d surgery: additionally the numerator is +-1 mod d.
inline bool is_type_d(const SurgeryCoefficient& c, std::int64_t d) {
  if (!is_weak_type_d(c, d)) return false;
  const std::int64_t r = mod_i64(c.p, d);
  return r == 1 || r == mod_i64(-1, d);
}

/// Alternating integer 3-tensor on n indices, stored on strictly increasing
/// triples; repeated-index entries vanish over Z.
class TripleTensor {
public:
  explicit TripleTensor(std::size_t n = 0) : n_(n) {}

  std::size_t n() const { return n_; }

  /// Accepts indices in any order, 0-based; stores with the permutation sign.
  void set(std::size_t i, std::size_t j, std::size_t k, Int value) {
    check_range(i, j, k);
    if (i == j || j == k || i == k) {
      if (value != 0)
        throw std::invalid_argument("TripleTensor: repeated-index entry must be zero");
      return;
    }
    auto [key, sgn] = sort_key(i, j, k);
    if (sgn < 0) value = -value;
    if (value == 0)
      vals_.erase(key);
    else
      vals_[key] = std::move(value);
  }

  Int mu(std::size_t i, std::size_t j, std::size_t k) const {
    check_range(i, j, k);
    if (i == j || j == k || i == k) return 0;
    auto [key, sgn] = sort_key(i, j, k);
    auto it = vals_.find(key);
    if (it == vals_.end()) return 0;
    return sgn < 0 ? Int(-it->second) : it->second;
  }

  const std::map<std::array<std::size_t, 3>, Int>& entries() const { return vals_; }

  bool is_zero() const { return vals_.empty(); }

  bool operator==(const TripleTensor& o) const { return n_ == o.n_ && vals_ == o.vals_; }

  /// Same tensor with all indices shifted up by `offset` inside rank n + offset.
  TripleTensor shifted(std::size_t offset, std::size_t new_n) const {
    TripleTensor t(new_n);
    for (const auto& [ijk, v] : vals_)
      t.set(ijk[0] + offset, ijk[1] + offset, ijk[2] + offset, v);
    return t;
  }

  /// Relabel indices by perm (old index -> new index).
  TripleTensor permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != n_) throw std::invalid_argument("TripleTensor: bad permutation size");
    TripleTensor t(n_);
    for (const auto& [ijk, v] : vals_) t.set(perm[ijk[0]], perm[ijk[1]], perm[ijk[2]], v);
    return t;
  }

private:
  void check_range(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= n_ || j >= n_ || k >= n_)
      throw std::out_of_range("TripleTensor: index out of range");
  }

  static std::pair<std::array<std::size_t, 3>, int> sort_key(std::size_t i, std::size_t j,
                                                             std::size_t k) {
    int sgn = 1;
    if (i > j) {
      std::swap(i, j);
      sgn = -sgn;
    }
    if (j > k) {
      std::swap(j, k);
      sgn = -sgn;
    }
    if (i > j) {
      std::swap(i, j);
      sgn = -sgn;
    }
    return {{i, j, k}, sgn};
  }

  std::size_t n_;
  std::map<std::array<std::size_t, 3>, Int> vals_;
};

/// Rational surgery description of a closed oriented 3-manifold: framed
/// link with pairwise linking numbers and, for algebraically split
/// presentations, optional triple-linking data.
class SurgeryPresentation {
public:
  SurgeryPresentation() : linking_(0, 0) {}

  SurgeryPresentation(std::vector<SurgeryCoefficient> coeffs, IntMatrix linking,
                      std::optional<TripleTensor> triple = std::nullopt)
      : coeffs_(std::move(coeffs)), linking_(std::move(linking)), triple_(std::move(triple)) {
    const std::size_t n = coeffs_.size();
    if (linking_.rows() != n || linking_.cols() != n)
      throw std::invalid_argument("SurgeryPresentation: linking matrix shape mismatch");
    if (!linking_.is_symmetric())
      throw std::invalid_argument("SurgeryPresentation: linking matrix must be symmetric");
    for (std::size_t i = 0; i < n; ++i)
      if (linking_.at(i, i) != 0)
        throw std::invalid_argument("SurgeryPresentation: linking diagonal must be zero");
    if (triple_) {
      if (triple_->n() != n)
        throw std::invalid_argument("SurgeryPresentation: triple tensor rank mismatch");
      if (!algebraically_split())
        throw std::invalid_argument(
            "SurgeryPresentation: triple data requires an algebraically split link");
    }
  }

  std::size_t n() const { return coeffs_.size(); }
  const std::vector<SurgeryCoefficient>& coeffs() const { return coeffs_; }
  const IntMatrix& linking() const { return linking_; }
  const std::optional<TripleTensor>& triple() const { return triple_; }

  bool algebraically_split() const {
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = i + 1; j < n(); ++j)
        if (linking_.at(i, j) != 0) return false;
    return true;
  }

  bool zero_framed() const {
    for (const auto& c : coeffs_)
      if (c.p != 0 || c.q != 1) return false;
    return true;
  }

  bool operator==(const SurgeryPresentation& o) const {
    return coeffs_ == o.coeffs_ && linking_ == o.linking_ && triple_ == o.triple_;
  }

  /// Reorder components; the triple tensor picks up permutation signs.
  SurgeryPresentation permuted(const std::vector<std::size_t>& perm) const {
    const std::size_t m = n();
    if (perm.size() != m) throw std::invalid_argument("permuted: bad permutation size");
    std::vector<SurgeryCoefficient> cs;
    cs.reserve(m);
    IntMatrix lk(m, m);
    std::vector<std::size_t> inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[perm[i]] = i;
    for (std::size_t i = 0; i < m; ++i) cs.push_back(coeffs_[inv[i]]);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) lk.at(perm[i], perm[j]) = linking_.at(i, j);
    std::optional<TripleTensor> t;
    if (triple_) t = triple_->permuted(perm);
    return SurgeryPresentation(std::move(cs), std::move(lk), std::move(t));
  }

private:
  std::vector<SurgeryCoefficient> coeffs_;
  IntMatrix linking_;
  std::optional<TripleTensor> triple_;
};

/// One weak type-d (or type-d) surgery along a new curve: coefficient
/// q_num/(d*s), linking numbers with the existing components, and optional
/// triple-linking data with pairs of existing components.
struct SurgeryMove {
  enum class Kind { weak_type_d, type_d };

  Kind kind;
  std::int64_t d;
  std::int64_t s;
  Int q_num;
  std::vector<Int> linkings;
  std::optional<std::vector<Int>> triples_with_pairs;  // mu(i,j,new), pairs i<j in lex order

  SurgeryMove(Kind k, std::int64_t d_, std::int64_t s_, Int q, std::vector<Int> lks,
              std::optional<std::vector<Int>> triples = std::nullopt)
      : kind(k), d(d_), s(s_), q_num(std::move(q)), linkings(std::move(lks)),
        triples_with_pairs(std::move(triples)) {
    if (d < 2) throw std::invalid_argument("SurgeryMove: d must be >= 2");
    if (s < 1) throw std::invalid_argument("SurgeryMove: s must be >= 1");
    if (gcd(abs(q_num), Int(d) * s) != 1)
      throw std::invalid_argument(
          "SurgeryMove: numerator must be relatively prime to d and s");
    if (kind == Kind::type_d) {
      const std::int64_t r = mod_i64(q_num, d);
      if (r != 1 && r != mod_i64(-1, d))
        throw std::invalid_argument("SurgeryMove: type-d requires numerator = +-1 mod d");
    }
  }

  SurgeryCoefficient coefficient() const { return SurgeryCoefficient(q_num, Int(d) * s); }
};

/// Presentation matrix A with A_ii = p_i and A_ij = q_i * l_ij; the first
/// homology of the surgered manifold is coker(A).
inline IntMatrix presentation_matrix(const SurgeryPresentation& pres) {
  const std::size_t n = pres.n();
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, i) = pres.coeffs()[i].p;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a.at(i, j) = pres.coeffs()[i].q * pres.linking().at(i, j);
  }
  return a;
}

inline ZdModuleStructure homology_zd(const SurgeryPresentation& pres, std::int64_t d) {
  return cokernel_mod(presentation_matrix(pres), d);
}

struct SurgeryResult {
  SurgeryPresentation presentation;
  bool triple_dropped = false;  // set when existing triple data could not be extended
};

/// Append the surgery curve of `move` to `pres`. Triple data survives only
/// when the move keeps the presentation split and supplies its own
/// triple-linking values; otherwise it is dropped and flagged.
inline SurgeryResult apply_surgery(const SurgeryPresentation& pres, const SurgeryMove& move) {
  const std::size_t n = pres.n();
  if (move.linkings.size() != n)
    throw std::invalid_argument("apply_surgery: linkings vector length mismatch");

  std::vector<SurgeryCoefficient> cs = pres.coeffs();
  cs.push_back(move.coefficient());

  IntMatrix lk(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lk.at(i, j) = pres.linking().at(i, j);
  for (std::size_t i = 0; i < n; ++i) {
    lk.at(n, i) = move.linkings[i];
    lk.at(i, n) = move.linkings[i];
  }

  bool still_split = true;
  for (const Int& l : move.linkings)
    if (l != 0) still_split = false;

  std::optional<TripleTensor> triple;
  bool dropped = false;
  if (pres.triple()) {
    const std::size_t expected = n * (n - 1) / 2;
    // With no existing pair there is nothing to supply, so absence is the
    // empty extension rather than a drop.
    if (still_split && (move.triples_with_pairs || expected == 0)) {
      const std::vector<Int> empty;
      const std::vector<Int>& values =
          move.triples_with_pairs ? *move.triples_with_pairs : empty;
      if (values.size() != expected)
        throw std::invalid_argument("apply_surgery: expected " + std::to_string(expected) +
                                    " triple-linking values for the new component");
      TripleTensor t = pres.triple()->shifted(0, n + 1);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) t.set(i, j, n, values[idx++]);
      triple = std::move(t);
    } else {
      dropped = true;
    }
  }

  return SurgeryResult{SurgeryPresentation(std::move(cs), std::move(lk), std::move(triple)),
                       dropped};
}

/// Block-diagonal union of two presentations; triple tensors concatenate
/// with zero cross terms when both sides carry one.
inline SurgeryPresentation connected_sum(const SurgeryPresentation& a,
                                         const SurgeryPresentation& b) {
  std::vector<SurgeryCoefficient> cs = a.coeffs();
  cs.insert(cs.end(), b.coeffs().begin(), b.coeffs().end());
  IntMatrix lk = IntMatrix::block_diag(a.linking(), b.linking());
  std::optional<TripleTensor> triple;
  if (a.triple() && b.triple()) {
    TripleTensor t = a.triple()->shifted(0, a.n() + b.n());
    for (const auto& [ijk, v] : b.triple()->entries())
      t.set(ijk[0] + a.n(), ijk[1] + a.n(), ijk[2] + a.n(), v);
    triple = std::move(t);
  }
  return SurgeryPresentation(std::move(cs), std::move(lk), std::move(triple));
}

}  // namespace ck
