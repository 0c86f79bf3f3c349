#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/int_matrix.hpp"
#include "ck/integers.hpp"
#include "ck/link.hpp"
#include "ck/zmod.hpp"

namespace ck {

/// Builds the checkerboard data of a connected diagram: faces traced from
/// the counterclockwise rotation encoded by the PD slots, a 2-coloring,
/// and the Goeritz matrix over the white regions.
class GoeritzBuilder {
public:
  explicit GoeritzBuilder(const LinkDiagram& link) : link_(link) {
    if (link.crossings().empty())
      throw std::invalid_argument("goeritz_matrix: diagram has no crossings");
    if (link.split_factors().size() != 1)
      throw std::invalid_argument("goeritz_matrix: diagram must be connected (split unions "
                                  "are factored upstream)");
    trace_faces();
    color_faces();
  }

  /// Goeritz matrix over the white regions with the first one deleted.
  IntMatrix matrix() const {
    const std::size_t m = white_faces_.size();
    IntMatrix full(m, m);
    const std::size_t nx = link_.crossings().size();
    for (std::size_t x = 0; x < nx; ++x) {
      const int t0 = white_corner_[x];  // white corners are t0 and t0+2
      const std::size_t w1 = white_index_.at(corner_face_[4 * x + t0]);
      const std::size_t w2 = white_index_.at(corner_face_[4 * x + t0 + 2]);
      if (w1 == w2) continue;
      // Incidence: +1 when rotating the under-strand counterclockwise onto
      // the over-strand sweeps the white corners (they sit at 0 and 2).
      const int eta = t0 == 0 ? 1 : -1;
      full.at(w1, w2) -= eta;
      full.at(w2, w1) -= eta;
    }
    for (std::size_t i = 0; i < m; ++i) {
      Int diag = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) diag -= full.at(i, j);
      full.at(i, i) = diag;
    }
    IntMatrix g(m - 1, m - 1);
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = 1; j < m; ++j) g.at(i - 1, j - 1) = full.at(i, j);
    return g;
  }

private:
  // Occurrence = crossing * 4 + slot. partner_ pairs the two occurrences
  // of each arc; face tracing follows next(o) = rotate(partner(o)).
  void trace_faces() {
    const auto& cs = link_.crossings();
    const std::size_t darts = 4 * cs.size();
    partner_.assign(darts, darts);
    std::map<int, std::size_t> first_seen;
    for (std::size_t o = 0; o < darts; ++o) {
      const int arc = cs[o / 4].slot(static_cast<int>(o % 4));
      auto [it, fresh] = first_seen.emplace(arc, o);
      if (!fresh) {
        if (partner_[it->second] != darts)
          throw std::invalid_argument("goeritz_matrix: arc appears more than twice");
        partner_[it->second] = o;
        partner_[o] = it->second;
      }
    }
    for (std::size_t o = 0; o < darts; ++o)
      if (partner_[o] == darts)
        throw std::invalid_argument("goeritz_matrix: unpaired arc occurrence");

    corner_face_.assign(darts, darts);
    face_of_dart_.assign(darts, darts);
    std::size_t face = 0;
    for (std::size_t start = 0; start < darts; ++start) {
      if (face_of_dart_[start] != darts) continue;
      std::size_t o = start;
      do {
        face_of_dart_[o] = face;
        const std::size_t arrive = partner_[o];
        corner_face_[arrive] = face;  // corner between slots s and s+1 at arrival
        o = (arrive & ~std::size_t{3}) | ((arrive + 1) & 3);
      } while (o != start);
      ++face;
    }
    n_faces_ = face;
    // V - E + F = 2 with E = 2V for a connected 4-valent diagram
    if (n_faces_ != cs.size() + 2)
      throw std::invalid_argument("goeritz_matrix: face count " + std::to_string(n_faces_) +
                                  " violates Euler's formula; input is not a planar diagram");
  }

  void color_faces() {
    color_.assign(n_faces_, -1);
    // adjacency across each arc: the faces of its two darts
    std::vector<std::vector<std::size_t>> adj(n_faces_);
    const std::size_t darts = partner_.size();
    for (std::size_t o = 0; o < darts; ++o) {
      if (partner_[o] < o) continue;  // one side per arc
      const std::size_t f1 = face_of_dart_[o], f2 = face_of_dart_[partner_[o]];
      adj[f1].push_back(f2);
      adj[f2].push_back(f1);
    }
    std::vector<std::size_t> stack = {0};
    color_[0] = 0;
    while (!stack.empty()) {
      const std::size_t f = stack.back();
      stack.pop_back();
      for (std::size_t g : adj[f]) {
        if (color_[g] == -1) {
          color_[g] = 1 - color_[f];
          stack.push_back(g);
        } else if (color_[g] == color_[f]) {
          throw std::invalid_argument("goeritz_matrix: regions are not checkerboard colorable");
        }
      }
    }
    for (int c : color_)
      if (c == -1) throw std::invalid_argument("goeritz_matrix: disconnected face graph");

    // White is the class of face 0. At every crossing the white corners
    // must sit on one diagonal.
    const std::size_t nx = link_.crossings().size();
    white_corner_.assign(nx, -1);
    for (std::size_t x = 0; x < nx; ++x) {
      int cols[4];
      for (int t = 0; t < 4; ++t) cols[t] = color_[corner_face_[4 * x + t]];
      if (cols[0] != cols[2] || cols[1] != cols[3] || cols[0] == cols[1])
        throw std::invalid_argument("goeritz_matrix: corner colors do not alternate");
      white_corner_[x] = cols[0] == 0 ? 0 : 1;
    }
    for (std::size_t f = 0; f < n_faces_; ++f)
      if (color_[f] == 0) {
        white_index_[f] = white_faces_.size();
        white_faces_.push_back(f);
      }
  }

  const LinkDiagram& link_;
  std::vector<std::size_t> partner_;
  std::vector<std::size_t> corner_face_;
  std::vector<std::size_t> face_of_dart_;
  std::size_t n_faces_ = 0;
  std::vector<int> color_;
  std::vector<int> white_corner_;
  std::vector<std::size_t> white_faces_;
  std::map<std::size_t, std::size_t> white_index_;
};

/// Goeritz matrix of a connected diagram with at least one crossing, from
/// the checkerboard coloring rooted at the first traced region.
inline IntMatrix goeritz_matrix(const LinkDiagram& link) { return GoeritzBuilder(link).matrix(); }

/// Link determinant |det(Goeritz)| = order of H_1 of the double branched
/// cover (0 when infinite). Split unions have a free summand, hence 0.
inline Int determinant(const LinkDiagram& link) {
  const auto factors = link.split_factors();
  if (factors.empty()) return 1;
  if (factors.size() > 1) return 0;
  if (factors[0].crossings().empty()) return 1;  // crossing-free unknot
  return abs(goeritz_matrix(factors[0]).determinant());
}

/// Z_d homology of the double branched cover: cokernel of the Goeritz
/// matrix per split factor, plus one Z_d summand per extra split factor
/// (the connected-sum S^1 x S^2 pieces of a split union's cover).
inline ZdModuleStructure dbc_homology(const DBCReference& ref, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("dbc_homology: modulus must be >= 2");
  const auto factors = ref.link.split_factors();
  std::vector<ZdModuleStructure> parts;
  for (const auto& f : factors)
    if (!f.crossings().empty()) parts.push_back(cokernel_mod(goeritz_matrix(f), d));
  if (factors.size() > 1) {
    std::vector<std::int64_t> frees(factors.size() - 1, d);
    parts.emplace_back(d, std::move(frees));
  }
  return direct_sum(parts, d);
}

}  // namespace ck
