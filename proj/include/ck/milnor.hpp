#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ck/link.hpp"

namespace ck {

namespace detail {

/// Group-like element of the free associative ring on `v` noncommuting
/// variables, truncated above degree 2: 1 + sum a_i x_i + sum q_ij x_i x_j.
struct TruncSeries {
  int v;
  std::vector<std::int64_t> lin;   // v
  std::vector<std::int64_t> quad;  // v*v, row-major q[i*v+j] x_i x_j

  static TruncSeries one(int v) { return {v, std::vector<std::int64_t>(v, 0),
                                          std::vector<std::int64_t>(v * v, 0)}; }

  static TruncSeries meridian(int v, int var) {
    TruncSeries t = one(v);
    t.lin[var] = 1;
    return t;
  }

  TruncSeries operator*(const TruncSeries& o) const {
    TruncSeries r = one(v);
    for (int i = 0; i < v; ++i) r.lin[i] = lin[i] + o.lin[i];
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j)
        r.quad[i * v + j] = quad[i * v + j] + o.quad[i * v + j] + lin[i] * o.lin[j];
    return r;
  }

  TruncSeries inverse() const {
    TruncSeries r = one(v);
    for (int i = 0; i < v; ++i) r.lin[i] = -lin[i];
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j) r.quad[i * v + j] = -quad[i * v + j] + lin[i] * lin[j];
    return r;
  }

  TruncSeries pow(std::int64_t e) const {
    TruncSeries base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    TruncSeries r = one(v);
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }
};

}  // namespace detail

/// Milnor triple linking number mu-bar(123) of a 3-component link with
/// vanishing pairwise linking numbers.
///
/// Method: Wirtinger arcs (maximal over-strands) expand as Magnus series
/// in the three base meridians, truncated above degree 2. The degree-2
/// part of a conjugate w m w^-1 only needs the degree-1 part of w, so one
/// pass along each component computes all arc expansions exactly. The
/// 0-framed longitude of component 3 is then the product of the over-arc
/// series met while passing under, and mu-bar is its x1 x2 coefficient.
/// The orientation convention this sign is pinned to is documented in the
/// README; the catalog Borromean rings give +1.
inline Int milnor_triple(const LinkDiagram& link) {
  using detail::TruncSeries;
  if (link.n_components() != 3)
    throw std::invalid_argument("milnor_triple: link must have exactly 3 components");
  if (!link.pairwise_unlinked())
    throw std::invalid_argument("milnor_triple: pairwise linking numbers must vanish");

  // Wirtinger arcs: PD arcs glued across over passages.
  std::map<int, int> parent;
  for (const auto& comp : link.components())
    for (int arc : comp) parent[arc] = arc;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < link.crossings().size(); ++x)
    parent[find(link.over_in(x))] = find(link.over_out(x));

  // head[arc] = crossing where the arc is incoming, and whether it enters
  // as the under-strand.
  struct Head {
    std::size_t crossing;
    bool under;
  };
  std::map<int, Head> head;
  for (std::size_t x = 0; x < link.crossings().size(); ++x) {
    if (!head.emplace(link.crossings()[x].a, Head{x, true}).second)
      throw std::invalid_argument("milnor_triple: inconsistent diagram orientation");
    if (!head.emplace(link.over_in(x), Head{x, false}).second)
      throw std::invalid_argument("milnor_triple: inconsistent diagram orientation");
  }

  const int v = 3;
  // Degree-2 parts of the Wirtinger arc expansions, keyed by arc class.
  std::map<int, std::vector<std::int64_t>> quad;
  auto commutator = [&](int a, int b, int sign, std::vector<std::int64_t>& q) {
    q[a * v + b] += sign;
    q[b * v + a] -= sign;
  };

  for (std::size_t ci = 0; ci < 3; ++ci) {
    const auto& comp = link.components()[ci];
    std::vector<std::int64_t> q(v * v, 0);
    const int base = find(comp[0]);
    for (std::size_t t = 0; t < comp.size(); ++t) {
      const int arc = comp[t];
      auto [it, fresh] = quad.emplace(find(arc), q);
      if (!fresh && it->second != q)
        throw std::logic_error("milnor_triple: arc expansion inconsistent");
      const auto hit = head.find(arc);
      if (hit == head.end()) continue;  // crossing-free loop
      if (hit->second.under) {
        const int over = static_cast<int>(link.over_component(hit->second.crossing));
        commutator(over, static_cast<int>(ci), link.signs()[hit->second.crossing], q);
      }
    }
    // Cycle closure: the accumulated commutators cancel exactly because
    // the pairwise linking numbers vanish.
    if (quad.at(base) != q)
      throw std::logic_error("milnor_triple: longitude gauge did not close");
  }

  auto series_of = [&](int arc) {
    const int cls = find(arc);
    TruncSeries s = TruncSeries::meridian(v, link.component_of_arc(arc));
    s.quad = quad.at(cls);
    return s;
  };

  // Longitude of component 3 (index 2), 0-framed by the writhe correction.
  const auto& comp = link.components()[2];
  TruncSeries longitude = TruncSeries::one(v);
  for (int arc : comp) {
    const auto hit = head.find(arc);
    if (hit == head.end()) continue;
    if (hit->second.under) {
      const std::size_t x = hit->second.crossing;
      longitude = longitude * series_of(link.over_in(x)).pow(link.signs()[x]);
    }
  }
  longitude = longitude * series_of(comp[0]).pow(-link.writhe(2));

  return Int(longitude.quad[0 * v + 1]);
}

}  // namespace ck
