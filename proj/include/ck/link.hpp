#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/integers.hpp"

namespace ck {

/// One crossing of an oriented diagram in PD form: the four incident arcs
/// listed counterclockwise starting from the incoming under-strand. So the
/// under-strand runs a -> c, and the over-strand occupies b and d.
///
/// Crossing sign (right-hand rule, documented in README.md): with the
/// incoming under-strand at the south slot the over-strand is horizontal;
/// the crossing is positive exactly when the over-strand runs d -> b.
struct Crossing {
  int a, b, c, d;

  int slot(int t) const {
    switch (t & 3) {
      case 0: return a;
      case 1: return b;
      case 2: return c;
      default: return d;
    }
  }
};

/// Oriented link diagram: PD crossings plus the partition of arcs into
/// oriented components (each component is its cyclic arc sequence, in the
/// direction of travel). Planarity of the input is trusted, not verified;
/// the checkerboard machinery rejects inputs where it provably fails.
///
/// A component whose single arc meets no crossing is a crossing-free
/// unknot ("free loop"); this is how the unlink is represented.
class LinkDiagram {
public:
  LinkDiagram() = default;

  LinkDiagram(std::vector<Crossing> crossings, std::vector<std::vector<int>> components,
              std::optional<std::vector<int>> given_signs = std::nullopt)
      : crossings_(std::move(crossings)), components_(std::move(components)) {
    index_arcs();
    derive_signs(given_signs);
  }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<std::vector<int>>& components() const { return components_; }
  const std::vector<int>& signs() const { return signs_; }
  std::size_t n_components() const { return components_.size(); }

  int component_of_arc(int arc) const {
    auto it = comp_of_arc_.find(arc);
    if (it == comp_of_arc_.end())
      throw std::invalid_argument("LinkDiagram: unknown arc " + std::to_string(arc));
    return it->second;
  }

  int under_component(std::size_t x) const { return component_of_arc(crossings_[x].a); }
  int over_component(std::size_t x) const { return component_of_arc(crossings_[x].b); }

  /// Incoming over-arc: d at a positive crossing, b at a negative one.
  int over_in(std::size_t x) const { return signs_[x] > 0 ? crossings_[x].d : crossings_[x].b; }
  int over_out(std::size_t x) const { return signs_[x] > 0 ? crossings_[x].b : crossings_[x].d; }

  /// Half the signed count of crossings between components i and j.
  Int linking_number(std::size_t i, std::size_t j) const {
    if (i == j || i >= n_components() || j >= n_components())
      throw std::invalid_argument("linking_number: invalid component pair");
    std::int64_t total = 0;
    for (std::size_t x = 0; x < crossings_.size(); ++x) {
      const std::size_t cu = under_component(x), co = over_component(x);
      if ((cu == i && co == j) || (cu == j && co == i)) total += signs_[x];
    }
    if (total % 2 != 0)
      throw std::invalid_argument("linking_number: odd signed crossing count (bad diagram)");
    return Int(total / 2);
  }

  /// Sum of crossing signs over self-crossings of component i.
  std::int64_t writhe(std::size_t i) const {
    std::int64_t w = 0;
    for (std::size_t x = 0; x < crossings_.size(); ++x)
      if (under_component(x) == static_cast<int>(i) && over_component(x) == static_cast<int>(i))
        w += signs_[x];
    return w;
  }

  bool pairwise_unlinked() const {
    for (std::size_t i = 0; i < n_components(); ++i)
      for (std::size_t j = i + 1; j < n_components(); ++j)
        if (linking_number(i, j) != 0) return false;
    return true;
  }

  /// Reverse the orientation of one component. Crossings where it passes
  /// under are re-rooted so slot 0 stays the incoming under-strand.
  LinkDiagram reverse_component(std::size_t i) const {
    if (i >= n_components()) throw std::invalid_argument("reverse_component: bad index");
    std::vector<Crossing> cs = crossings_;
    std::vector<int> sg = signs_;
    for (std::size_t x = 0; x < cs.size(); ++x) {
      const bool under_i = under_component(x) == static_cast<int>(i);
      const bool over_i = over_component(x) == static_cast<int>(i);
      if (under_i) cs[x] = Crossing{cs[x].c, cs[x].d, cs[x].a, cs[x].b};
      if (under_i != over_i) sg[x] = -sg[x];
    }
    std::vector<std::vector<int>> comps = components_;
    std::reverse(comps[i].begin(), comps[i].end());
    return LinkDiagram(std::move(cs), std::move(comps), std::move(sg));
  }

  /// Relabel components: perm[i] is the new index of old component i.
  LinkDiagram permute_components(const std::vector<std::size_t>& perm) const {
    if (perm.size() != n_components())
      throw std::invalid_argument("permute_components: bad permutation size");
    std::vector<std::vector<int>> comps(n_components());
    for (std::size_t i = 0; i < n_components(); ++i) comps.at(perm[i]) = components_[i];
    return LinkDiagram(crossings_, std::move(comps), signs_);
  }

  /// Connected pieces of the diagram (split factors), arcs relabeled
  /// 1..k per factor in increasing old-label order.
  std::vector<LinkDiagram> split_factors() const {
    // union-find over arcs; arcs meeting at a crossing are joined
    std::map<int, int> parent;
    for (const auto& comp : components_)
      for (int arc : comp) parent[arc] = arc;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    for (const auto& c : crossings_) {
      unite(c.a, c.b);
      unite(c.a, c.c);
      unite(c.a, c.d);
    }
    std::map<int, std::size_t> class_index;  // root arc -> factor index, ordered by root
    for (const auto& comp : components_) class_index[find(comp[0])];
    std::size_t next = 0;
    for (auto& [root, idx] : class_index) idx = next++;

    std::vector<std::vector<Crossing>> fac_cross(next);
    std::vector<std::vector<int>> fac_sign(next);
    std::vector<std::vector<std::vector<int>>> fac_comp(next);
    for (std::size_t x = 0; x < crossings_.size(); ++x) {
      std::size_t f = class_index.at(find(crossings_[x].a));
      fac_cross[f].push_back(crossings_[x]);
      fac_sign[f].push_back(signs_[x]);
    }
    for (const auto& comp : components_) fac_comp[class_index.at(find(comp[0]))].push_back(comp);

    std::vector<LinkDiagram> out;
    for (std::size_t f = 0; f < next; ++f) {
      std::set<int> labels;
      for (const auto& comp : fac_comp[f]) labels.insert(comp.begin(), comp.end());
      std::map<int, int> relabel;
      int fresh = 1;
      for (int l : labels) relabel[l] = fresh++;
      std::vector<Crossing> cs;
      cs.reserve(fac_cross[f].size());
      for (const auto& c : fac_cross[f])
        cs.push_back(Crossing{relabel.at(c.a), relabel.at(c.b), relabel.at(c.c), relabel.at(c.d)});
      std::vector<std::vector<int>> comps;
      for (const auto& comp : fac_comp[f]) {
        std::vector<int> nc;
        nc.reserve(comp.size());
        for (int arc : comp) nc.push_back(relabel.at(arc));
        comps.push_back(std::move(nc));
      }
      out.emplace_back(std::move(cs), std::move(comps), fac_sign[f]);
    }
    return out;
  }

  /// The two slot positions of each arc, in crossing-then-slot order.
  std::vector<std::pair<std::size_t, int>> occurrences(int arc) const {
    std::vector<std::pair<std::size_t, int>> occ;
    for (std::size_t x = 0; x < crossings_.size(); ++x)
      for (int t = 0; t < 4; ++t)
        if (crossings_[x].slot(t) == arc) occ.emplace_back(x, t);
    return occ;
  }

private:
  void index_arcs() {
    comp_of_arc_.clear();
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (components_[i].empty())
        throw std::invalid_argument("LinkDiagram: empty component");
      for (int arc : components_[i]) {
        if (!comp_of_arc_.emplace(arc, static_cast<int>(i)).second)
          throw std::invalid_argument("LinkDiagram: arc " + std::to_string(arc) +
                                      " listed twice in the component partition");
      }
    }
    std::map<int, int> uses;
    for (const auto& c : crossings_)
      for (int t = 0; t < 4; ++t) {
        const int arc = c.slot(t);
        if (!comp_of_arc_.count(arc))
          throw std::invalid_argument("LinkDiagram: crossing uses arc " + std::to_string(arc) +
                                      " missing from the component partition");
        ++uses[arc];
      }
    for (const auto& comp : components_) {
      int with_crossings = 0;
      for (int arc : comp) {
        const auto it = uses.find(arc);
        const int u = it == uses.end() ? 0 : it->second;
        if (u != 0 && u != 2)
          throw std::invalid_argument("LinkDiagram: arc " + std::to_string(arc) +
                                      " must appear exactly twice in crossings, found " +
                                      std::to_string(u));
        if (u == 2) ++with_crossings;
      }
      if (with_crossings != 0 && with_crossings != static_cast<int>(comp.size()))
        throw std::invalid_argument("LinkDiagram: component mixes crossing arcs with free arcs");
      if (with_crossings == 0 && comp.size() != 1)
        throw std::invalid_argument("LinkDiagram: crossing-free component must be a single arc");
    }
  }

  // Match the oriented passages named by the component lists against the
  // crossings. The under passage of (a,b,c,d) is a -> c by convention; the
  // over passage runs d -> b (positive) or b -> d (negative). Ambiguities
  // are resolved by constraint propagation, and failing that, require
  // explicitly given signs.
  void derive_signs(const std::optional<std::vector<int>>& given) {
    if (given && given->size() != crossings_.size())
      throw std::invalid_argument("LinkDiagram: signs list length mismatch");
    std::map<std::pair<int, int>, int> avail;
    for (const auto& comp : components_) {
      if (comp.size() == 1 && occurrences(comp[0]).empty()) continue;  // free loop
      const std::size_t m = comp.size();
      for (std::size_t t = 0; t < m; ++t) ++avail[{comp[t], comp[(t + 1) % m]}];
    }
    for (const auto& c : crossings_) {
      auto it = avail.find({c.a, c.c});
      if (it == avail.end() || it->second == 0)
        throw std::invalid_argument(
            "LinkDiagram: component data has no under passage " + std::to_string(c.a) + " -> " +
            std::to_string(c.c));
      --it->second;
    }
    signs_.assign(crossings_.size(), 0);
    if (given) {
      for (std::size_t x = 0; x < crossings_.size(); ++x) {
        const int s = (*given)[x];
        if (s != 1 && s != -1)
          throw std::invalid_argument("LinkDiagram: signs must be +-1");
        take_over_passage(x, s, avail);
      }
    } else {
      std::size_t unresolved = crossings_.size();
      bool progress = true;
      while (unresolved > 0 && progress) {
        progress = false;
        for (std::size_t x = 0; x < crossings_.size(); ++x) {
          if (signs_[x] != 0) continue;
          const auto& c = crossings_[x];
          const bool pos_ok = count_of(avail, {c.d, c.b}) > 0;
          const bool neg_ok = count_of(avail, {c.b, c.d}) > 0;
          if (!pos_ok && !neg_ok)
            throw std::invalid_argument("LinkDiagram: component data has no over passage at "
                                        "crossing " + std::to_string(x));
          if (pos_ok != neg_ok) {
            take_over_passage(x, pos_ok ? 1 : -1, avail);
            --unresolved;
            progress = true;
          }
        }
      }
      if (unresolved > 0)
        throw std::invalid_argument(
            "LinkDiagram: over-strand orientation is ambiguous; supply per-crossing signs "
            "(\"orientations\") explicitly");
    }
    for (const auto& [pair, count] : avail)
      if (count != 0)
        throw std::invalid_argument("LinkDiagram: component passage " +
                                    std::to_string(pair.first) + " -> " +
                                    std::to_string(pair.second) + " not realized by crossings");
  }

  static int count_of(const std::map<std::pair<int, int>, int>& m, std::pair<int, int> k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  }

  void take_over_passage(std::size_t x, int sign, std::map<std::pair<int, int>, int>& avail) {
    const auto& c = crossings_[x];
    const std::pair<int, int> key = sign > 0 ? std::pair{c.d, c.b} : std::pair{c.b, c.d};
    auto it = avail.find(key);
    if (it == avail.end() || it->second == 0)
      throw std::invalid_argument("LinkDiagram: over passage unavailable at crossing " +
                                  std::to_string(x) + " for sign " + std::to_string(sign));
    --it->second;
    signs_[x] = sign;
  }

  std::vector<Crossing> crossings_;
  std::vector<std::vector<int>> components_;
  std::vector<int> signs_;
  std::map<int, int> comp_of_arc_;
};

/// Reference to a 3-manifold presented as the double branched cover of
/// S^3 along a link.
struct DBCReference {
  LinkDiagram link;
  std::string label;
};

}  // namespace ck
