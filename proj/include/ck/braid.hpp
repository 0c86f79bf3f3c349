#pragma once

#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ck/link.hpp"

namespace ck {

/// Word in the braid group B_strands: entry +i is the positive generator
/// sigma_i (1 <= i < strands), -i its inverse.
struct BraidWord {
  int strands;
  std::vector<int> word;

  BraidWord(int n, std::vector<int> w) : strands(n), word(std::move(w)) {
    if (strands < 1) throw std::invalid_argument("BraidWord: strands must be >= 1");
    for (int g : word)
      if (g == 0 || std::abs(g) >= strands)
        throw std::invalid_argument("BraidWord: generator index " + std::to_string(g) +
                                    " out of range for " + std::to_string(strands) + " strands");
  }

  /// Image permutation: perm[j] = final position of the strand entering at
  /// position j (0-based).
  std::vector<int> permutation() const {
    std::vector<int> pos(strands);
    std::iota(pos.begin(), pos.end(), 0);  // pos[p] = strand currently at position p
    for (int g : word) {
      const int i = std::abs(g) - 1;
      std::swap(pos[i], pos[i + 1]);
    }
    std::vector<int> perm(strands);
    for (int p = 0; p < strands; ++p) perm[pos[p]] = p;
    return perm;
  }

  std::size_t cycle_count() const {
    const auto perm = permutation();
    std::vector<char> seen(strands, 0);
    std::size_t cycles = 0;
    for (int j = 0; j < strands; ++j) {
      if (seen[j]) continue;
      ++cycles;
      for (int k = j; !seen[k]; k = perm[k]) seen[k] = 1;
    }
    return cycles;
  }
};

/// Number of components of the braid closure.
inline std::size_t component_count(const BraidWord& b) { return b.cycle_count(); }

/// Insert sigma_i^(sign*d) at `position` in the word: a d-move.
inline BraidWord apply_d_move(const BraidWord& b, std::size_t position, int generator, int sign,
                              std::int64_t d) {
  if (position > b.word.size())
    throw std::invalid_argument("apply_d_move: position out of range");
  if (generator < 1 || generator >= b.strands)
    throw std::invalid_argument("apply_d_move: generator out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("apply_d_move: sign must be +-1");
  if (d < 1) throw std::invalid_argument("apply_d_move: d must be >= 1");
  std::vector<int> w = b.word;
  w.insert(w.begin() + static_cast<std::ptrdiff_t>(position),
           static_cast<std::size_t>(d), sign * generator);
  return BraidWord(b.strands, std::move(w));
}

/// Trace closure of a braid word as an oriented PD diagram. Strands run
/// downward; the positive generator crosses the strand entering on the
/// right over the one entering on the left, which makes every sigma_i
/// crossing positive. Untouched strands close into free loops.
inline LinkDiagram braid_closure(const BraidWord& b) {
  const int n = b.strands;
  int fresh = n + 1;
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 1);  // top arcs 1..n

  struct RawCrossing {
    int a, b, c, d;
    int sign;
  };
  std::vector<RawCrossing> raw;
  raw.reserve(b.word.size());
  for (int g : b.word) {
    const int i = std::abs(g) - 1;
    const int x = cur[i], y = cur[i + 1];
    const int u = fresh++, v = fresh++;
    if (g > 0) {
      // under x -> v, over y -> u
      raw.push_back({x, u, v, y, +1});
    } else {
      // under y -> u, over x -> v
      raw.push_back({y, x, u, v, -1});
    }
    cur[i] = u;
    cur[i + 1] = v;
  }

  // Close up: the bottom arc at position j is the top arc j.
  std::vector<int> parent(fresh);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int j = 0; j < n; ++j) parent[find(cur[j])] = find(j + 1);

  std::map<int, int> compact;  // root -> final label
  for (int l = 1; l < fresh; ++l) compact.emplace(find(l), 0);
  int next_label = 1;
  for (auto& [root, label] : compact) label = next_label++;
  auto relabel = [&](int l) { return compact.at(find(l)); };

  std::vector<Crossing> crossings;
  std::vector<int> signs;
  crossings.reserve(raw.size());
  for (const auto& r : raw) {
    crossings.push_back(Crossing{relabel(r.a), relabel(r.b), relabel(r.c), relabel(r.d)});
    signs.push_back(r.sign);
  }

  // Components: successor along the orientation; arcs in no crossing are
  // free loops.
  const int total_arcs = next_label - 1;
  std::vector<int> succ(total_arcs + 1);
  std::iota(succ.begin(), succ.end(), 0);
  for (std::size_t x = 0; x < crossings.size(); ++x) {
    succ[crossings[x].a] = crossings[x].c;
    if (signs[x] > 0)
      succ[crossings[x].d] = crossings[x].b;
    else
      succ[crossings[x].b] = crossings[x].d;
  }
  std::vector<char> visited(total_arcs + 1, 0);
  std::vector<std::vector<int>> components;
  for (int start = 1; start <= total_arcs; ++start) {
    if (visited[start]) continue;
    std::vector<int> comp;
    for (int arc = start; !visited[arc]; arc = succ[arc]) {
      visited[arc] = 1;
      comp.push_back(arc);
    }
    components.push_back(std::move(comp));
  }

  return LinkDiagram(std::move(crossings), std::move(components), std::move(signs));
}

}  // namespace ck
