#pragma once

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ck/burnside.hpp"
#include "ck/int_matrix.hpp"
#include "ck/integers.hpp"
#include "ck/link.hpp"
#include "ck/braid.hpp"
#include "ck/surgery.hpp"
#include "ck/trilinear.hpp"
#include "ck/zmod.hpp"

namespace ck {

using Json = nlohmann::json;

// Arbitrary-precision entries travel as decimal strings; plain JSON
// numbers are accepted on input for convenience.
inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a decimal integer string, got '" +
                                  j.get<std::string>() + "'");
    }
  }
  throw std::invalid_argument("expected an integer or decimal string");
}

inline Json int_to_json(const Int& x) { return x.str(); }

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix: expected an array of arrays");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Int> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw std::invalid_argument("matrix: row is not an array");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
    for (const auto& e : j[i]) entries.push_back(int_from_json(e));
  }
  return IntMatrix(rows, cols, std::move(entries));
}

inline Json to_json(const ZdModuleStructure& m) {
  return Json{{"d", m.d}, {"factors", m.factors}, {"pretty", m.to_string()}};
}

inline Json to_json(const ZdMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"d", m.modulus()}, {"entries", std::move(rows)}};
}

// Surgery presentations: 1-based component indices in the triple list.
inline Json to_json(const SurgeryPresentation& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs())
    coeffs.push_back(Json::array({int_to_json(c.p), int_to_json(c.q)}));
  Json out{{"coeffs", std::move(coeffs)}, {"linking", to_json(p.linking())}};
  if (p.triple()) {
    Json entries = Json::array();
    for (const auto& [ijk, v] : p.triple()->entries())
      entries.push_back(Json{{"ijk", {ijk[0] + 1, ijk[1] + 1, ijk[2] + 1}},
                             {"value", int_to_json(v)}});
    out["triple"] = std::move(entries);
  }
  return out;
}

inline SurgeryPresentation presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.contains("linking"))
    throw std::invalid_argument("presentation: expected {coeffs, linking[, triple]}");
  std::vector<SurgeryCoefficient> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (!c.is_array() || c.size() != 2)
      throw std::invalid_argument("presentation: each coefficient is a [p, q] pair");
    coeffs.emplace_back(int_from_json(c[0]), int_from_json(c[1]));
  }
  IntMatrix linking = int_matrix_from_json(j.at("linking"));
  std::optional<TripleTensor> triple;
  if (j.contains("triple")) {
    TripleTensor t(coeffs.size());
    for (const auto& e : j.at("triple")) {
      const auto& ijk = e.at("ijk");
      if (!ijk.is_array() || ijk.size() != 3)
        throw std::invalid_argument("presentation: triple entry needs ijk = [i,j,k]");
      const auto idx = [&](std::size_t t_) {
        const std::int64_t v = ijk[t_].get<std::int64_t>();
        if (v < 1) throw std::invalid_argument("presentation: triple indices are 1-based");
        return static_cast<std::size_t>(v - 1);
      };
      t.set(idx(0), idx(1), idx(2), int_from_json(e.at("value")));
    }
    triple = std::move(t);
  }
  return SurgeryPresentation(std::move(coeffs), std::move(linking), std::move(triple));
}

// Trilinear forms list only nonzero entries with i <= j <= k (1-based);
// the loader completes the alternating closure and rejects conflicts.
inline Json to_json(const TrilinearFormZd& t) {
  Json entries = Json::array();
  const std::size_t n = t.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        if (t(i, j, k) != 0)
          entries.push_back(Json{{"ijk", {i + 1, j + 1, k + 1}}, {"value", t(i, j, k)}});
  return Json{{"d", t.modulus()}, {"n", t.rank()}, {"entries", std::move(entries)}};
}

inline TrilinearFormZd form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("n"))
    throw std::invalid_argument("form: expected {d, n, entries}");
  const std::int64_t d = j.at("d").get<std::int64_t>();
  const std::size_t n = j.at("n").get<std::size_t>();
  if (d < 1) throw std::invalid_argument("form: modulus must be >= 1");
  std::vector<std::int64_t> v(n * n * n, 0);
  std::vector<char> set(n * n * n, 0);
  static constexpr std::array<std::array<std::size_t, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  static constexpr std::array<int, 6> sgn = {1, -1, -1, 1, 1, -1};
  if (j.contains("entries"))
    for (const auto& e : j.at("entries")) {
      const auto& ijk = e.at("ijk");
      std::array<std::size_t, 3> idx{};
      for (std::size_t t = 0; t < 3; ++t) {
        const std::int64_t raw = ijk.at(t).get<std::int64_t>();
        if (raw < 1 || raw > static_cast<std::int64_t>(n))
          throw std::invalid_argument("form: index out of range");
        idx[t] = static_cast<std::size_t>(raw - 1);
      }
      const std::int64_t val = mod_i64(int_from_json(e.at("value")), d);
      for (std::size_t p = 0; p < 6; ++p) {
        const std::size_t pos =
            (idx[perms[p][0]] * n + idx[perms[p][1]]) * n + idx[perms[p][2]];
        const std::int64_t want = sgn[p] > 0 ? val : mod_i64(-val, d);
        if (set[pos] && v[pos] != want)
          throw std::invalid_argument("form: conflicting entries under the alternating law");
        v[pos] = want;
        set[pos] = 1;
      }
    }
  return TrilinearFormZd(d, n, std::move(v));  // constructor re-checks the law
}

inline Json to_json(const BurnsideCertificate& c) {
  return Json{{"d", c.d},
              {"r", c.r},
              {"order", c.group.order()},
              {"identity", c.group.identity()},
              {"table", c.group.table()},
              {"images", c.images}};
}

inline BurnsideCertificate certificate_from_json(const Json& j) {
  FiniteGroupTable g(j.at("order").get<std::size_t>(),
                     j.at("table").get<std::vector<std::int32_t>>(),
                     j.at("identity").get<std::size_t>());
  return BurnsideCertificate{j.at("d").get<std::int64_t>(), j.at("r").get<std::size_t>(),
                             std::move(g), j.at("images").get<std::vector<std::size_t>>()};
}

// PD diagrams: crossings, oriented component cycles, and optionally the
// per-crossing signs ("orientations") when the component data alone does
// not pin the over-strand directions.
inline Json to_json(const LinkDiagram& l) {
  Json crossings = Json::array();
  for (const auto& c : l.crossings()) crossings.push_back(Json::array({c.a, c.b, c.c, c.d}));
  return Json{{"crossings", std::move(crossings)},
              {"components", l.components()},
              {"orientations", l.signs()}};
}

inline LinkDiagram link_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("crossings") || !j.contains("components"))
    throw std::invalid_argument("link: expected {crossings, components[, orientations]}");
  std::vector<Crossing> crossings;
  for (const auto& c : j.at("crossings")) {
    if (!c.is_array() || c.size() != 4)
      throw std::invalid_argument("link: each crossing is [a,b,c,d]");
    crossings.push_back(Crossing{c[0].get<int>(), c[1].get<int>(), c[2].get<int>(),
                                 c[3].get<int>()});
  }
  auto components = j.at("components").get<std::vector<std::vector<int>>>();
  std::optional<std::vector<int>> signs;
  if (j.contains("orientations")) signs = j.at("orientations").get<std::vector<int>>();
  return LinkDiagram(std::move(crossings), std::move(components), std::move(signs));
}

inline Json to_json(const BraidWord& b) {
  return Json{{"strands", b.strands}, {"word", b.word}};
}

inline BraidWord braid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("strands") || !j.contains("word"))
    throw std::invalid_argument("braid: expected {strands, word}");
  return BraidWord(j.at("strands").get<int>(), j.at("word").get<std::vector<int>>());
}

}  // namespace ck
