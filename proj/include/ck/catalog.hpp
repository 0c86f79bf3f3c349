#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ck/braid.hpp"
#include "ck/goeritz.hpp"
#include "ck/link.hpp"
#include "ck/surgery.hpp"

namespace ck {

namespace links {

/// c-component unlink: c crossing-free loops.
inline LinkDiagram unlink(std::size_t c) {
  std::vector<std::vector<int>> comps;
  for (std::size_t i = 0; i < c; ++i) comps.push_back({static_cast<int>(i + 1)});
  return LinkDiagram({}, std::move(comps));
}

/// Positive Hopf link, closure of sigma_1^2.
inline LinkDiagram hopf() { return braid_closure(BraidWord(2, {1, 1})); }

/// Right-handed trefoil, closure of sigma_1^3.
inline LinkDiagram trefoil() { return braid_closure(BraidWord(2, {1, 1, 1})); }

/// Figure-eight knot, closure of (sigma_1 sigma_2^-1)^2.
inline LinkDiagram figure_eight() { return braid_closure(BraidWord(3, {1, -2, 1, -2})); }

/// Unknot with one positive kink (Reidemeister-1 curl).
inline LinkDiagram unknot_kink() { return braid_closure(BraidWord(2, {1})); }

/// (2,q) torus link, closure of sigma_1^q.
inline LinkDiagram torus_2q(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("torus_2q: q must be >= 1");
  return braid_closure(BraidWord(2, std::vector<int>(static_cast<std::size_t>(q), 1)));
}

/// (3,q) torus knot/link, closure of (sigma_1 sigma_2)^q.
inline LinkDiagram torus_3q(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("torus_3q: q must be >= 1");
  std::vector<int> w;
  for (std::int64_t i = 0; i < q; ++i) {
    w.push_back(1);
    w.push_back(2);
  }
  return braid_closure(BraidWord(3, std::move(w)));
}

/// Standard Borromean rings, closure of (sigma_1 sigma_2^-1)^3, oriented
/// so that the triple linking number is +1.
inline LinkDiagram borromean() {
  return braid_closure(BraidWord(3, {1, -2, 1, -2, 1, -2}));
}

}  // namespace links

using CatalogEntry = std::variant<SurgeryPresentation, DBCReference>;

/// Surgery presentation of the 3-torus: 0-surgery on the Borromean rings,
/// i.e. three 0-framed split components with mu(1,2,3) = 1.
inline SurgeryPresentation torus3_presentation() {
  std::vector<SurgeryCoefficient> cs(3, SurgeryCoefficient::integer(0));
  TripleTensor t(3);
  t.set(0, 1, 2, 1);
  return SurgeryPresentation(std::move(cs), IntMatrix(3, 3), std::move(t));
}

/// #^k S^1 x S^2: the 0-framed k-component unlink, zero triple tensor.
inline SurgeryPresentation sum_s1xs2_presentation(std::size_t k) {
  std::vector<SurgeryCoefficient> cs(k, SurgeryCoefficient::integer(0));
  return SurgeryPresentation(std::move(cs), IntMatrix(k, k), TripleTensor(k));
}

/// L(p, q): p/q surgery on the unknot.
inline SurgeryPresentation lens_presentation(Int p, Int q) {
  std::vector<SurgeryCoefficient> cs;
  cs.emplace_back(std::move(p), std::move(q));
  return SurgeryPresentation(std::move(cs), IntMatrix(1, 1), TripleTensor(1));
}

/// S^3: the empty surgery presentation.
inline SurgeryPresentation s3_presentation() {
  return SurgeryPresentation({}, IntMatrix(0, 0), TripleTensor(0));
}

/// Resolve a catalog name: T3, S3, S1xS2, SumS1xS2(k), Lens(p,q),
/// Poincare, Sigma237, Unlink(c), Borromean, Hopf, Trefoil, Torus(p,q).
/// Poincare and Sigma237 resolve to double-branched-cover references
/// along the (3,5) and (3,7) torus knots.
inline CatalogEntry catalog(const std::string& name) {
  auto args_of = [&](const std::string& head) -> std::vector<Int> {
    const std::string inner = name.substr(head.size() + 1, name.size() - head.size() - 2);
    std::vector<Int> out;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      const std::size_t comma = inner.find(',', pos);
      const std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
      if (tok.empty()) throw std::invalid_argument("catalog: bad arguments in " + name);
      out.emplace_back(tok);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  auto is_call = [&](const std::string& head) {
    return name.size() > head.size() + 1 && name.compare(0, head.size(), head) == 0 &&
           name[head.size()] == '(' && name.back() == ')';
  };

  if (name == "T3") return torus3_presentation();
  if (name == "S3") return s3_presentation();
  if (name == "S1xS2") return sum_s1xs2_presentation(1);
  if (is_call("SumS1xS2")) {
    const auto a = args_of("SumS1xS2");
    if (a.size() != 1 || a[0] < 0) throw std::invalid_argument("catalog: SumS1xS2(k) needs k >= 0");
    return sum_s1xs2_presentation(static_cast<std::size_t>(a[0]));
  }
  if (is_call("Lens")) {
    auto a = args_of("Lens");
    if (a.size() != 2) throw std::invalid_argument("catalog: Lens(p,q) needs two arguments");
    return lens_presentation(std::move(a[0]), std::move(a[1]));
  }
  if (name == "Poincare")
    return DBCReference{links::torus_3q(5), "double branched cover of the (3,5) torus knot"};
  if (name == "Sigma237")
    return DBCReference{links::torus_3q(7), "double branched cover of the (3,7) torus knot"};
  if (is_call("Unlink")) {
    const auto a = args_of("Unlink");
    if (a.size() != 1 || a[0] < 0) throw std::invalid_argument("catalog: Unlink(c) needs c >= 0");
    return DBCReference{links::unlink(static_cast<std::size_t>(a[0])), name};
  }
  if (name == "Borromean") return DBCReference{links::borromean(), name};
  if (name == "Hopf") return DBCReference{links::hopf(), name};
  if (name == "Trefoil") return DBCReference{links::trefoil(), name};
  if (is_call("Torus")) {
    const auto a = args_of("Torus");
    if (a.size() != 2 || (a[0] != 2 && a[0] != 3) || a[1] < 1)
      throw std::invalid_argument("catalog: Torus(p,q) supports p in {2,3}, q >= 1");
    const std::int64_t q = static_cast<std::int64_t>(a[1]);
    return DBCReference{a[0] == 2 ? links::torus_2q(q) : links::torus_3q(q), name};
  }
  throw std::invalid_argument("catalog: unknown name '" + name + "'");
}

}  // namespace ck
