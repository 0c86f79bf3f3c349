#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ck/braid.hpp"
#include "ck/catalog.hpp"
#include "ck/goeritz.hpp"

using namespace ck;

namespace {

BraidWord random_braid(std::mt19937& rng, int max_strands = 4, int max_len = 8) {
  std::uniform_int_distribution<int> sd(2, max_strands);
  const int strands = sd(rng);
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> w;
  const int L = len(rng);
  for (int i = 0; i < L; ++i) w.push_back(coin(rng) ? gen(rng) : -gen(rng));
  return BraidWord(strands, std::move(w));
}

}  // namespace

TEST_CASE("braid words validate and close up") {
  CHECK_THROWS_AS(BraidWord(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord(2, {2}), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord(3, {0}), std::invalid_argument);

  CHECK(component_count(BraidWord(3, {1, 2, 1, 2, 1, 2, 1, 2, 1, 2})) == 1);  // (s1 s2)^5
  CHECK(component_count(BraidWord(3, {})) == 3);
  CHECK(component_count(BraidWord(2, {1, 1})) == 2);

  SECTION("PD component partition agrees with the braid permutation") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
      const auto b = random_braid(rng);
      CHECK(braid_closure(b).n_components() == component_count(b));
    }
  }
  SECTION("positive generators make positive crossings") {
    const auto hopf = links::hopf();
    for (int s : hopf.signs()) CHECK(s == 1);
    const auto neg = braid_closure(BraidWord(2, {-1, -1}));
    for (int s : neg.signs()) CHECK(s == -1);
    CHECK(neg.linking_number(0, 1) == -1);
  }
}

TEST_CASE("linking numbers") {
  CHECK(links::hopf().linking_number(0, 1) == 1);
  CHECK(links::unlink(2).linking_number(0, 1) == 0);
  const auto borr = links::borromean();
  CHECK(borr.linking_number(0, 1) == 0);
  CHECK(borr.linking_number(0, 2) == 0);
  CHECK(borr.linking_number(1, 2) == 0);
  CHECK_THROWS_AS(links::hopf().linking_number(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(links::hopf().linking_number(0, 5), std::invalid_argument);

  SECTION("symmetry and orientation reversal, fuzzed") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const auto b = random_braid(rng);
      const auto link = braid_closure(b);
      if (link.n_components() < 2) continue;
      for (std::size_t i = 0; i < link.n_components(); ++i)
        for (std::size_t j = i + 1; j < link.n_components(); ++j) {
          CHECK(link.linking_number(i, j) == link.linking_number(j, i));
          CHECK(link.reverse_component(i).linking_number(i, j) ==
                -link.linking_number(i, j));
        }
    }
  }
}

TEST_CASE("goeritz matrices of small diagrams") {
  SECTION("trefoil") {
    const auto g = goeritz_matrix(links::trefoil());
    CHECK((g.rows() == 1 || g.rows() == 2));
    CHECK(abs(g.determinant()) == 3);
  }
  SECTION("hopf") { CHECK(abs(goeritz_matrix(links::hopf()).determinant()) == 2); }
  SECTION("kinked unknot") {
    CHECK(abs(goeritz_matrix(links::unknot_kink()).determinant()) == 1);
  }
  SECTION("preconditions") {
    CHECK_THROWS_AS(goeritz_matrix(links::unlink(1)), std::invalid_argument);  // no crossings
    // split diagram: trefoil braid on 3 strands leaves strand 3 free
    const auto split = braid_closure(BraidWord(3, {1, 1, 1}));
    CHECK_THROWS_AS(goeritz_matrix(split), std::invalid_argument);
  }
}

TEST_CASE("link determinants") {
  CHECK(determinant(links::torus_3q(5)) == 1);  // double cover is a homology sphere
  CHECK(determinant(links::torus_3q(7)) == 1);
  for (std::int64_t q = 2; q <= 7; ++q) CHECK(determinant(links::torus_2q(q)) == q);
  CHECK(determinant(links::trefoil()) == 3);
  CHECK(determinant(links::figure_eight()) == 5);
  CHECK(determinant(links::borromean()) == 16);
  CHECK(determinant(links::unlink(1)) == 1);
  CHECK(determinant(links::unlink(2)) == 0);  // split: infinite H_1
  CHECK(determinant(links::unlink(3)) == 0);
  CHECK(determinant(braid_closure(BraidWord(3, {1, 1, 1}))) == 0);  // split trefoil + loop
}

TEST_CASE("determinant is invariant under Reidemeister-style diagram changes") {
  // pairs of braid closures presenting the same link
  const std::pair<BraidWord, BraidWord> pairs[] = {
      {BraidWord(1, {}), BraidWord(2, {1})},                      // R1 kink
      {BraidWord(1, {}), BraidWord(2, {-1})},                     // R1, negative kink
      {BraidWord(2, {1, 1, 1}), BraidWord(2, {1, 1, 1, 1, -1})},  // R2 on a strand
      {BraidWord(2, {1, 1, 1}), BraidWord(3, {1, 1, 1, 2})},      // stabilization
      {BraidWord(2, {1, 1, 1}), BraidWord(3, {1, 1, 1, -2})},
      {BraidWord(3, {1, 2, 1, 1}), BraidWord(3, {2, 1, 2, 1})},   // R3 braid relation
      {BraidWord(3, {1, -2, 1, -2}), BraidWord(3, {-2, 1, -2, 1})},  // cyclic word shift
      {BraidWord(2, {1, 1}), BraidWord(3, {1, 1, 2})},            // hopf, stabilized
      {BraidWord(3, {1, 2, 2, 1}), BraidWord(3, {2, 1, 1, 2})},   // flype-like commutation
  };
  for (const auto& [w1, w2] : pairs)
    CHECK(determinant(braid_closure(w1)) == determinant(braid_closure(w2)));
}

TEST_CASE("double branched cover homology") {
  for (std::size_t c = 1; c <= 3; ++c) {
    const auto m = dbc_homology(DBCReference{links::unlink(c), "unlink"}, 5);
    CHECK(m == ZdModuleStructure(5, std::vector<std::int64_t>(c - 1, 5)));
  }
  CHECK(dbc_homology(DBCReference{links::torus_3q(5), "T(3,5)"}, 5).trivial());
  CHECK(dbc_homology(DBCReference{links::torus_3q(7), "T(3,7)"}, 5).trivial());
  CHECK(dbc_homology(DBCReference{links::hopf(), "hopf"}, 2) == ZdModuleStructure(2, {2}));

  // split diagram: factor homology plus one Z_d per extra factor
  const auto split = braid_closure(BraidWord(3, {1, 1, 1}));
  CHECK(dbc_homology(DBCReference{split, ""}, 3) == ZdModuleStructure(3, {3, 3}));
  // catalog references
  CHECK(dbc_homology(std::get<DBCReference>(catalog("Poincare")), 5).trivial());
  CHECK(dbc_homology(std::get<DBCReference>(catalog("Sigma237")), 5).trivial());
}

TEST_CASE("d-moves on braids") {
  SECTION("insert sigma_1^5 into the empty 2-braid") {
    const auto moved = apply_d_move(BraidWord(2, {}), 0, 1, 1, 5);
    CHECK(moved.word == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(determinant(braid_closure(moved)) == 5);
    // the covering shadow: S^1 x S^2 gains Z_5 = Z_5 homology
    CHECK(dbc_homology(DBCReference{braid_closure(moved), ""}, 5) ==
          dbc_homology(DBCReference{links::unlink(2), ""}, 5));
  }
  SECTION("insert then delete is the identity") {
    const BraidWord b(3, {1, -2, 1});
    const auto moved = apply_d_move(b, 1, 2, -1, 3);
    std::vector<int> w = moved.word;
    w.erase(w.begin() + 1, w.begin() + 4);
    CHECK(w == b.word);
  }
  SECTION("out of range") {
    CHECK_THROWS_AS(apply_d_move(BraidWord(2, {}), 1, 1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(apply_d_move(BraidWord(2, {}), 0, 2, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(apply_d_move(BraidWord(2, {}), 0, 1, 2, 3), std::invalid_argument);
  }
  SECTION("T(3,5) with sigma_1^-5 inserted keeps its Z_5 cover homology") {
    const BraidWord t35(3, {1, 2, 1, 2, 1, 2, 1, 2, 1, 2});
    const auto moved = apply_d_move(t35, 4, 1, -1, 5);
    CHECK(dbc_homology(DBCReference{braid_closure(moved), ""}, 5) ==
          dbc_homology(DBCReference{braid_closure(t35), ""}, 5));
  }
  SECTION("mod-d cover homology is a d-move invariant, fuzzed") {
    std::mt19937 rng(55);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = random_braid(rng);
      const std::int64_t d = coin(rng) ? 3 : 5;
      std::uniform_int_distribution<std::size_t> posd(0, b.word.size());
      std::uniform_int_distribution<int> gend(1, b.strands - 1);
      const auto moved = apply_d_move(b, posd(rng), gend(rng), coin(rng) ? 1 : -1, d);
      REQUIRE(dbc_homology(DBCReference{braid_closure(moved), ""}, d) ==
              dbc_homology(DBCReference{braid_closure(b), ""}, d));
    }
  }
}

TEST_CASE("diagram validation") {
  SECTION("arc label appearing once is rejected") {
    CHECK_THROWS_AS(LinkDiagram({Crossing{1, 2, 3, 4}}, {{1, 2, 3, 4}}),
                    std::invalid_argument);
  }
  SECTION("component partition must cover crossing arcs") {
    CHECK_THROWS_AS(LinkDiagram({Crossing{1, 2, 2, 1}}, {{1}}), std::invalid_argument);
  }
  SECTION("signs length mismatch") {
    const auto hopf = links::hopf();
    CHECK_THROWS_AS(LinkDiagram(hopf.crossings(), hopf.components(), std::vector<int>{1}),
                    std::invalid_argument);
  }
  SECTION("hand-entered kink round-trips") {
    // positive kink: crossing (1,1,2,2), single component 1 -> 2
    const LinkDiagram kink({Crossing{1, 1, 2, 2}}, {{1, 2}});
    CHECK(kink.signs() == std::vector<int>{1});
    CHECK(determinant(kink) == 1);
  }
}
