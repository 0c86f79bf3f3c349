#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ck/int_matrix.hpp"
#include "ck/smith.hpp"
#include "ck/zmod.hpp"
#include "test_util.hpp"

using namespace ck;
using ck_test::cokernel_matches_bruteforce;
using ck_test::columns_generate;
using ck_test::random_matrix;
using ck_test::random_unimodular;

TEST_CASE("smith normal form on pinned examples") {
  SECTION("diag(2,3) becomes diag(1,6)") {
    const auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.D == IntMatrix{{1, 0}, {0, 6}});
    CHECK(s.U * IntMatrix{{2, 0}, {0, 3}} * s.V == s.D);
  }
  SECTION("identity is fixed") {
    const auto s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.D == IntMatrix::identity(3));
  }
  SECTION("1x1") {
    const auto s = smith_normal_form(IntMatrix{{10}});
    CHECK(s.D == IntMatrix{{10}});
  }
  SECTION("empty matrices are legal") {
    const auto s = smith_normal_form(IntMatrix(0, 0));
    CHECK(s.D.rows() == 0);
    const auto s2 = smith_normal_form(IntMatrix(2, 0));
    CHECK(s2.U == IntMatrix::identity(2));
  }
  SECTION("deterministic for afixed input") {
    const IntMatrix a{{4, 6, 2}, {6, 4, 8}};
    const auto s1 = smith_normal_form(a), s2 = smith_normal_form(a);
    CHECK(s1.D == s2.D);
    CHECK(s1.U == s2.U);
    CHECK(s1.V == s2.V);
  }
}

TEST_CASE("smith normal form contract on random matrices") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> dim(0, 6);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    const IntMatrix a = random_matrix(rng, r, c, -9, 9);
    const auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    REQUIRE(abs(s.U.determinant()) == 1);
    REQUIRE(abs(s.V.determinant()) == 1);
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      REQUIRE(diag[i] >= 0);
      if (i + 1 < diag.size()) {
        if (diag[i] == 0) REQUIRE(diag[i + 1] == 0);
        else REQUIRE(diag[i + 1] % diag[i] == 0);
      }
    }
    // off-diagonal of D must vanish
    for (std::size_t i = 0; i < s.D.rows(); ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j) REQUIRE(s.D.at(i, j) == 0);
  }
}

TEST_CASE("cokernel_mod pinned examples") {
  SECTION("coker(Z --12--> Z) tensor Z_4 is Z_4") {
    const auto m = cokernel_mod(IntMatrix{{12}}, 4);
    CHECK(m == ZdModuleStructure(4, {4}));
  }
  SECTION("zero 3x3 map mod 5 gives Z_5^3") {
    const auto m = cokernel_mod(IntMatrix(3, 3), 5);
    CHECK(m == ZdModuleStructure(5, {5, 5, 5}));
    CHECK(m.rank() == 3);
  }
  SECTION("[[0,1],[10,3]] mod 5 gives Z_5, against the enumeration oracle") {
    const IntMatrix a{{0, 1}, {10, 3}};
    const auto m = cokernel_mod(a, 5);
    CHECK(m == ZdModuleStructure(5, {5}));
    CHECK(cokernel_matches_bruteforce(a, 5, m));
  }
  SECTION("wide and tall shapes contribute free rank correctly") {
    // 3 rows, 1 column: two untouched Z rows survive mod 7
    const IntMatrix tall(3, 1, {Int(1), Int(0), Int(0)});
    CHECK(cokernel_mod(tall, 7) == ZdModuleStructure(7, {7, 7}));
  }
}

TEST_CASE("cokernel_mod matches brute force on random small matrices") {
  std::mt19937 rng(7);
  const std::int64_t mods[] = {2, 3, 4, 5, 6, 8, 9, 12};
  for (int trial = 0; trial < 120; ++trial) {
    const std::int64_t d = mods[trial % 8];
    const std::size_t r = 1 + trial % 3;  // keep d^r enumerable
    const std::size_t c = trial % 4;
    const IntMatrix a = random_matrix(rng, r, c, -20, 20);
    REQUIRE(cokernel_matches_bruteforce(a, d, cokernel_mod(a, d)));
  }
}

TEST_CASE("cokernel_mod is invariant under unimodular changes and permutations") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> modpick(2, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    const std::int64_t d = modpick(rng);
    const IntMatrix a = random_matrix(rng, r, c, -9, 9);
    const auto base = cokernel_mod(a, d);
    const IntMatrix u = random_unimodular(rng, r);
    const IntMatrix v = random_unimodular(rng, c);
    REQUIRE(cokernel_mod(u * a * v, d) == base);
  }
}

TEST_CASE("det_mod pinned examples and errors") {
  CHECK(det_mod(ZdMatrix::identity(7, 2), 7) == 1);
  CHECK(det_mod(ZdMatrix(3, 2, 2, {2, 1, 1, 2}), 3) == 0);
  // cofactor oracle by hand: 0*1 - 1*5 = -5 = 1 mod 6
  CHECK(det_mod(ZdMatrix(6, 2, 2, {0, 1, 5, 1}), 6) == 1);
  CHECK_THROWS_AS(det_mod(ZdMatrix(5, 2, 3, std::vector<std::int64_t>(6, 1)), 5),
                  std::invalid_argument);
}

TEST_CASE("invertible matrix enumeration") {
  SECTION("units of Z_6") {
    InvertibleMatrixStream s(1, 6);
    std::vector<std::int64_t> units;
    while (auto m = s.next()) units.push_back(m->at(0, 0));
    CHECK(units == std::vector<std::int64_t>{1, 5});
  }
  SECTION("|GL(2, Z_2)| = 6 and |GL(3, Z_2)| = 168") {
    std::size_t c2 = 0, c3 = 0;
    InvertibleMatrixStream s2(2, 2);
    while (s2.next()) ++c2;
    InvertibleMatrixStream s3(3, 2);
    while (s3.next()) ++c3;
    CHECK(c2 == 6);
    CHECK(c3 == 168);
  }
  SECTION("stream count matches group order and the closure oracle") {
    const std::pair<std::size_t, std::int64_t> cases[] = {
        {1, 6}, {1, 12}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {4, 2}};
    for (const auto& [n, d] : cases) {
      std::size_t streamed = 0, oracle = 0;
      InvertibleMatrixStream s(n, d);
      while (auto m = s.next()) {
        ++streamed;
        REQUIRE(columns_generate(*m));  // every yield truly invertible
      }
      // independent brute force over all candidates via column closure
      std::vector<std::int64_t> digits(n * n, 0);
      for (;;) {
        if (columns_generate(ZdMatrix(d, n, n, digits))) ++oracle;
        std::size_t i = digits.size();
        while (i > 0 && ++digits[i - 1] == d) digits[--i] = 0;
        if (i == 0) break;
      }
      CHECK(streamed == oracle);
      CHECK(Int(streamed) == gl_order(n, d));
    }
  }
  SECTION("restartable streams repeat the same sequence") {
    InvertibleMatrixStream a(2, 3), b(2, 3);
    for (int i = 0; i < 10; ++i) {
      auto x = a.next(), y = b.next();
      REQUIRE(x.has_value());
      REQUIRE(*x == *y);
    }
  }
  SECTION("budget rejection names the order") {
    CHECK_THROWS_AS(InvertibleMatrixStream(4, 5), BudgetError);
    try {
      InvertibleMatrixStream(3, 11);
    } catch (const BudgetError& e) {
      CHECK(std::string(e.what()).find(gl_order(3, 11).str()) != std::string::npos);
    }
    // custom budgets are honored
    CHECK_THROWS_AS(InvertibleMatrixStream(2, 3, 10), BudgetError);
  }
  SECTION("GL(0, Z_d) has exactly one (empty) element") {
    InvertibleMatrixStream s(0, 5);
    CHECK(s.next().has_value());
    CHECK_FALSE(s.next().has_value());
  }
}

TEST_CASE("ZdModuleStructure canonical form") {
  CHECK(ZdModuleStructure(6, {2, 6}).to_string() == "Z_2 x Z_6");
  CHECK(ZdModuleStructure(5, {5, 5}).to_string() == "Z_5^2");
  CHECK(ZdModuleStructure(5, {}).to_string() == "trivial");
  CHECK(ZdModuleStructure(6, {6, 6}).rank() == 2);
  CHECK(ZdModuleStructure(6, {2}).rank() == 0);
  CHECK_THROWS_AS(ZdModuleStructure(6, {4}), std::invalid_argument);   // 4 does not divide 6
  CHECK_THROWS_AS(ZdModuleStructure(6, {3, 2}), std::invalid_argument);  // not a chain
  CHECK_THROWS_AS(ZdModuleStructure(6, {1}), std::invalid_argument);
  // direct sums recanonicalize: Z_2 + Z_3 = Z_6
  const auto sum = direct_sum({ZdModuleStructure(6, {2}), ZdModuleStructure(6, {3})}, 6);
  CHECK(sum == ZdModuleStructure(6, {6}));
}
