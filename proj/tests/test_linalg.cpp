#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schurdouble/linalg.hpp"

using namespace schurdouble;

TEST_CASE("hnf is canonical for lattice equality") {
  IntMat a = {{2, 0}, {0, 3}};
  IntMat b = {{2, 3}, {2, -3}, {4, 3}};
  // rows of b span {(2x, 3y)}? 2,3 and 2,-3 give (4,0) and (0,6); with (2,3):
  // lattice {(2a, 3b) : a+b even}? just check hnf agreement with itself and
  // basic containment behavior.
  IntMat ha = hnf_rows(a);
  CHECK(ha == IntMat{{2, 0}, {0, 3}});
  LatticeSpan span(2);
  for (auto& r : b) span.add(IntVec(r));
  CHECK(span.contains({4, 0}));
  CHECK(span.contains({0, 6}));
  CHECK(span.contains({2, 3}));
  CHECK_FALSE(span.contains({1, 0}));
}

TEST_CASE("hnf of permuted generators agrees") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    IntMat rows;
    for (int i = 0; i < 5; ++i) {
      IntVec r;
      for (int j = 0; j < 4; ++j)
        r.push_back(static_cast<long>(rng() % 9) - 4);
      rows.push_back(r);
    }
    IntMat shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    // add a Z-combination of existing rows
    IntVec combo(4, 0);
    for (int j = 0; j < 4; ++j) combo[j] = rows[0][j] * 3 - rows[1][j];
    shuffled.push_back(combo);
    CHECK(hnf_rows(rows) == hnf_rows(shuffled));
  }
}

TEST_CASE("smith invariants") {
  IntMat m = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
  std::vector<Int> s = smith_invariants(m);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == 2);
  CHECK(s[1] == 2);
  // d1 d2 d3 = |det| (brute: det = -432); divisibility chain holds
  CHECK(s[0] * s[1] * s[2] == abs(det_bareiss(m)));
  CHECK(s[2] % s[1] == 0);
  CHECK(s[1] % s[0] == 0);
}

TEST_CASE("bareiss determinant matches cofactor expansion") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    IntMat m(n, IntVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = static_cast<long>(rng() % 7) - 3;
    // brute force by permutation expansion
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    Int det = 0;
    do {
      int inv = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (idx[i] > idx[j]) ++inv;
      Int term = (inv % 2) ? -1 : 1;
      for (int i = 0; i < n; ++i) term *= m[i][idx[i]];
      det += term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    CHECK(det_bareiss(m) == det);
  }
}

TEST_CASE("sparse kernel and rank") {
  // x + y = 0, y + z = 0 over 3 unknowns -> kernel dim 1
  std::vector<SpVecQ> rows(2);
  rows[0][0] = 1;
  rows[0][1] = 1;
  rows[1][1] = 1;
  rows[1][2] = 1;
  auto ker = kernel_basis(rows, 3);
  REQUIRE(ker.size() == 1);
  CHECK(rank_sparse(rows) == 2);
  // the kernel vector satisfies both equations
  for (const auto& r : rows) {
    Rat dot = 0;
    for (const auto& [i, c] : r) {
      auto it = ker[0].find(i);
      if (it != ker[0].end()) dot += c * it->second;
    }
    CHECK(dot == 0);
  }
}

TEST_CASE("column solver expresses vectors in a basis") {
  std::vector<SpVecQ> cols(2);
  cols[0][0] = 1;
  cols[0][2] = 2;
  cols[1][1] = 1;
  cols[1][2] = -1;
  ColumnSolver solver(cols, 3);
  SpVecQ target;
  target[0] = 3;
  target[1] = 5;
  target[2] = 1;  // 3*c0 + 5*c1
  auto c = solver.solve(target);
  REQUIRE(c.has_value());
  CHECK((*c)[0] == 3);
  CHECK((*c)[1] == 5);
  SpVecQ off = target;
  off[2] = 0;
  CHECK_FALSE(solver.solve(off).has_value());
}
