#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "schurdouble/combinatorics.hpp"

using namespace schurdouble;

TEST_CASE("weight enumeration") {
  auto w = enumerate_weights(2, 2);
  REQUIRE(w.size() == 3);
  CHECK(w[0].parts == std::vector<int>{2, 0});
  CHECK(w[1].parts == std::vector<int>{1, 1});
  CHECK(w[2].parts == std::vector<int>{0, 2});
  CHECK(enumerate_weights(3, 2).size() == 6);  // binom(4,2)
  auto w0 = enumerate_weights(4, 0);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0].parts == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("shortest coset representatives") {
  // full parabolic: only the identity
  auto full = shortest_coset_reps(Weight({3}), CosetSide::Left);
  REQUIRE(full.reps.size() == 1);
  CHECK(full.reps[0].is_identity());
  // S_2 over the trivial parabolic
  auto two = shortest_coset_reps(Weight({1, 1}), CosetSide::Left);
  CHECK(two.reps.size() == 2);
  // lambda = (2,1): three representatives, each shortest in its coset
  auto cd = shortest_coset_reps(Weight({2, 1}), CosetSide::Left);
  REQUIRE(cd.reps.size() == 3);
  // brute force: group S_3 by S_lambda g and filter by length minimality
  auto perms = Perm::all(3);
  auto in_subgroup = [&](const Perm& s) {
    return s(0) < 2 && s(1) < 2 && s(2) == 2;
  };
  std::set<std::vector<int>> best;
  for (const Perm& g : perms) {
    bool minimal = true;
    for (const Perm& s : perms) {
      if (!in_subgroup(s)) continue;
      if (s.compose(g).length() < g.length()) minimal = false;
    }
    if (minimal) best.insert(g.images());
  }
  std::set<std::vector<int>> got;
  for (const Perm& g : cd.reps) got.insert(g.images());
  CHECK(got == best);
}

TEST_CASE("right side representatives are inverses") {
  auto left = shortest_coset_reps(Weight({2, 2}), CosetSide::Left);
  auto right = shortest_coset_reps(Weight({2, 2}), CosetSide::Right);
  std::set<std::vector<int>> li, ri;
  for (const Perm& g : left.reps) li.insert(g.inverse().images());
  for (const Perm& g : right.reps) ri.insert(g.images());
  CHECK(li == ri);
}

TEST_CASE("double coset representative") {
  // block-preserving case: diag(lambda) gives the identity
  MatrixWeight diag(2, {2, 0, 0, 1});
  CHECK(double_coset_rep(diag).is_identity());
  // the antidiagonal 2x2 case gives the transposition
  MatrixWeight anti(2, {0, 1, 1, 0});
  CHECK(double_coset_rep(anti) == Perm::transposition(2, 0, 1));
  // intersection counts characterize g(C)
  MatrixWeight c(2, {1, 1, 1, 0});
  Perm g = double_coset_rep(c);
  Weight lam = c.beta(), mu = c.alpha();
  auto lb = weight_blocks(lam.parts), mb = weight_blocks(mu.parts);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) {
      int cnt = 0;
      for (int p = lb[s].first; p < lb[s].second; ++p)
        if (g(p) >= mb[r].first && g(p) < mb[r].second) ++cnt;
      CHECK(cnt == c.at(r, s));
    }
}

TEST_CASE("tuple spaces") {
  // one even label: M(1,d) has one tuple
  TupleSpace even({0}, 3);
  CHECK(even.size() == 1);
  // single odd label cannot carry multiplicity 2
  TupleSpace odd({1}, 2);
  CHECK(odd.size() == 0);
  // one even + one odd label at d = 1
  TupleSpace mixed({0, 1}, 1);
  CHECK(mixed.size() == 2);
  // 2x2 matrices of total 2 over one even label: 10 tuples
  TupleSpace m22(std::vector<int>(4, 0), 2);
  CHECK(m22.size() == 10);
}

TEST_CASE("orbit words and multinomial count") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int nslots = 2 + static_cast<int>(rng() % 3);
    std::vector<int> par(nslots);
    for (int i = 0; i < nslots; ++i) par[i] = 0;  // evens-first convention
    const int d = 1 + static_cast<int>(rng() % 4);
    TupleSpace ts(par, d);
    const ExpTuple& t = ts.tuple(static_cast<int>(rng() % ts.size()));
    auto orbit = ts.orbit_words(t);
    CHECK(Int(orbit.size()) == ts.orbit_size(t));
    std::set<Word> distinct(orbit.begin(), orbit.end());
    CHECK(distinct.size() == orbit.size());
    for (const Word& w : orbit) CHECK(word_content(w, nslots) == t);
  }
}

TEST_CASE("tuple factorial and binomial identities") {
  // all {0,1}: factorial 1
  CHECK(tuple_factorial({1, 0, 1, 1}) == 1);
  CHECK(tuple_binomial({2, 0}, {1, 0}) == 2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    ExpTuple c(3), d(3);
    for (int i = 0; i < 3; ++i) {
      c[i] = static_cast<int>(rng() % 3);
      d[i] = static_cast<int>(rng() % 3);
    }
    ExpTuple sum = tuple_add(c, d);
    CHECK(tuple_binomial(sum, d) * tuple_factorial(c) * tuple_factorial(d) ==
          tuple_factorial(sum));
  }
}

TEST_CASE("colored weights") {
  auto cw = enumerate_colored_weights(2, 2, 2);
  CHECK(cw.size() == 10);  // compositions of 2 into 4 parts
  for (const auto& l : cw) CHECK(l.pi().sum() == 2);
}
