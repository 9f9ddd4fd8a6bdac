#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tab3/oracle.hpp"
#include "testutil.hpp"

using namespace tab3;
using testutil::Rng;

namespace {

TwoMarginals uniform_marginals(const Dims3 &d, const Int &v) {
  TwoMarginals m;
  m.dims = d;
  m.ij = Matrix(d.r, d.c);
  m.ik = Matrix(d.r, d.h);
  m.jk = Matrix(d.c, d.h);
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j) m.ij.at(i, j) = v;
  for (int i = 1; i <= d.r; ++i)
    for (int k = 1; k <= d.h; ++k) m.ik.at(i, k) = v;
  for (int j = 1; j <= d.c; ++j)
    for (int k = 1; k <= d.h; ++k) m.jk.at(j, k) = v;
  return m;
}

OneMarginals unit_ones(const Dims3 &d) {
  OneMarginals u;
  u.dims = d;
  u.i.assign(std::size_t(d.r), 1);
  u.j.assign(std::size_t(d.c), 1);
  u.k.assign(std::size_t(d.h), 1);
  return u;
}

Table3 cube_from_bits(const Dims3 &d, unsigned bits) {
  Table3 p(d);
  int pos = 0;
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) p.at(i, j, k) = (bits >> pos++) & 1u;
  return p;
}

}  // namespace

TEST_CASE("degenerate dimensions") {
  TwoMarginals m;
  m.dims = Dims3(1, 1, 1);
  m.ij = Matrix::from_rows({{5}});
  m.ik = m.ij;
  m.jk = m.ij;
  CHECK(brute_count(m) == 1);
  CHECK(brute_exists(m));
  CHECK(brute_entry_set(m, {1, 1, 1}) == std::vector<Int>{5});
  m.jk.at(1, 1) = 4;
  CHECK(brute_count(m) == 0);
  CHECK(!brute_exists(m));
  CHECK(brute_entry_set(m, {1, 1, 1}).empty());
}

TEST_CASE("uniform marginals on the 2-cube") {
  const TwoMarginals ones = uniform_marginals(Dims3(2, 2, 2), 1);
  CHECK(brute_count(ones) == 2);  // the two disjoint diagonal pairs
  CHECK(brute_entry_set(ones, {1, 1, 1}) == std::vector<Int>{0, 1});

  const TwoMarginals twos = uniform_marginals(Dims3(2, 2, 2), 2);
  const std::vector<Int> vals = brute_entry_set(twos, {1, 1, 1});
  CHECK(vals == std::vector<Int>{0, 1, 2});
  for (const Table3 &t : brute_tables(twos)) CHECK(satisfies(t, twos));
}

TEST_CASE("brute enumeration agrees with its own witnesses") {
  Rng rng(97531);
  for (int round = 0; round < 40; ++round) {
    const Dims3 d = testutil::random_dims(rng, 3, 3, 3);
    const Table3 t = testutil::random_table(rng, d, 2);
    const TwoMarginals m = marginals2_of(t);

    CHECK(brute_exists(m));
    const std::vector<Table3> all = brute_tables(m);
    CHECK(brute_count(m) == Int(long(all.size())));
    CHECK(std::find(all.begin(), all.end(), t) != all.end());
    for (const Table3 &s : all) CHECK(satisfies(s, m));

    const EntryIndex e{1 + rng.below(d.r), 1 + rng.below(d.c), 1 + rng.below(d.h)};
    const std::vector<Int> vals = brute_entry_set(m, e);
    CHECK(std::binary_search(vals.begin(), vals.end(), t.at(e.i, e.j, e.k)));
    const Int bound = frechet_upper(m, e);
    for (const Int &v : vals) {
      CHECK(v >= 0);
      CHECK(v <= bound);
      CHECK(brute_entry_attains(m, e, v));
    }
    CHECK(!brute_entry_attains(m, e, bound + 1));
  }
}

TEST_CASE("inconsistent marginals have no tables") {
  TwoMarginals m = uniform_marginals(Dims3(2, 2, 2), 1);
  m.ij.at(1, 1) = 3;
  CHECK(brute_count(m) == 0);
  CHECK(!brute_exists(m));
}

TEST_CASE("bounded enumeration with unit marginals") {
  const Dims3 d(2, 2, 2);
  const OneMarginals u = unit_ones(d);
  const Table3 free_bounds = Table3::filled(d, 1);
  CHECK(brute_count_bounded(u, free_bounds) == 4);

  Table3 blocked = free_bounds;
  blocked.at(1, 1, 1) = 0;
  CHECK(brute_count_bounded(u, blocked) == 3);

  for (const Table3 &t : brute_tables_bounded(u, free_bounds)) {
    CHECK(dominated(t, free_bounds));
    CHECK(marginals1_of(t) == u);
  }
}

TEST_CASE("permanents") {
  const Matrix ones3 = Matrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  CHECK(ryser_permanent(ones3) == 6);
  CHECK(permanent_by_permutations(ones3) == 6);

  const Matrix id3 = Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(ryser_permanent(id3) == 1);

  const Matrix zero_row = Matrix::from_rows({{1, 1}, {0, 0}});
  CHECK(ryser_permanent(zero_row) == 0);

  // Exhaustive agreement for every 0/1 matrix up to 3x3.
  for (int n = 1; n <= 3; ++n) {
    const int bits = n * n;
    for (unsigned mask = 0; mask < (1u << bits); ++mask) {
      Matrix a(n, n);
      for (int p = 0; p < bits; ++p)
        a.at(p / n + 1, p % n + 1) = (mask >> p) & 1u;
      CHECK(ryser_permanent(a) == permanent_by_permutations(a));
    }
  }

  // The inclusion-exclusion branch only engages past n = 8; check it against
  // direct permutation enumeration there.
  Rng rng(1331);
  for (int round = 0; round < 3; ++round) {
    const int n = 9 + round % 2;
    Matrix a(n, n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) a.at(i, j) = rng.below(2);
    CHECK(ryser_permanent(a) == permanent_by_permutations(a));
  }

  CHECK_THROWS_AS(ryser_permanent(Matrix::from_rows({{2}})), Error);     // not 0/1
  CHECK_THROWS_AS(ryser_permanent(Matrix::from_rows({{1, 0}})), Error);  // not square
}

TEST_CASE("three-dimensional matching oracle") {
  CHECK(brute_3dm(Table3::filled(Dims3(1, 1, 1), 1)));
  CHECK(!brute_3dm(Table3(Dims3(1, 1, 1))));

  const Dims3 d2(2, 2, 2);
  Table3 diag(d2);
  diag.at(1, 1, 1) = 1;
  diag.at(2, 2, 2) = 1;
  CHECK(brute_3dm(diag));

  Table3 stuck(d2);  // both triples fight over j=1, k=1
  stuck.at(1, 1, 1) = 1;
  stuck.at(2, 1, 1) = 1;
  CHECK(!brute_3dm(stuck));

  // Exhaustive cross-check against the bounded enumerator for every binary
  // 2-cube.
  const OneMarginals u = unit_ones(d2);
  for (unsigned bits = 0; bits < 256; ++bits) {
    const Table3 p = cube_from_bits(d2, bits);
    CHECK(brute_3dm(p) == (brute_count_bounded(u, p) > 0));
  }

  CHECK_THROWS_AS(brute_3dm(Table3::filled(Dims3(2, 2, 2), 2)), Error);  // not binary
  CHECK_THROWS_AS(brute_3dm(Table3::filled(Dims3(2, 2, 1), 1)), Error);  // not a cube
}

TEST_CASE("enumeration limits trip the cap") {
  const TwoMarginals big = uniform_marginals(Dims3(3, 3, 3), 3);
  EnumLimits lim;
  lim.max_nodes = 50;
  bool threw = false;
  try {
    brute_count(big, lim);
  } catch (const Error &e) {
    threw = true;
    CHECK(e.status() == Status::cap_exceeded);
  }
  CHECK(threw);
}

TEST_CASE("rational marginal check") {
  RealTable3 x(Dims3(2, 2, 2));
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) x.at(i, j, k) = Rat(1, 2);
  const TwoMarginals ones = uniform_marginals(Dims3(2, 2, 2), 1);
  CHECK(brute_real_halfint_check(ones, x));
  x.at(2, 2, 2) = Rat(3, 4);
  CHECK(!brute_real_halfint_check(ones, x));
}
