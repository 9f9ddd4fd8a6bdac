#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "tab3/oracle.hpp"
#include "tab3/transfer.hpp"
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

}  // namespace

TEST_CASE("state space indexing") {
  const Matrix v = Matrix::from_rows({{1, 1}, {1, 1}});
  const StateSpace space = build_state_space(v);
  CHECK(space.size == 16);
  CHECK(space.full_index() == 15);
  CHECK(space.radix == std::vector<std::uint64_t>{2, 2, 2, 2});
  CHECK(space.stride == std::vector<std::uint64_t>{8, 4, 2, 1});
  CHECK(space.decode(0) == std::vector<std::uint64_t>{0, 0, 0, 0});
  CHECK(space.decode(9) == std::vector<std::uint64_t>{1, 0, 0, 1});
  for (std::uint64_t s = 0; s < space.size; ++s) CHECK(space.encode(space.decode(s)) == s);

  const StateSpace skew = build_state_space(Matrix::from_rows({{1, 1}, {2, 0}}));
  CHECK(skew.size == 12);

  CHECK_THROWS_AS(build_state_space(v, 15), Error);
  try {
    build_state_space(v, 15);
  } catch (const Error &e) {
    CHECK(e.status() == Status::cap_exceeded);
  }
}

TEST_CASE("layer steps from the zero state are the admissible layers") {
  const StateSpace space = build_state_space(Matrix::from_rows({{1, 1}, {1, 1}}));
  const LayerMatrix step = layer_matrix(space, {1, 1}, {1, 1});
  // Exactly the two permutation layers fit unit row and column sums.
  CHECK(step.successors(0) == std::vector<std::uint64_t>{6, 9});

  const LayerMatrix corner(space, {1, 1}, {1, 1}, EntryConstraint{1, 1});
  CHECK(corner.successors(0) == std::vector<std::uint64_t>{9});
  const LayerMatrix corner0(space, {1, 1}, {1, 1}, EntryConstraint{0, 0});
  CHECK(corner0.successors(0) == std::vector<std::uint64_t>{6});

  // Zero sums only allow standing still.
  const LayerMatrix rest = layer_matrix(space, {0, 0}, {0, 0});
  CHECK(rest.successors(5) == std::vector<std::uint64_t>{5});

  // Sums exceeding what the box can absorb have no successors at all.
  const LayerMatrix over = layer_matrix(space, {3, 0}, {2, 1});
  CHECK(over.successors(0).empty());
}

TEST_CASE("counting matches enumeration on fixed examples") {
  Table3 t(Dims3(2, 2, 2));
  Int v = 1;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) t.at(i, j, k) = v++;
  const TwoMarginals m = marginals2_of(t);
  CHECK(count_tables(m) == brute_count(m));
  CHECK(exists_fixed_rc(m));

  CHECK(count_tables(uniform_marginals(Dims3(2, 2, 2), 1)) == 2);

  TwoMarginals scalar;
  scalar.dims = Dims3(1, 1, 1);
  scalar.ij = Matrix::from_rows({{7}});
  scalar.ik = scalar.ij;
  scalar.jk = scalar.ij;
  CHECK(count_tables(scalar) == 1);

  TwoMarginals bad = uniform_marginals(Dims3(2, 2, 2), 1);
  bad.jk.at(2, 2) = 5;
  CHECK(count_tables(bad) == 0);
  CHECK(!exists_fixed_rc(bad));
}

TEST_CASE("counting matches enumeration on random instances") {
  Rng rng(777);
  for (int round = 0; round < 60; ++round) {
    const Dims3 d = testutil::random_dims(rng, 3, 3, 3);
    const TwoMarginals m = round % 2 == 0
                               ? testutil::random_feasible_marginals(rng, d, 2)
                               : testutil::random_consistent_marginals(rng, d, 8);
    CHECK(count_tables(m) == brute_count(m));
    CHECK(exists_fixed_rc(m) == brute_exists(m));
  }
}

TEST_CASE("count is invariant under axis orientation and layer order") {
  Rng rng(4242);
  const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int round = 0; round < 12; ++round) {
    const Dims3 d = testutil::random_dims(rng, 3, 3, 3);
    const TwoMarginals m = testutil::random_feasible_marginals(rng, d, 2);
    const Int reference = count_tables(m);
    for (const auto &axes : perms)
      CHECK(count_tables(remap(m, testutil::axes_only(d, axes))) == reference);

    // Reversing the k-layers permutes the constraints without changing the
    // solution count.
    AxisMap rev = AxisMap::identity(d);
    std::reverse(rev.index[2].begin(), rev.index[2].end());
    CHECK(count_tables(remap(m, rev)) == reference);
  }
}

TEST_CASE("entry value sets match enumeration") {
  const TwoMarginals twos = uniform_marginals(Dims3(2, 2, 2), 2);
  CHECK(entry_value_set(twos, {1, 1, 1}) == std::vector<Int>{0, 1, 2});
  CHECK(entry_value_set(twos, {2, 1, 2}) == std::vector<Int>{0, 1, 2});

  Rng rng(31415);
  for (int round = 0; round < 25; ++round) {
    const Dims3 d = testutil::random_dims(rng, 3, 3, 3);
    const TwoMarginals m = round % 2 == 0
                               ? testutil::random_feasible_marginals(rng, d, 2)
                               : testutil::random_consistent_marginals(rng, d, 7);
    const EntryIndex e{1 + rng.below(d.r), 1 + rng.below(d.c), 1 + rng.below(d.h)};
    CHECK(entry_value_set(m, e) == brute_entry_set(m, e));
  }

  TwoMarginals bad = twos;
  bad.ij.at(1, 2) = 9;
  CHECK(entry_value_set(bad, {1, 1, 1}).empty());
  CHECK_THROWS_AS(entry_value_set(twos, {0, 1, 1}), Error);
  CHECK_THROWS_AS(entry_value_set(twos, {1, 1, 3}), Error);
}

TEST_CASE("cap refusal names the obstruction") {
  // Every orientation of this instance needs 5^4 = 625 states.
  const TwoMarginals m = uniform_marginals(Dims3(2, 2, 2), 4);
  bool threw = false;
  try {
    count_tables(m, 100);
  } catch (const Error &e) {
    threw = true;
    CHECK(e.status() == Status::cap_exceeded);
    CHECK(std::string(e.what()).find("100") != std::string::npos);
  }
  CHECK(threw);
  CHECK(count_tables(m, 625) == brute_count(m));
}
