#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "tab3/types.hpp"
#include "testutil.hpp"

using namespace tab3;
using testutil::Rng;

namespace {

Table3 numbered_222() {
  Table3 t(Dims3(2, 2, 2));
  Int v = 1;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) t.at(i, j, k) = v++;
  return t;
}

AxisMap random_axis_map(Rng &rng, const Dims3 &source) {
  AxisMap a;
  std::array<int, 3> perm{0, 1, 2};
  for (int m = 2; m > 0; --m) std::swap(perm[std::size_t(m)], perm[std::size_t(rng.below(m + 1))]);
  a.axis = perm;
  for (int m = 0; m < 3; ++m) {
    const int n = source.extent(a.axis[std::size_t(m)]);
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 1);
    for (int p = n - 1; p > 0; --p)
      std::swap(idx[std::size_t(p)], idx[std::size_t(rng.below(p + 1))]);
    a.index[std::size_t(m)] = std::move(idx);
  }
  validate(a);
  return a;
}

EntryIndex random_entry(Rng &rng, const Dims3 &d) {
  return EntryIndex{1 + rng.below(d.r), 1 + rng.below(d.c), 1 + rng.below(d.h)};
}

}  // namespace

TEST_CASE("dims validation and arithmetic") {
  const Dims3 d(2, 3, 4);
  CHECK(d.extent(0) == 2);
  CHECK(d.extent(1) == 3);
  CHECK(d.extent(2) == 4);
  CHECK(d.cells() == 24);
  CHECK_THROWS_AS(Dims3(0, 1, 1), Error);
  CHECK_THROWS_AS(Dims3(1, -2, 1), Error);
  try {
    Dims3(1, 0, 1);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.status() == Status::invalid_input);
  }
}

TEST_CASE("matrix sums") {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.row_sum(1) == 6);
  CHECK(m.row_sum(2) == 15);
  CHECK(m.col_sum(3) == 9);
  CHECK(m.total() == 21);
  CHECK(m.all_nonnegative());
  Matrix neg = m;
  neg.at(2, 2) = -1;
  CHECK(!neg.all_nonnegative());
}

TEST_CASE("marginals of a numbered table") {
  const Table3 t = numbered_222();
  CHECK(t.total() == 36);
  const TwoMarginals m = marginals2_of(t);
  CHECK(m.ij == Matrix::from_rows({{3, 7}, {11, 15}}));
  CHECK(m.ik == Matrix::from_rows({{4, 6}, {12, 14}}));
  CHECK(m.jk == Matrix::from_rows({{6, 8}, {10, 12}}));
  const OneMarginals u = marginals1_of(t);
  CHECK(u.i == std::vector<Int>{10, 26});
  CHECK(u.j == std::vector<Int>{14, 22});
  CHECK(u.k == std::vector<Int>{16, 20});
}

TEST_CASE("consistency accepts true marginals and reports every violation") {
  TwoMarginals m = marginals2_of(numbered_222());
  ConsistencyReport rep = check_consistency(m);
  CHECK(rep.consistent);
  CHECK(rep.total == 36);
  CHECK(rep.violations.empty());

  m.ij.at(1, 1) = 4;  // bump one cell: breaks i=1, j=1 and both totals
  rep = check_consistency(m);
  CHECK(!rep.consistent);
  REQUIRE(rep.violations.size() == 4);
  auto has = [&rep](const std::string &eq) {
    return std::any_of(rep.violations.begin(), rep.violations.end(),
                       [&eq](const ConsistencyViolation &v) { return v.equation == eq; });
  };
  CHECK(has("i=1"));
  CHECK(has("j=1"));
  CHECK(has("total ij/ik"));
  CHECK(has("total ij/jk"));
  CHECK(rep.violations[0].lhs == 11);
  CHECK(rep.violations[0].rhs == 10);
}

TEST_CASE("frechet upper bound") {
  const TwoMarginals m = marginals2_of(numbered_222());
  CHECK(frechet_upper(m, {1, 1, 1}) == 3);   // min(ij=3, ik=4, jk=6)
  CHECK(frechet_upper(m, {2, 2, 2}) == 12);  // min(15, 14, 12)
  CHECK_THROWS_AS(frechet_upper(m, {3, 1, 1}), Error);
  CHECK_THROWS_AS(frechet_upper(m, {1, 0, 1}), Error);
}

TEST_CASE("satisfies and dominated") {
  const Table3 t = numbered_222();
  const TwoMarginals m = marginals2_of(t);
  CHECK(satisfies(t, m));
  Table3 other = t;
  other.at(1, 1, 1) += 1;
  CHECK(!satisfies(other, m));

  CHECK(dominated(t, t));
  CHECK(dominated(Table3(t.dims()), t));
  CHECK(!dominated(other, t));

  // All entries 1/2 on (2,2,2) has all-ones 2-marginals.
  RealTable3 x(Dims3(2, 2, 2));
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) x.at(i, j, k) = Rat(1, 2);
  TwoMarginals ones;
  ones.dims = Dims3(2, 2, 2);
  ones.ij = Matrix::from_rows({{1, 1}, {1, 1}});
  ones.ik = ones.ij;
  ones.jk = ones.ij;
  CHECK(satisfies(x, ones));
  x.at(1, 1, 1) = Rat(1, 3);
  CHECK(!satisfies(x, ones));
  CHECK(dominated(x, Table3::filled(Dims3(2, 2, 2), 1)));
}

TEST_CASE("identity remap is the identity") {
  const Table3 t = numbered_222();
  const AxisMap id = AxisMap::identity(t.dims());
  CHECK(remap(t, id) == t);
  CHECK(remap(marginals2_of(t), id) == marginals2_of(t));
  CHECK(remap(EntryIndex{2, 1, 2}, id) == EntryIndex{2, 1, 2});
}

TEST_CASE("remap respects structure on random maps") {
  Rng rng(20260816);
  for (int round = 0; round < 60; ++round) {
    const Dims3 d = testutil::random_dims(rng, 3, 3, 3);
    const Table3 t = testutil::random_table(rng, d, 4);
    const AxisMap a = random_axis_map(rng, d);

    const Table3 mapped = remap(t, a);
    CHECK(mapped.dims() == a.target_dims());
    CHECK(remap(mapped, inverse(a)) == t);

    CHECK(marginals2_of(mapped) == remap(marginals2_of(t), a));
    CHECK(marginals1_of(mapped) == remap(marginals1_of(t), a));

    const EntryIndex e = random_entry(rng, d);
    const EntryIndex f = remap(e, a);
    CHECK(mapped.at(f.i, f.j, f.k) == t.at(e.i, e.j, e.k));

    const AxisMap b = random_axis_map(rng, a.target_dims());
    CHECK(remap(mapped, b) == remap(t, compose(b, a)));

    RealTable3 x = RealTable3::from(t);
    x.at(1, 1, 1) += Rat(1, 2);
    const RealTable3 xm = remap(x, a);
    CHECK(xm.at(f.i, f.j, f.k) == x.at(e.i, e.j, e.k));
  }
}

TEST_CASE("axis map validation rejects malformed maps") {
  AxisMap a = AxisMap::identity(Dims3(2, 2, 2));
  a.axis = {0, 0, 2};
  CHECK_THROWS_AS(validate(a), Error);
  AxisMap b = AxisMap::identity(Dims3(2, 2, 2));
  b.index[0] = {1, 1};
  CHECK_THROWS_AS(validate(b), Error);
}
