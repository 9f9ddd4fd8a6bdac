#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tab3/oracle.hpp"
#include "tab3/reductions.hpp"
#include "tab3/transfer.hpp"
#include "testutil.hpp"

using namespace tab3;
using testutil::Rng;

namespace {

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

// Infeasible yet consistent 2-marginals on the 2-cube.
TwoMarginals twisted_marginals() {
  TwoMarginals m;
  m.dims = Dims3(2, 2, 2);
  m.ij = Matrix::from_rows({{1, 0}, {0, 1}});
  m.ik = Matrix::from_rows({{0, 1}, {1, 0}});
  m.jk = Matrix::from_rows({{1, 0}, {0, 1}});
  return m;
}

}  // namespace

TEST_CASE("embedding a one-cell system") {
  const Dims3 d(1, 1, 1);
  OneMarginals u;
  u.dims = d;
  u.i = {2};
  u.j = {2};
  u.k = {2};
  const Table3 p = Table3::filled(d, 2);
  const Embedding emb = embed_bounds(u, p);

  CHECK(emb.spec.target() == Dims3(3, 1, 3));
  CHECK(emb.spec.U == 2);
  CHECK(emb.marginals.ij == Matrix::from_rows({{2}, {2}, {2}}));
  CHECK(emb.marginals.ik == Matrix::from_rows({{2, 0, 0}, {0, 0, 2}, {0, 2, 0}}));
  CHECK(emb.marginals.jk == Matrix::from_rows({{2, 2, 2}}));
  CHECK(check_consistency(emb.marginals).consistent);
  CHECK(count_tables(emb.marginals) == 1);

  const Table3 y = lift_embedded(p, emb.spec);  // the only solution is x = 2
  CHECK(satisfies(y, emb.marginals));
  CHECK(project_embedded(y, emb.spec) == p);
}

TEST_CASE("embedding carries solutions both ways") {
  Rng rng(5150);
  for (int round = 0; round < 30; ++round) {
    const Dims3 d = testutil::random_dims(rng, 2, 2, 2);
    const Table3 x = testutil::random_table(rng, d, 1);
    const OneMarginals u = marginals1_of(x);
    Table3 p = x;
    for (int i = 1; i <= d.r; ++i)
      for (int j = 1; j <= d.c; ++j)
        for (int k = 1; k <= d.h; ++k) p.at(i, j, k) += rng.below(2);
    const Embedding emb = embed_bounds(u, p);
    CHECK(check_consistency(emb.marginals).consistent);

    const Table3 y = lift_embedded(x, emb.spec);
    CHECK(satisfies(y, emb.marginals));
    CHECK(project_embedded(y, emb.spec) == x);

    // Same bijection over the rationals.
    const RealTable3 xr = RealTable3::from(x);
    const RealTable3 yr = lift_embedded(xr, emb.spec);
    CHECK(yr == RealTable3::from(y));
    CHECK(project_embedded(yr, emb.spec) == xr);

    // The counts agree because the correspondence is one-to-one.
    CHECK(brute_count_bounded(u, p) == brute_count(emb.marginals));
  }
}

TEST_CASE("embedding rejects broken input") {
  const Dims3 d(2, 2, 2);
  const Table3 p = Table3::filled(d, 1);
  OneMarginals u = unit_ones(d);
  u.k = {3, 0};  // axis totals now disagree: 2 vs 3
  CHECK_THROWS_AS(embed_bounds(u, p), Error);

  OneMarginals w = unit_ones(d);
  w.k = {2, 0};
  Table3 tight = p;  // layer k=1 bound sum 1 < u_k = 2
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) tight.at(i, j, 1) = 0;
  tight.at(1, 1, 1) = 1;
  CHECK_THROWS_AS(embed_bounds(w, tight), Error);

  const Embedding emb = embed_bounds(unit_ones(d), p);
  Table3 over(d);
  over.at(1, 1, 1) = 2;  // violates its bound (and its 1-marginals)
  CHECK_THROWS_AS(lift_embedded(over, emb.spec), Error);

  Table3 diag(d);
  diag.at(1, 1, 1) = 1;
  diag.at(2, 2, 2) = 1;
  Table3 y = lift_embedded(diag, emb.spec);
  y.at(1, 1, 1) += 1;
  CHECK_THROWS_AS(project_embedded(y, emb.spec), Error);
}

TEST_CASE("matching is the unit special case of embedding") {
  // Cubes with an empty layer are rejected outright: no unit layer sum can be
  // met, so reduce_3dm refuses just as embed_bounds does.
  auto has_empty_layer = [](const Table3 &p) {
    const Dims3 &d = p.dims();
    for (int k = 1; k <= d.h; ++k) {
      Int layer = 0;
      for (int i = 1; i <= d.r; ++i)
        for (int j = 1; j <= d.c; ++j) layer += p.at(i, j, k);
      if (layer == 0) return true;
    }
    return false;
  };

  Rng rng(6036);
  for (int round = 0; round < 20; ++round) {
    const int n = 1 + rng.below(2);
    const Dims3 d(n, n, n);
    const Table3 p = testutil::random_table(rng, d, 1);
    if (has_empty_layer(p)) {
      CHECK_THROWS_AS(reduce_3dm(p), Error);
      CHECK(!brute_3dm(p));
      continue;
    }
    const Embedding direct = reduce_3dm(p);
    const Embedding via = embed_bounds(unit_ones(d), p);
    CHECK(direct.marginals == via.marginals);
    CHECK(direct.spec.U == via.spec.U);
  }

  // Feasibility of the embedded system is exactly matchability, for every
  // binary 2-cube that survives the trivial-infeasibility screen.
  const Dims3 d2(2, 2, 2);
  int screened = 0;
  for (unsigned bits = 0; bits < 256; ++bits) {
    const Table3 p = cube_from_bits(d2, bits);
    if (has_empty_layer(p)) {
      ++screened;
      CHECK(!brute_3dm(p));
      continue;
    }
    CHECK(brute_3dm(p) == (count_tables(reduce_3dm(p).marginals) > 0));
  }
  CHECK(screened > 0);
  CHECK(screened < 256);
}

TEST_CASE("permanent marginals") {
  const Matrix ones3 = Matrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  const PermanentReduction red = permanent_marginals(ones3);
  CHECK(!red.trivially_infeasible);
  CHECK(red.marginals.dims == Dims3(2, 3, 3));
  CHECK(count_tables(red.marginals) == 6);

  Matrix hole = ones3;
  hole.at(2, 2) = 0;
  CHECK(count_tables(permanent_marginals(hole).marginals) == ryser_permanent(hole));

  const Matrix dead = Matrix::from_rows({{1, 1}, {0, 0}});
  CHECK(permanent_marginals(dead).trivially_infeasible);

  // Exhaustive over all 3x3 binary matrices without zero lines.
  for (unsigned mask = 0; mask < 512; ++mask) {
    Matrix a(3, 3);
    for (int p = 0; p < 9; ++p) a.at(p / 3 + 1, p % 3 + 1) = (mask >> p) & 1u;
    const PermanentReduction r = permanent_marginals(a);
    if (r.trivially_infeasible) {
      CHECK(ryser_permanent(a) == 0);
      continue;
    }
    CHECK(count_tables(r.marginals) == ryser_permanent(a));
  }
}

TEST_CASE("zero gadget") {
  Table3 x(Dims3(2, 2, 2));
  x.at(1, 1, 1) = 1;
  x.at(2, 2, 2) = 1;
  const TwoMarginals feasible = marginals2_of(x);
  const ZeroGadget g = secure_zero_gadget(feasible);
  CHECK(g.marginals.dims == Dims3(3, 3, 3));
  CHECK(g.target == EntryIndex{1, 1, 1});
  CHECK(g.total == 2);
  CHECK(g.source == Dims3(2, 2, 2));

  const Table3 canonical = canonical_gadget_table(feasible);
  CHECK(canonical.at(1, 1, 1) == g.total);
  CHECK(marginals2_of(canonical) == g.marginals);
  CHECK(satisfies(canonical, g.marginals));

  const std::vector<Int> vals = entry_value_set(g.marginals, g.target);
  CHECK(!vals.empty());
  CHECK(std::binary_search(vals.begin(), vals.end(), Int(0)));

  const TwoMarginals infeasible = twisted_marginals();
  CHECK(!brute_exists(infeasible));
  CHECK(check_consistency(infeasible).consistent);
  const ZeroGadget h = secure_zero_gadget(infeasible);
  CHECK(exists_fixed_rc(h.marginals));  // the gadget itself is always feasible
  const std::vector<Int> hv = entry_value_set(h.marginals, h.target);
  CHECK(!hv.empty());
  CHECK(!std::binary_search(hv.begin(), hv.end(), Int(0)));

  CHECK_THROWS_AS(secure_zero_gadget(TwoMarginals{Dims3(2, 2, 2),
                                                  Matrix::from_rows({{1, 0}, {0, 1}}),
                                                  Matrix::from_rows({{2, 0}, {0, 1}}),
                                                  Matrix::from_rows({{1, 0}, {0, 1}})}),
                  Error);  // inconsistent input is rejected
}

TEST_CASE("frechet gadget") {
  const Table3 yes = cube_from_bits(Dims3(1, 1, 1), 1);
  const FrechetGadget g = secure_frechet_gadget(yes);
  CHECK(g.n == 1);
  CHECK(g.target == EntryIndex{1, 4, 2});
  CHECK(g.target_value == 2);
  CHECK(frechet_upper(g.embedding.marginals, g.target) == 2);
  CHECK(exists_fixed_rc(g.embedding.marginals));
  std::vector<Int> vals = entry_value_set(g.embedding.marginals, g.target);
  CHECK(std::binary_search(vals.begin(), vals.end(), Int(2)));

  const Table3 no = Table3(Dims3(1, 1, 1));
  const FrechetGadget h = secure_frechet_gadget(no);
  CHECK(exists_fixed_rc(h.embedding.marginals));
  vals = entry_value_set(h.embedding.marginals, h.target);
  CHECK(!vals.empty());
  CHECK(!std::binary_search(vals.begin(), vals.end(), Int(2)));

  // n = 2: a matchable and an unmatchable cube.
  Table3 diag(Dims3(2, 2, 2));
  diag.at(1, 1, 1) = 1;
  diag.at(2, 2, 2) = 1;
  const FrechetGadget gd = secure_frechet_gadget(diag);
  CHECK(gd.target == EntryIndex{1, 9, 3});
  CHECK(gd.target_value == 4);
  CHECK(brute_entry_attains(gd.embedding.marginals, gd.target, gd.target_value));

  Table3 stuck(Dims3(2, 2, 2));
  stuck.at(1, 1, 1) = 1;
  stuck.at(2, 1, 1) = 1;
  const FrechetGadget gs = secure_frechet_gadget(stuck);
  CHECK(!brute_entry_attains(gs.embedding.marginals, gs.target, gs.target_value));
  CHECK(brute_exists(gs.embedding.marginals));
}

TEST_CASE("reference instances") {
  const SourceInstance v = vlach_instance();
  CHECK(v.u.dims == Dims3(2, 2, 2));
  CHECK(v.u.i == std::vector<Int>{1, 1});
  Int support = 0;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) support += v.bounds.at(i, j, k);
  CHECK(support == 4);
  CHECK(v.bounds.at(1, 1, 1) == 1);
  CHECK(v.bounds.at(2, 2, 1) == 1);
  CHECK(v.bounds.at(1, 2, 2) == 1);
  CHECK(v.bounds.at(2, 1, 2) == 1);
  CHECK(brute_count_bounded(v.u, v.bounds) == 0);
  const Embedding ve = embed_bounds(v.u, v.bounds);
  CHECK(ve.spec.target() == Dims3(3, 4, 6));
  CHECK(count_tables(ve.marginals) == 0);
  // Every marginal entry of the embedded instance is 0 or 1.
  for (const Matrix *m : {&ve.marginals.ij, &ve.marginals.ik, &ve.marginals.jk})
    for (int i = 1; i <= m->rows(); ++i)
      for (int j = 1; j <= m->cols(); ++j) CHECK(m->at(i, j) <= 1);

  const SourceInstance e = example21_instance();
  CHECK(e.u.dims == Dims3(2, 2, 2));
  CHECK(e.bounds.at(2, 1, 1) == 0);
  CHECK(e.bounds.at(2, 2, 1) == 0);
  CHECK(e.bounds.at(2, 1, 2) == 0);
  CHECK(e.bounds.total() == 5);
  const std::vector<Table3> sols = brute_tables_bounded(e.u, e.bounds);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].at(1, 1, 1) == 1);
  CHECK(sols[0].at(2, 2, 2) == 1);
  CHECK(sols[0].total() == 2);

  const Embedding ee = embed_bounds(e.u, e.bounds);
  CHECK(ee.marginals.ij ==
        Matrix::from_rows({{1, 1, 1, 1}, {2, 2, 0, 1}, {1, 1, 1, 1}}));
  CHECK(count_tables(ee.marginals) == 1);
}
