#include "tab3/reductions.hpp"

#include <algorithm>
#include <cassert>

namespace tab3 {

Dims3 EmbeddingSpec::target() const {
  return Dims3(3, source.r * source.c, source.r + source.c + source.h);
}

int EmbeddingSpec::pair_index(int i, int j) const { return (i - 1) * source.c + j; }

namespace {

void validate_one_marginals(const OneMarginals &u) {
  if (int(u.i.size()) != u.dims.r || int(u.j.size()) != u.dims.c ||
      int(u.k.size()) != u.dims.h)
    fail(Status::invalid_input, "1-marginal vector lengths do not match dims");
  auto nonneg = [](const std::vector<Int> &v) {
    return std::all_of(v.begin(), v.end(), [](const Int &x) { return x >= 0; });
  };
  if (!nonneg(u.i) || !nonneg(u.j) || !nonneg(u.k))
    fail(Status::invalid_input, "1-marginals must be nonnegative");
}

Int vec_sum(const std::vector<Int> &v) {
  Int s = 0;
  for (const Int &x : v) s += x;
  return s;
}

Int vec_max(const std::vector<Int> &v) {
  Int m = 0;
  for (const Int &x : v) m = std::max(m, x);
  return m;
}

}  // namespace

Embedding embed_bounds(const OneMarginals &u, const Table3 &bounds) {
  validate_one_marginals(u);
  if (u.dims != bounds.dims())
    fail(Status::invalid_input, "1-marginal dims " + to_string(u.dims) +
                                    " do not match bounds dims " + to_string(bounds.dims()));
  if (!bounds.all_nonnegative())
    fail(Status::invalid_input, "upper bounds must be nonnegative");
  const Dims3 d = u.dims;
  const Int total = vec_sum(u.i);
  if (vec_sum(u.j) != total || vec_sum(u.k) != total)
    fail(Status::invalid_input, "1-marginals are inconsistent: axis totals differ");
  for (int k = 1; k <= d.h; ++k) {
    Int layer = 0;
    for (int i = 1; i <= d.r; ++i)
      for (int j = 1; j <= d.c; ++j) layer += bounds.at(i, j, k);
    if (layer < u.k[std::size_t(k - 1)])
      fail(Status::invalid_input,
           "bounds in layer k=" + std::to_string(k) +
               " sum below the prescribed 1-marginal; the system is trivially infeasible");
  }

  EmbeddingSpec spec{d, std::min(vec_max(u.i), vec_max(u.j)), u, bounds};
  const Int &U = spec.U;
  const Dims3 td = spec.target();
  TwoMarginals m = TwoMarginals::zero(td);

  // Vertical marginal (t, ij): a pair column must absorb U in its row
  // segment, U in its column segment, and its full bound stack in between.
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j) {
      const int ij = spec.pair_index(i, j);
      Int stack = 0;
      for (int k = 1; k <= d.h; ++k) stack += bounds.at(i, j, k);
      m.ij.at(1, ij) = U;
      m.ij.at(2, ij) = stack;
      m.ij.at(3, ij) = U;
    }

  // (t, g) marginal: layer totals split between use and slack in the dom
  // segment; the row/col segments meter out the uniform budgets.
  for (int k = 1; k <= d.h; ++k) {
    Int layer = 0;
    for (int i = 1; i <= d.r; ++i)
      for (int j = 1; j <= d.c; ++j) layer += bounds.at(i, j, k);
    m.ik.at(1, spec.dom_index(k)) = u.k[std::size_t(k - 1)];
    m.ik.at(2, spec.dom_index(k)) = layer - u.k[std::size_t(k - 1)];
    m.ik.at(3, spec.dom_index(k)) = 0;
  }
  for (int i = 1; i <= d.r; ++i) {
    const Int &ui = u.i[std::size_t(i - 1)];
    assert(d.c * U - ui >= 0);
    m.ik.at(1, spec.row_index(i)) = d.c * U - ui;
    m.ik.at(2, spec.row_index(i)) = 0;
    m.ik.at(3, spec.row_index(i)) = ui;
  }
  for (int j = 1; j <= d.c; ++j) {
    const Int &uj = u.j[std::size_t(j - 1)];
    assert(d.r * U - uj >= 0);
    m.ik.at(1, spec.col_index(j)) = 0;
    m.ik.at(2, spec.col_index(j)) = uj;
    m.ik.at(3, spec.col_index(j)) = d.r * U - uj;
  }

  // (ij, g) marginal: each pair column meets its own bounds in the dom
  // segment and the uniform budget on its own row and column positions.
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j) {
      const int ij = spec.pair_index(i, j);
      for (int k = 1; k <= d.h; ++k)
        m.jk.at(ij, spec.dom_index(k)) = bounds.at(i, j, k);
      m.jk.at(ij, spec.row_index(i)) = U;
      m.jk.at(ij, spec.col_index(j)) = U;
    }

  return Embedding{std::move(m), std::move(spec)};
}

namespace {

// Shared lift: works for both integral and rational tables. Num is Int or
// Rat; `one` converts 1 into the right type.
template <typename TableT, typename Num>
TableT lift_impl(const TableT &x, const EmbeddingSpec &spec) {
  const Dims3 &d = spec.source;
  if (x.dims() != d)
    fail(Status::invalid_input, "solution dims do not match the embedding source");
  if (!x.all_nonnegative())
    fail(Status::invalid_input, "solution violates a bound or 1-marginal");
  // 1-marginals and domination, checked exactly.
  for (int i = 1; i <= d.r; ++i) {
    Num s{};
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) s += x.at(i, j, k);
    if (s != Num(spec.ones.i[std::size_t(i - 1)]))
      fail(Status::invalid_input, "solution violates a bound or 1-marginal");
  }
  for (int j = 1; j <= d.c; ++j) {
    Num s{};
    for (int i = 1; i <= d.r; ++i)
      for (int k = 1; k <= d.h; ++k) s += x.at(i, j, k);
    if (s != Num(spec.ones.j[std::size_t(j - 1)]))
      fail(Status::invalid_input, "solution violates a bound or 1-marginal");
  }
  for (int k = 1; k <= d.h; ++k) {
    Num s{};
    for (int i = 1; i <= d.r; ++i)
      for (int j = 1; j <= d.c; ++j) s += x.at(i, j, k);
    if (s != Num(spec.ones.k[std::size_t(k - 1)]))
      fail(Status::invalid_input, "solution violates a bound or 1-marginal");
  }
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k)
        if (x.at(i, j, k) > Num(spec.bounds.at(i, j, k)))
          fail(Status::invalid_input, "solution violates a bound or 1-marginal");

  TableT y(spec.target());
  const Num U = Num(spec.U);
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j) {
      const int ij = spec.pair_index(i, j);
      Num stack{};
      for (int k = 1; k <= d.h; ++k) {
        const Num &v = x.at(i, j, k);
        stack += v;
        y.at(1, ij, spec.dom_index(k)) = v;
        y.at(2, ij, spec.dom_index(k)) = Num(spec.bounds.at(i, j, k)) - v;
      }
      // Each pair column spends U - stack on its row position in layer 1 and
      // mirrors the split on its column position in layers 2/3.
      y.at(1, ij, spec.row_index(i)) = U - stack;
      y.at(3, ij, spec.row_index(i)) = stack;
      y.at(2, ij, spec.col_index(j)) = stack;
      y.at(3, ij, spec.col_index(j)) = U - stack;
    }
  return y;
}

template <typename TableT>
TableT project_impl(const TableT &y, const EmbeddingSpec &spec) {
  const Embedding reference = embed_bounds(spec.ones, spec.bounds);
  if (y.dims() != spec.target())
    fail(Status::invalid_input, "embedded table dims do not match the embedding target");
  if (!satisfies(y, reference.marginals))
    fail(Status::invalid_input, "embedded table does not satisfy the constructed marginals");
  const Dims3 &d = spec.source;
  TableT x(d);
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k)
        x.at(i, j, k) = y.at(1, spec.pair_index(i, j), spec.dom_index(k));
  return x;
}

}  // namespace

Table3 lift_embedded(const Table3 &x, const EmbeddingSpec &spec) {
  return lift_impl<Table3, Int>(x, spec);
}

RealTable3 lift_embedded(const RealTable3 &x, const EmbeddingSpec &spec) {
  return lift_impl<RealTable3, Rat>(x, spec);
}

Table3 project_embedded(const Table3 &y, const EmbeddingSpec &spec) {
  return project_impl(y, spec);
}

RealTable3 project_embedded(const RealTable3 &y, const EmbeddingSpec &spec) {
  return project_impl(y, spec);
}

namespace {

void validate_binary_cube(const Table3 &p, const char *what) {
  const Dims3 &d = p.dims();
  if (d.r != d.c || d.c != d.h)
    fail(Status::invalid_input, std::string(what) + " requires a cubical bound table");
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k)
        if (p.at(i, j, k) != 0 && p.at(i, j, k) != 1)
          fail(Status::invalid_input, std::string(what) + " requires 0/1 bounds");
}

OneMarginals unit_marginals(const Dims3 &d) {
  OneMarginals u = OneMarginals::zero(d);
  std::fill(u.i.begin(), u.i.end(), Int(1));
  std::fill(u.j.begin(), u.j.end(), Int(1));
  std::fill(u.k.begin(), u.k.end(), Int(1));
  return u;
}

}  // namespace

Embedding reduce_3dm(const Table3 &p) {
  validate_binary_cube(p, "matching reduction");
  return embed_bounds(unit_marginals(p.dims()), p);
}

PermanentReduction permanent_marginals(const Matrix &a) {
  if (a.rows() != a.cols())
    fail(Status::invalid_input, "permanent reduction requires a square matrix");
  const int n = a.rows();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (a.at(i, j) != 0 && a.at(i, j) != 1)
        fail(Status::invalid_input, "permanent reduction requires 0/1 entries");
  PermanentReduction out;
  for (int i = 1; i <= n; ++i)
    if (a.row_sum(i) == 0) out.trivially_infeasible = true;
  for (int j = 1; j <= n; ++j)
    if (a.col_sum(j) == 0) out.trivially_infeasible = true;
  if (out.trivially_infeasible) return out;

  TwoMarginals m = TwoMarginals::zero(Dims3(2, n, n));
  for (int i = 1; i <= n; ++i) {
    m.ij.at(1, i) = 1;
    m.ij.at(2, i) = a.row_sum(i) - 1;
  }
  for (int j = 1; j <= n; ++j) {
    m.ik.at(1, j) = 1;
    m.ik.at(2, j) = a.col_sum(j) - 1;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m.jk.at(i, j) = a.at(i, j);
  out.marginals = std::move(m);
  return out;
}

Table3 canonical_gadget_table(const TwoMarginals &m) {
  const ConsistencyReport rep = check_consistency(m);
  if (!rep.consistent)
    fail(Status::invalid_input,
         "gadget construction requires consistent marginals; first violated equation: " +
             rep.violations.front().equation);
  const Dims3 &d = m.dims;
  Table3 t(Dims3(d.r + 1, d.c + 1, d.h + 1));
  t.at(1, 1, 1) = rep.total;
  for (int s = 2; s <= d.r + 1; ++s)
    for (int u = 2; u <= d.h + 1; ++u) t.at(s, 1, u) = m.ik.at(s - 1, u - 1);
  for (int v = 2; v <= d.c + 1; ++v)
    for (int u = 2; u <= d.h + 1; ++u) t.at(1, v, u) = m.jk.at(v - 1, u - 1);
  for (int s = 2; s <= d.r + 1; ++s)
    for (int v = 2; v <= d.c + 1; ++v) t.at(s, v, 1) = m.ij.at(s - 1, v - 1);
  return t;
}

ZeroGadget secure_zero_gadget(const TwoMarginals &m) {
  const Table3 witness = canonical_gadget_table(m);
  ZeroGadget g;
  g.marginals = marginals2_of(witness);
  g.target = EntryIndex{1, 1, 1};
  g.total = witness.at(1, 1, 1);
  g.source = m.dims;
  return g;
}

FrechetGadget secure_frechet_gadget(const Table3 &p) {
  validate_binary_cube(p, "threshold gadget");
  const int n = p.dims().r;
  const Dims3 ext(n + 1, n + 1, n + 1);

  // Extend the cube with spoke cells that can always absorb the full demand:
  // each new border line carries a single unit bound and the corner takes 2n.
  Table3 q(ext);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) q.at(i, j, k) = p.at(i, j, k);
  for (int i = 1; i <= n; ++i) q.at(i, n + 1, n + 1) = 1;
  for (int j = 1; j <= n; ++j) q.at(n + 1, j, n + 1) = 1;
  for (int k = 1; k <= n; ++k) q.at(n + 1, n + 1, k) = 1;
  q.at(n + 1, n + 1, n + 1) = 2 * n;

  OneMarginals u = unit_marginals(ext);
  u.i[std::size_t(n)] = 2 * n;
  u.j[std::size_t(n)] = 2 * n;
  u.k[std::size_t(n)] = 2 * n;

  FrechetGadget g{embed_bounds(u, q), n,
                  EntryIndex{1, (n + 1) * (n + 1), n + 1}, Int(2 * n)};
  return g;
}

SourceInstance vlach_instance() {
  const Dims3 d(2, 2, 2);
  SourceInstance s{unit_marginals(d), Table3(d)};
  s.bounds.at(1, 1, 1) = 1;
  s.bounds.at(2, 2, 1) = 1;
  s.bounds.at(1, 2, 2) = 1;
  s.bounds.at(2, 1, 2) = 1;
  return s;
}

SourceInstance example21_instance() {
  const Dims3 d(2, 2, 2);
  SourceInstance s{unit_marginals(d), Table3::filled(d, Int(1))};
  s.bounds.at(2, 1, 1) = 0;
  s.bounds.at(2, 2, 1) = 0;
  s.bounds.at(2, 1, 2) = 0;
  return s;
}

}  // namespace tab3
