#include "tab3/lp.hpp"

#include <cassert>
#include <set>

namespace tab3 {

namespace {

std::size_t cell_var(const Dims3 &d, int i, int j, int k) {
  return (std::size_t(i - 1) * d.c + std::size_t(j - 1)) * d.h + std::size_t(k - 1);
}

}  // namespace

RationalSystem transportation_system(const TwoMarginals &m) {
  // frechet_upper would validate too, but check_consistency reuses the shape
  // checks and costs nothing here.
  check_consistency(m);
  const Dims3 &d = m.dims;
  RationalSystem sys;
  sys.dims = d;
  sys.num_cells = int(d.cells());
  sys.num_vars = sys.num_cells;
  auto add_row = [&sys](std::vector<Rat> row, Rat rhs, std::string label) {
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(std::move(rhs));
    sys.labels.push_back(std::move(label));
  };
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j) {
      std::vector<Rat> row(std::size_t(sys.num_vars));
      for (int k = 1; k <= d.h; ++k) row[cell_var(d, i, j, k)] = 1;
      add_row(std::move(row), Rat(m.ij.at(i, j)),
              "ij(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (int i = 1; i <= d.r; ++i)
    for (int k = 1; k <= d.h; ++k) {
      std::vector<Rat> row(std::size_t(sys.num_vars));
      for (int j = 1; j <= d.c; ++j) row[cell_var(d, i, j, k)] = 1;
      add_row(std::move(row), Rat(m.ik.at(i, k)),
              "ik(" + std::to_string(i) + "," + std::to_string(k) + ")");
    }
  for (int j = 1; j <= d.c; ++j)
    for (int k = 1; k <= d.h; ++k) {
      std::vector<Rat> row(std::size_t(sys.num_vars));
      for (int i = 1; i <= d.r; ++i) row[cell_var(d, i, j, k)] = 1;
      add_row(std::move(row), Rat(m.jk.at(j, k)),
              "jk(" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
  return sys;
}

RationalSystem transportation_system(const OneMarginals &u, const Table3 &bounds) {
  if (u.dims != bounds.dims())
    fail(Status::invalid_input, "1-marginal dims do not match bounds dims");
  if (int(u.i.size()) != u.dims.r || int(u.j.size()) != u.dims.c ||
      int(u.k.size()) != u.dims.h)
    fail(Status::invalid_input, "1-marginal vector lengths do not match dims");
  if (!bounds.all_nonnegative())
    fail(Status::invalid_input, "upper bounds must be nonnegative");
  for (const std::vector<Int> *v : {&u.i, &u.j, &u.k})
    for (const Int &x : *v)
      if (x < 0) fail(Status::invalid_input, "1-marginals must be nonnegative");

  const Dims3 &d = u.dims;
  RationalSystem sys;
  sys.dims = d;
  sys.num_cells = int(d.cells());
  sys.num_vars = 2 * sys.num_cells;  // one slack per bound row
  auto add_row = [&sys](std::vector<Rat> row, Rat rhs, std::string label) {
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(std::move(rhs));
    sys.labels.push_back(std::move(label));
  };
  for (int i = 1; i <= d.r; ++i) {
    std::vector<Rat> row(std::size_t(sys.num_vars));
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) row[cell_var(d, i, j, k)] = 1;
    add_row(std::move(row), Rat(u.i[std::size_t(i - 1)]), "u_i(" + std::to_string(i) + ")");
  }
  for (int j = 1; j <= d.c; ++j) {
    std::vector<Rat> row(std::size_t(sys.num_vars));
    for (int i = 1; i <= d.r; ++i)
      for (int k = 1; k <= d.h; ++k) row[cell_var(d, i, j, k)] = 1;
    add_row(std::move(row), Rat(u.j[std::size_t(j - 1)]), "u_j(" + std::to_string(j) + ")");
  }
  for (int k = 1; k <= d.h; ++k) {
    std::vector<Rat> row(std::size_t(sys.num_vars));
    for (int i = 1; i <= d.r; ++i)
      for (int j = 1; j <= d.c; ++j) row[cell_var(d, i, j, k)] = 1;
    add_row(std::move(row), Rat(u.k[std::size_t(k - 1)]), "u_k(" + std::to_string(k) + ")");
  }
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) {
        std::vector<Rat> row(std::size_t(sys.num_vars));
        const std::size_t v = cell_var(d, i, j, k);
        row[v] = 1;
        row[std::size_t(sys.num_cells) + v] = 1;
        add_row(std::move(row), Rat(bounds.at(i, j, k)),
                "bound(" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ")");
      }
  return sys;
}

LpResult lp_feasible(const RationalSystem &sys) {
  const std::size_t m = sys.rows.size();
  const std::size_t n = std::size_t(sys.num_vars);
  for (std::size_t r = 0; r < m; ++r) {
    if (sys.rows[r].size() != n)
      fail(Status::invalid_input, "system row has the wrong number of coefficients");
    if (sys.rhs[r] < 0)
      fail(Status::invalid_input, "system right-hand sides must be nonnegative");
  }

  // Phase-I simplex: minimize the sum of one artificial variable per row.
  // Columns 0..n-1 are the real variables, n..n+m-1 the artificials; the last
  // column is the right-hand side. Bland's rule (lowest eligible index
  // enters, lowest-index basic variable leaves) rules out cycling.
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(width));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) t[r][c] = sys.rows[r][c];
    t[r][n + r] = 1;
    t[r][width - 1] = sys.rhs[r];
    basis[r] = n + r;
  }
  // Objective row holds the reduced costs of minimizing the artificial sum,
  // already priced for the artificial basis: obj[c] = -sum_r t[r][c] on real
  // columns, 0 on artificials, with obj[rhs] = -sum_r b_r.
  std::vector<Rat> obj(width);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) obj[c] -= t[r][c];
    obj[width - 1] -= t[r][width - 1];
  }

#ifndef NDEBUG
  std::set<std::vector<std::size_t>> seen_bases;  // Bland's rule never revisits one
#endif
  for (;;) {
#ifndef NDEBUG
    assert(seen_bases.insert(basis).second && "simplex revisited a basis");
#endif
    std::size_t enter = width;
    for (std::size_t c = 0; c < n + m; ++c)
      if (obj[c] < 0) {
        enter = c;
        break;
      }
    if (enter == width) break;  // optimal
    std::size_t leave = m;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      if (leave == m) {
        leave = r;
        continue;
      }
      const Rat lhs = t[r][width - 1] * t[leave][enter];
      const Rat rhs = t[leave][width - 1] * t[r][enter];
      if (lhs < rhs || (lhs == rhs && basis[r] < basis[leave])) leave = r;
    }
    // The phase-I objective is bounded below by zero, so a pivot column is
    // always available in some row.
    assert(leave != m && "phase-I objective unbounded");
    if (leave == m) fail(Status::invalid_input, "degenerate system: unbounded phase-I");

    const Rat pivot = t[leave][enter];
    for (std::size_t c = 0; c < width; ++c) t[leave][c] /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rat f = t[r][enter];
      for (std::size_t c = 0; c < width; ++c) t[r][c] -= f * t[leave][c];
    }
    if (obj[enter] != 0) {
      const Rat f = obj[enter];
      for (std::size_t c = 0; c < width; ++c) obj[c] -= f * t[leave][c];
    }
    basis[leave] = enter;
  }

  // Optimal artificial sum is -obj[rhs]; zero means feasible.
  LpResult out;
  if (obj[width - 1] != 0) {
    out.feasible = false;
    return out;
  }
  out.feasible = true;

  std::vector<Rat> x(n);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) x[basis[r]] = t[r][width - 1];
  // Re-verify the witness against every original row before handing it out.
  for (std::size_t r = 0; r < m; ++r) {
    Rat acc = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (sys.rows[r][c] != 0) acc += sys.rows[r][c] * x[c];
    if (acc != sys.rhs[r])
      throw std::logic_error("simplex witness failed re-verification on row " +
                             sys.labels[r]);
  }
  for (std::size_t c = 0; c < n; ++c)
    if (x[c] < 0) throw std::logic_error("simplex witness has a negative variable");

  RealTable3 witness(sys.dims);
  const Dims3 &d = sys.dims;
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) witness.at(i, j, k) = x[cell_var(d, i, j, k)];
  out.witness = std::move(witness);
  return out;
}

}  // namespace tab3
