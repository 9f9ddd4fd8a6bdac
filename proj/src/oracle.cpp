#include "tab3/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

namespace tab3 {

namespace {

// Enumeration works over machine integers; anything bigger than this is far
// outside brute-force reach anyway, so reject it up front instead of risking
// silent overflow in the budget arithmetic.
constexpr long kMaxEnumEntry = long(1) << 40;

long to_long(const Int &v, const char *what) {
  if (v < 0) fail(Status::invalid_input, std::string(what) + " must be nonnegative");
  if (!v.fits_slong_p() || v.get_si() > kMaxEnumEntry)
    fail(Status::cap_exceeded, std::string(what) + " too large for brute-force enumeration");
  return v.get_si();
}

// Depth-first fill of a 3-table with prescribed 2-marginals. Entries are
// visited layer by layer (k outermost), row-major inside a layer. At each cell
// the admissible value range is cut down by three "can still be reached"
// bounds, one per line through the cell; these collapse to forced equalities
// at the last cell of a row, column or pillar, so completed lines never need a
// separate audit.
class MarginalDfs {
 public:
  MarginalDfs(const TwoMarginals &m, const EnumLimits &lim) : lim_(lim) {
    r_ = m.dims.r;
    c_ = m.dims.c;
    h_ = m.dims.h;
    vij_.resize(std::size_t(r_) * c_);
    vik_.resize(std::size_t(r_) * h_);
    vjk_.resize(std::size_t(c_) * h_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j)
        vij_[std::size_t(i) * c_ + j] = to_long(m.ij.at(i + 1, j + 1), "marginal entry");
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < h_; ++k)
        vik_[std::size_t(i) * h_ + k] = to_long(m.ik.at(i + 1, k + 1), "marginal entry");
    for (int j = 0; j < c_; ++j)
      for (int k = 0; k < h_; ++k)
        vjk_[std::size_t(j) * h_ + k] = to_long(m.jk.at(j + 1, k + 1), "marginal entry");
    // suf_[(i,j,k)] = sum over later layers k' > k of min(vik(i,k'), vjk(j,k')):
    // the most the pillar (i,j) can still absorb after layer k is done.
    suf_.assign(std::size_t(r_) * c_ * h_, 0);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) {
        long acc = 0;
        for (int k = h_ - 1; k >= 0; --k) {
          suf(i, j, k) = acc;
          acc += std::min(vik_[std::size_t(i) * h_ + k], vjk_[std::size_t(j) * h_ + k]);
        }
      }
    cells_.assign(std::size_t(r_) * c_ * h_, 0);
    pil_ = vij_;
    row_rem_.assign(std::size_t(h_) * r_, 0);
    col_rem_.assign(std::size_t(h_) * c_, 0);
  }

  void pin(const EntryIndex &e, long value) {
    pin_i_ = e.i - 1;
    pin_j_ = e.j - 1;
    pin_k_ = e.k - 1;
    pin_value_ = value;
  }

  // sink receives the filled entries (layout (i*c + j)*h + k) and returns
  // false to stop the search.
  void run(const std::function<bool(const std::vector<long> &)> &sink) {
    sink_ = &sink;
    stop_ = false;
    rec(0, 0, 0);
  }

  std::uint64_t tables_found() const { return found_; }

 private:
  long &suf(int i, int j, int k) { return suf_[(std::size_t(i) * c_ + j) * h_ + k]; }
  long &cell(int i, int j, int k) { return cells_[(std::size_t(i) * c_ + j) * h_ + k]; }

  void rec(int k, int i, int j) {
    if (k == h_) {
      if (++found_ > lim_.max_tables)
        fail(Status::cap_exceeded, "table limit exceeded during enumeration");
      if (!(*sink_)(cells_)) stop_ = true;
      return;
    }
    if (i == 0 && j == 0) {
      for (int ii = 0; ii < r_; ++ii)
        row_rem_[std::size_t(k) * r_ + ii] = vik_[std::size_t(ii) * h_ + k];
      for (int jj = 0; jj < c_; ++jj)
        col_rem_[std::size_t(k) * c_ + jj] = vjk_[std::size_t(jj) * h_ + k];
    }
    long &row = row_rem_[std::size_t(k) * r_ + i];
    long &col = col_rem_[std::size_t(k) * c_ + j];
    long &pil = pil_[std::size_t(i) * c_ + j];

    long hi = std::min({row, col, pil});
    long row_cap = 0;  // what the rest of this slice row can still take
    for (int j2 = j + 1; j2 < c_; ++j2)
      row_cap += std::min(col_rem_[std::size_t(k) * c_ + j2], pil_[std::size_t(i) * c_ + j2]);
    long col_cap = 0;  // what the rest of this slice column can still take
    for (int i2 = i + 1; i2 < r_; ++i2)
      col_cap += std::min(vik_[std::size_t(i2) * h_ + k], pil_[std::size_t(i2) * c_ + j]);
    long lo = std::max({long(0), row - row_cap, col - col_cap, pil - suf(i, j, k)});
    if (i == pin_i_ && j == pin_j_ && k == pin_k_) {
      lo = std::max(lo, pin_value_);
      hi = std::min(hi, pin_value_);
    }

    const int nj = (j + 1 < c_) ? j + 1 : 0;
    const int ni = (nj == 0) ? ((i + 1 < r_) ? i + 1 : 0) : i;
    const int nk = (nj == 0 && ni == 0) ? k + 1 : k;

    for (long v = lo; v <= hi; ++v) {
      if (++nodes_ > lim_.max_nodes)
        fail(Status::cap_exceeded, "node limit exceeded during enumeration");
      row -= v;
      col -= v;
      pil -= v;
      cell(i, j, k) = v;
      rec(nk, ni, nj);
      row += v;
      col += v;
      pil += v;
      if (stop_) return;
    }
  }

  int r_ = 0, c_ = 0, h_ = 0;
  std::vector<long> vij_, vik_, vjk_, suf_, cells_, pil_, row_rem_, col_rem_;
  int pin_i_ = -1, pin_j_ = -1, pin_k_ = -1;
  long pin_value_ = 0;
  EnumLimits lim_;
  std::uint64_t nodes_ = 0, found_ = 0;
  bool stop_ = false;
  const std::function<bool(const std::vector<long> &)> *sink_ = nullptr;
};

Table3 cells_to_table(const Dims3 &d, const std::vector<long> &cells) {
  Table3 t(d);
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k)
        t.at(i, j, k) = cells[(std::size_t(i - 1) * d.c + (j - 1)) * d.h + (k - 1)];
  return t;
}

void validate_marginal_shape(const TwoMarginals &m) {
  if (m.ij.rows() != m.dims.r || m.ij.cols() != m.dims.c ||
      m.ik.rows() != m.dims.r || m.ik.cols() != m.dims.h ||
      m.jk.rows() != m.dims.c || m.jk.cols() != m.dims.h)
    fail(Status::invalid_input, "marginal shapes do not match dims " + to_string(m.dims));
}

}  // namespace

Int brute_count(const TwoMarginals &m, const EnumLimits &lim) {
  validate_marginal_shape(m);
  MarginalDfs dfs(m, lim);
  dfs.run([](const std::vector<long> &) { return true; });
  return Int(static_cast<unsigned long>(dfs.tables_found()));
}

bool brute_exists(const TwoMarginals &m, const EnumLimits &lim) {
  validate_marginal_shape(m);
  MarginalDfs dfs(m, lim);
  dfs.run([](const std::vector<long> &) { return false; });
  return dfs.tables_found() > 0;
}

std::vector<Table3> brute_tables(const TwoMarginals &m, const EnumLimits &lim) {
  validate_marginal_shape(m);
  MarginalDfs dfs(m, lim);
  std::vector<Table3> out;
  dfs.run([&](const std::vector<long> &cells) {
    out.push_back(cells_to_table(m.dims, cells));
    return true;
  });
  return out;
}

std::vector<Int> brute_entry_set(const TwoMarginals &m, const EntryIndex &e,
                                 const EnumLimits &lim) {
  // frechet_upper validates shape and entry range for us.
  frechet_upper(m, e);
  MarginalDfs dfs(m, lim);
  std::set<long> values;
  const std::size_t pos =
      (std::size_t(e.i - 1) * m.dims.c + (e.j - 1)) * m.dims.h + (e.k - 1);
  dfs.run([&](const std::vector<long> &cells) {
    values.insert(cells[pos]);
    return true;
  });
  return std::vector<Int>(values.begin(), values.end());
}

bool brute_entry_attains(const TwoMarginals &m, const EntryIndex &e, const Int &value,
                         const EnumLimits &lim) {
  Int bound = frechet_upper(m, e);
  if (value < 0 || value > bound) return false;
  MarginalDfs dfs(m, lim);
  dfs.pin(e, to_long(value, "entry value"));
  dfs.run([](const std::vector<long> &) { return false; });
  return dfs.tables_found() > 0;
}

namespace {

// Depth-first fill of a 3-table with prescribed 1-marginals and entrywise
// upper bounds. Same visiting order and pruning idea as MarginalDfs, with one
// budget per axis slab; the lookahead capacities come from static suffix sums
// of the bounds.
class BoundedDfs {
 public:
  BoundedDfs(const OneMarginals &u, const Table3 &bounds, const EnumLimits &lim)
      : lim_(lim) {
    if (u.dims != bounds.dims())
      fail(Status::invalid_input, "1-marginal dims do not match bounds dims");
    if (int(u.i.size()) != u.dims.r || int(u.j.size()) != u.dims.c ||
        int(u.k.size()) != u.dims.h)
      fail(Status::invalid_input, "1-marginal vector lengths do not match dims");
    r_ = u.dims.r;
    c_ = u.dims.c;
    h_ = u.dims.h;
    n_ = std::size_t(r_) * c_ * h_;
    ui_.resize(std::size_t(r_));
    uj_.resize(std::size_t(c_));
    uk_.resize(std::size_t(h_));
    for (int i = 0; i < r_; ++i) ui_[i] = to_long(u.i[i], "1-marginal entry");
    for (int j = 0; j < c_; ++j) uj_[j] = to_long(u.j[j], "1-marginal entry");
    for (int k = 0; k < h_; ++k) uk_[k] = to_long(u.k[k], "1-marginal entry");
    p_.resize(n_);
    for (int k = 0; k < h_; ++k)
      for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
          p_[pos(k, i, j)] = to_long(bounds.at(i + 1, j + 1, k + 1), "bound entry");
    suf_i_.assign(std::size_t(r_) * (n_ + 1), 0);
    suf_j_.assign(std::size_t(c_) * (n_ + 1), 0);
    suf_k_.assign(std::size_t(h_) * (n_ + 1), 0);
    for (std::size_t t = n_; t-- > 0;) {
      for (int i = 0; i < r_; ++i) suf_i_[i * (n_ + 1) + t] = suf_i_[i * (n_ + 1) + t + 1];
      for (int j = 0; j < c_; ++j) suf_j_[j * (n_ + 1) + t] = suf_j_[j * (n_ + 1) + t + 1];
      for (int k = 0; k < h_; ++k) suf_k_[k * (n_ + 1) + t] = suf_k_[k * (n_ + 1) + t + 1];
      const int k = int(t / (std::size_t(r_) * c_));
      const int i = int((t / c_) % std::size_t(r_));
      const int j = int(t % std::size_t(c_));
      suf_i_[i * (n_ + 1) + t] += p_[t];
      suf_j_[j * (n_ + 1) + t] += p_[t];
      suf_k_[k * (n_ + 1) + t] += p_[t];
    }
    cells_.assign(n_, 0);
  }

  void run(const std::function<bool(const std::vector<long> &)> &sink) {
    sink_ = &sink;
    stop_ = false;
    rec(0);
  }

  std::uint64_t tables_found() const { return found_; }

  std::size_t pos(int k, int i, int j) const {
    return (std::size_t(k) * r_ + i) * c_ + j;
  }

 private:
  void rec(std::size_t t) {
    if (t == n_) {
      if (++found_ > lim_.max_tables)
        fail(Status::cap_exceeded, "table limit exceeded during enumeration");
      if (!(*sink_)(cells_)) stop_ = true;
      return;
    }
    const int k = int(t / (std::size_t(r_) * c_));
    const int i = int((t / c_) % std::size_t(r_));
    const int j = int(t % std::size_t(c_));
    long hi = std::min({p_[t], ui_[i], uj_[j], uk_[k]});
    long lo = std::max({long(0), ui_[i] - suf_i_[i * (n_ + 1) + t + 1],
                        uj_[j] - suf_j_[j * (n_ + 1) + t + 1],
                        uk_[k] - suf_k_[k * (n_ + 1) + t + 1]});
    for (long v = lo; v <= hi; ++v) {
      if (++nodes_ > lim_.max_nodes)
        fail(Status::cap_exceeded, "node limit exceeded during enumeration");
      ui_[i] -= v;
      uj_[j] -= v;
      uk_[k] -= v;
      cells_[t] = v;
      rec(t + 1);
      ui_[i] += v;
      uj_[j] += v;
      uk_[k] += v;
      if (stop_) return;
    }
  }

  int r_ = 0, c_ = 0, h_ = 0;
  std::size_t n_ = 0;
  std::vector<long> ui_, uj_, uk_, p_, suf_i_, suf_j_, suf_k_, cells_;
  EnumLimits lim_;
  std::uint64_t nodes_ = 0, found_ = 0;
  bool stop_ = false;
  const std::function<bool(const std::vector<long> &)> *sink_ = nullptr;
};

Table3 bounded_cells_to_table(const Dims3 &d, const std::vector<long> &cells) {
  Table3 t(d);
  for (int k = 0; k < d.h; ++k)
    for (int i = 0; i < d.r; ++i)
      for (int j = 0; j < d.c; ++j)
        t.at(i + 1, j + 1, k + 1) = cells[(std::size_t(k) * d.r + i) * d.c + j];
  return t;
}

}  // namespace

Int brute_count_bounded(const OneMarginals &u, const Table3 &bounds,
                        const EnumLimits &lim) {
  BoundedDfs dfs(u, bounds, lim);
  dfs.run([](const std::vector<long> &) { return true; });
  return Int(static_cast<unsigned long>(dfs.tables_found()));
}

std::vector<Table3> brute_tables_bounded(const OneMarginals &u, const Table3 &bounds,
                                         const EnumLimits &lim) {
  BoundedDfs dfs(u, bounds, lim);
  std::vector<Table3> out;
  dfs.run([&](const std::vector<long> &cells) {
    out.push_back(bounded_cells_to_table(u.dims, cells));
    return true;
  });
  return out;
}

namespace {

void validate_binary_square(const Matrix &a) {
  if (a.rows() != a.cols())
    fail(Status::invalid_input, "permanent requires a square matrix");
  for (int i = 1; i <= a.rows(); ++i)
    for (int j = 1; j <= a.cols(); ++j)
      if (a.at(i, j) != 0 && a.at(i, j) != 1)
        fail(Status::invalid_input, "permanent requires 0/1 entries");
}

}  // namespace

Int permanent_by_permutations(const Matrix &a) {
  validate_binary_square(a);
  const int n = a.rows();
  if (n > 10) fail(Status::cap_exceeded, "matrix too large for permutation enumeration");
  // Count permutations whose cells are all ones, growing row by row.
  std::uint64_t count = 0;
  std::uint32_t used = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i > n) {
      ++count;
      return;
    }
    for (int j = 1; j <= n; ++j)
      if (!(used & (std::uint32_t(1) << j)) && a.at(i, j) == 1) {
        used |= std::uint32_t(1) << j;
        rec(i + 1);
        used &= ~(std::uint32_t(1) << j);
      }
  };
  rec(1);
  return Int(static_cast<unsigned long>(count));
}

Int ryser_permanent(const Matrix &a) {
  validate_binary_square(a);
  const int n = a.rows();
  if (n <= 8) return permanent_by_permutations(a);
  if (n > 24) fail(Status::cap_exceeded, "matrix too large for permanent computation");
  // Inclusion-exclusion over column subsets S:
  //   per(A) = sum_S (-1)^(n-|S|) prod_i (sum_{j in S} a_ij).
  Int per = 0;
  for (std::uint32_t s = 1; s < (std::uint32_t(1) << n); ++s) {
    Int prod = 1;
    for (int i = 1; i <= n && prod != 0; ++i) {
      long row = 0;
      for (int j = 1; j <= n; ++j)
        if (s & (std::uint32_t(1) << (j - 1))) row += a.at(i, j).get_si();
      prod *= row;
    }
    const int popcount = __builtin_popcount(s);
    if ((n - popcount) % 2 == 0)
      per += prod;
    else
      per -= prod;
  }
  return per;
}

bool brute_3dm(const Table3 &p) {
  const Dims3 &d = p.dims();
  if (d.r != d.c || d.c != d.h)
    fail(Status::invalid_input, "matching requires a cubical bound table");
  const int n = d.r;
  if (n > 62) fail(Status::cap_exceeded, "matching instance too large");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        if (p.at(i, j, k) != 0 && p.at(i, j, k) != 1)
          fail(Status::invalid_input, "matching requires 0/1 bounds");
  // Pick one allowed (j, k) per i, all j and all k distinct.
  std::uint64_t used_j = 0, used_k = 0;
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i > n) return true;
    for (int j = 1; j <= n; ++j) {
      if (used_j & (std::uint64_t(1) << j)) continue;
      for (int k = 1; k <= n; ++k) {
        if (used_k & (std::uint64_t(1) << k)) continue;
        if (p.at(i, j, k) != 1) continue;
        used_j |= std::uint64_t(1) << j;
        used_k |= std::uint64_t(1) << k;
        if (rec(i + 1)) return true;
        used_j &= ~(std::uint64_t(1) << j);
        used_k &= ~(std::uint64_t(1) << k);
      }
    }
    return false;
  };
  return rec(1);
}

bool brute_real_halfint_check(const TwoMarginals &m, const RealTable3 &x) {
  return satisfies(x, m);
}

}  // namespace tab3
