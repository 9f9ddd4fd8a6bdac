#include "tab3/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tab3 {

void fail(Status status, const std::string &message) { throw Error(status, message); }

namespace {

// Guard against absurd allocations before they become bad_alloc.
constexpr std::int64_t kMaxCells = std::int64_t(1) << 28;

void check_axis(int axis) {
  if (axis < 0 || axis > 2) fail(Status::invalid_input, "axis index out of range");
}

}  // namespace

Dims3::Dims3(int r_, int c_, int h_) : r(r_), c(c_), h(h_) {
  if (r < 1 || c < 1 || h < 1)
    fail(Status::invalid_input, "dims must be positive, got " + to_string(*this));
  constexpr int kMaxExtent = 1 << 20;
  if (r > kMaxExtent || c > kMaxExtent || h > kMaxExtent || cells() > kMaxCells)
    fail(Status::invalid_input, "dims " + to_string(*this) + " too large");
}

int Dims3::extent(int axis) const {
  check_axis(axis);
  return axis == 0 ? r : axis == 1 ? c : h;
}

std::string to_string(const Dims3 &d) {
  std::ostringstream os;
  os << "(" << d.r << ", " << d.c << ", " << d.h << ")";
  return os.str();
}

std::string to_string(const EntryIndex &e) {
  std::ostringstream os;
  os << "(" << e.i << ", " << e.j << ", " << e.k << ")";
  return os.str();
}

// --- Matrix ------------------------------------------------------------------

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) fail(Status::invalid_input, "matrix shape must be positive");
  if (std::int64_t(rows) * cols > kMaxCells)
    fail(Status::invalid_input, "matrix too large");
  a_.resize(std::size_t(rows) * cols);
}

Matrix Matrix::from_rows(const std::vector<std::vector<Int>> &rows) {
  if (rows.empty() || rows[0].empty())
    fail(Status::invalid_input, "matrix literal must be non-empty");
  Matrix m(int(rows.size()), int(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      fail(Status::invalid_input, "matrix literal has ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.at(int(i) + 1, int(j) + 1) = rows[i][j];
  }
  return m;
}

std::size_t Matrix::offset(int i, int j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_)
    fail(Status::invalid_input, "matrix index out of range");
  return std::size_t(i - 1) * cols_ + std::size_t(j - 1);
}

Int Matrix::row_sum(int i) const {
  Int s = 0;
  for (int j = 1; j <= cols_; ++j) s += at(i, j);
  return s;
}

Int Matrix::col_sum(int j) const {
  Int s = 0;
  for (int i = 1; i <= rows_; ++i) s += at(i, j);
  return s;
}

Int Matrix::total() const {
  Int s = 0;
  for (const Int &v : a_) s += v;
  return s;
}

bool Matrix::all_nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int &v) { return v >= 0; });
}

// --- Table3 / RealTable3 -----------------------------------------------------

Table3::Table3(const Dims3 &dims) : dims_(dims) {
  a_.resize(std::size_t(dims.cells()));
}

Table3 Table3::filled(const Dims3 &dims, const Int &value) {
  Table3 t(dims);
  std::fill(t.a_.begin(), t.a_.end(), value);
  return t;
}

std::size_t Table3::offset(int i, int j, int k) const {
  if (i < 1 || i > dims_.r || j < 1 || j > dims_.c || k < 1 || k > dims_.h)
    fail(Status::invalid_input, "table index out of range");
  return (std::size_t(i - 1) * dims_.c + std::size_t(j - 1)) * dims_.h +
         std::size_t(k - 1);
}

Int Table3::total() const {
  Int s = 0;
  for (const Int &v : a_) s += v;
  return s;
}

bool Table3::all_nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int &v) { return v >= 0; });
}

RealTable3::RealTable3(const Dims3 &dims) : dims_(dims) {
  a_.resize(std::size_t(dims.cells()));
}

RealTable3 RealTable3::from(const Table3 &t) {
  RealTable3 x(t.dims());
  const Dims3 &d = t.dims();
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) x.at(i, j, k) = Rat(t.at(i, j, k));
  return x;
}

std::size_t RealTable3::offset(int i, int j, int k) const {
  if (i < 1 || i > dims_.r || j < 1 || j > dims_.c || k < 1 || k > dims_.h)
    fail(Status::invalid_input, "table index out of range");
  return (std::size_t(i - 1) * dims_.c + std::size_t(j - 1)) * dims_.h +
         std::size_t(k - 1);
}

Rat RealTable3::total() const {
  Rat s = 0;
  for (const Rat &v : a_) s += v;
  return s;
}

bool RealTable3::all_nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat &v) { return v >= 0; });
}

TwoMarginals TwoMarginals::zero(const Dims3 &dims) {
  return TwoMarginals{dims, Matrix(dims.r, dims.c), Matrix(dims.r, dims.h),
                      Matrix(dims.c, dims.h)};
}

OneMarginals OneMarginals::zero(const Dims3 &dims) {
  return OneMarginals{dims, std::vector<Int>(dims.r), std::vector<Int>(dims.c),
                      std::vector<Int>(dims.h)};
}

// --- marginal computation ----------------------------------------------------

namespace {

void check_shape(const TwoMarginals &m) {
  if (m.ij.rows() != m.dims.r || m.ij.cols() != m.dims.c ||
      m.ik.rows() != m.dims.r || m.ik.cols() != m.dims.h ||
      m.jk.rows() != m.dims.c || m.jk.cols() != m.dims.h)
    fail(Status::invalid_input,
         "marginal shapes do not match dims " + to_string(m.dims));
  if (!m.ij.all_nonnegative() || !m.ik.all_nonnegative() || !m.jk.all_nonnegative())
    fail(Status::invalid_input, "marginals must be nonnegative");
}

void check_entry(const Dims3 &d, const EntryIndex &e) {
  if (e.i < 1 || e.i > d.r || e.j < 1 || e.j > d.c || e.k < 1 || e.k > d.h)
    fail(Status::invalid_input,
         "entry " + to_string(e) + " out of range for dims " + to_string(d));
}

}  // namespace

TwoMarginals marginals2_of(const Table3 &t) {
  const Dims3 &d = t.dims();
  TwoMarginals m = TwoMarginals::zero(d);
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) {
        const Int &v = t.at(i, j, k);
        m.ij.at(i, j) += v;
        m.ik.at(i, k) += v;
        m.jk.at(j, k) += v;
      }
  return m;
}

OneMarginals marginals1_of(const Table3 &t) {
  const Dims3 &d = t.dims();
  OneMarginals u = OneMarginals::zero(d);
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k) {
        const Int &v = t.at(i, j, k);
        u.i[i - 1] += v;
        u.j[j - 1] += v;
        u.k[k - 1] += v;
      }
  return u;
}

ConsistencyReport check_consistency(const TwoMarginals &m) {
  check_shape(m);
  ConsistencyReport rep;
  auto record = [&rep](const std::string &eq, const Int &lhs, const Int &rhs) {
    if (lhs != rhs) rep.violations.push_back({eq, lhs, rhs});
  };
  // Any two matrices sharing an axis must agree on the 1-marginal along it.
  for (int i = 1; i <= m.dims.r; ++i)
    record("i=" + std::to_string(i), m.ij.row_sum(i), m.ik.row_sum(i));
  for (int j = 1; j <= m.dims.c; ++j)
    record("j=" + std::to_string(j), m.ij.col_sum(j), m.jk.row_sum(j));
  for (int k = 1; k <= m.dims.h; ++k)
    record("k=" + std::to_string(k), m.ik.col_sum(k), m.jk.col_sum(k));
  // Grand totals; redundant when the per-line equations hold, but reported
  // independently so a diagnosis never hides behind an earlier failure.
  record("total ij/ik", m.ij.total(), m.ik.total());
  record("total ij/jk", m.ij.total(), m.jk.total());
  rep.consistent = rep.violations.empty();
  if (rep.consistent) rep.total = m.ij.total();
  return rep;
}

Int frechet_upper(const TwoMarginals &m, const EntryIndex &e) {
  check_shape(m);
  check_entry(m.dims, e);
  return std::min({m.ij.at(e.i, e.j), m.ik.at(e.i, e.k), m.jk.at(e.j, e.k)});
}

bool satisfies(const Table3 &t, const TwoMarginals &m) {
  check_shape(m);
  if (t.dims() != m.dims)
    fail(Status::invalid_input, "table dims " + to_string(t.dims()) +
                                    " do not match marginal dims " + to_string(m.dims));
  if (!t.all_nonnegative()) return false;
  return marginals2_of(t) == m;
}

bool satisfies(const RealTable3 &x, const TwoMarginals &m) {
  check_shape(m);
  if (x.dims() != m.dims)
    fail(Status::invalid_input, "table dims " + to_string(x.dims()) +
                                    " do not match marginal dims " + to_string(m.dims));
  if (!x.all_nonnegative()) return false;
  const Dims3 &d = x.dims();
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j) {
      Rat s = 0;
      for (int k = 1; k <= d.h; ++k) s += x.at(i, j, k);
      if (s != Rat(m.ij.at(i, j))) return false;
    }
  for (int i = 1; i <= d.r; ++i)
    for (int k = 1; k <= d.h; ++k) {
      Rat s = 0;
      for (int j = 1; j <= d.c; ++j) s += x.at(i, j, k);
      if (s != Rat(m.ik.at(i, k))) return false;
    }
  for (int j = 1; j <= d.c; ++j)
    for (int k = 1; k <= d.h; ++k) {
      Rat s = 0;
      for (int i = 1; i <= d.r; ++i) s += x.at(i, j, k);
      if (s != Rat(m.jk.at(j, k))) return false;
    }
  return true;
}

bool dominated(const Table3 &t, const Table3 &bounds) {
  if (t.dims() != bounds.dims())
    fail(Status::invalid_input, "dims mismatch in domination check");
  const Dims3 &d = t.dims();
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k)
        if (t.at(i, j, k) > bounds.at(i, j, k)) return false;
  return true;
}

bool dominated(const RealTable3 &x, const Table3 &bounds) {
  if (x.dims() != bounds.dims())
    fail(Status::invalid_input, "dims mismatch in domination check");
  const Dims3 &d = x.dims();
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j)
      for (int k = 1; k <= d.h; ++k)
        if (x.at(i, j, k) > Rat(bounds.at(i, j, k))) return false;
  return true;
}

// --- axis relabeling -----------------------------------------------------------

AxisMap AxisMap::identity(const Dims3 &dims) {
  AxisMap a;
  for (int m = 0; m < 3; ++m) {
    a.axis[m] = m;
    a.index[m].resize(std::size_t(dims.extent(m)));
    std::iota(a.index[m].begin(), a.index[m].end(), 1);
  }
  return a;
}

Dims3 AxisMap::source_dims() const {
  int ext[3] = {0, 0, 0};
  for (int m = 0; m < 3; ++m) ext[axis[m]] = int(index[m].size());
  return Dims3(ext[0], ext[1], ext[2]);
}

Dims3 AxisMap::target_dims() const {
  return Dims3(int(index[0].size()), int(index[1].size()), int(index[2].size()));
}

void validate(const AxisMap &a) {
  std::array<bool, 3> seen{false, false, false};
  for (int m = 0; m < 3; ++m) {
    if (a.axis[m] < 0 || a.axis[m] > 2 || seen[a.axis[m]])
      fail(Status::invalid_input, "axis map is not an axis permutation");
    seen[a.axis[m]] = true;
    const auto &idx = a.index[m];
    if (idx.empty()) fail(Status::invalid_input, "axis map has an empty index list");
    std::vector<bool> used(idx.size(), false);
    for (int v : idx) {
      if (v < 1 || v > int(idx.size()) || used[v - 1])
        fail(Status::invalid_input, "axis map index list is not a permutation");
      used[v - 1] = true;
    }
  }
}

namespace {

// Source coordinates (1-based i, j, k) of the target cell (a0, a1, a2).
std::array<int, 3> source_coords(const AxisMap &a, int a0, int a1, int a2) {
  std::array<int, 3> src{0, 0, 0};
  const int tgt[3] = {a0, a1, a2};
  for (int m = 0; m < 3; ++m) src[a.axis[m]] = a.index[m][std::size_t(tgt[m] - 1)];
  return src;
}

}  // namespace

Table3 remap(const Table3 &t, const AxisMap &a) {
  validate(a);
  if (a.source_dims() != t.dims())
    fail(Status::invalid_input, "axis map does not fit table dims");
  Table3 out(a.target_dims());
  const Dims3 &od = out.dims();
  for (int i = 1; i <= od.r; ++i)
    for (int j = 1; j <= od.c; ++j)
      for (int k = 1; k <= od.h; ++k) {
        auto s = source_coords(a, i, j, k);
        out.at(i, j, k) = t.at(s[0], s[1], s[2]);
      }
  return out;
}

RealTable3 remap(const RealTable3 &x, const AxisMap &a) {
  validate(a);
  if (a.source_dims() != x.dims())
    fail(Status::invalid_input, "axis map does not fit table dims");
  RealTable3 out(a.target_dims());
  const Dims3 &od = out.dims();
  for (int i = 1; i <= od.r; ++i)
    for (int j = 1; j <= od.c; ++j)
      for (int k = 1; k <= od.h; ++k) {
        auto s = source_coords(a, i, j, k);
        out.at(i, j, k) = x.at(s[0], s[1], s[2]);
      }
  return out;
}

namespace {

// Entry of the source marginal triple for the axis pair (sa, sb) at the given
// 1-based source coordinates; handles either axis order.
const Int &face_entry(const TwoMarginals &m, int sa, int ca, int sb, int cb) {
  if (sa > sb) return face_entry(m, sb, cb, sa, ca);
  if (sa == 0 && sb == 1) return m.ij.at(ca, cb);
  if (sa == 0 && sb == 2) return m.ik.at(ca, cb);
  return m.jk.at(ca, cb);
}

}  // namespace

TwoMarginals remap(const TwoMarginals &m, const AxisMap &a) {
  check_shape(m);
  validate(a);
  if (a.source_dims() != m.dims)
    fail(Status::invalid_input, "axis map does not fit marginal dims");
  TwoMarginals out = TwoMarginals::zero(a.target_dims());
  const Dims3 &od = out.dims;
  for (int i = 1; i <= od.r; ++i)
    for (int j = 1; j <= od.c; ++j)
      out.ij.at(i, j) = face_entry(m, a.axis[0], a.index[0][std::size_t(i - 1)],
                                   a.axis[1], a.index[1][std::size_t(j - 1)]);
  for (int i = 1; i <= od.r; ++i)
    for (int k = 1; k <= od.h; ++k)
      out.ik.at(i, k) = face_entry(m, a.axis[0], a.index[0][std::size_t(i - 1)],
                                   a.axis[2], a.index[2][std::size_t(k - 1)]);
  for (int j = 1; j <= od.c; ++j)
    for (int k = 1; k <= od.h; ++k)
      out.jk.at(j, k) = face_entry(m, a.axis[1], a.index[1][std::size_t(j - 1)],
                                   a.axis[2], a.index[2][std::size_t(k - 1)]);
  return out;
}

OneMarginals remap(const OneMarginals &u, const AxisMap &a) {
  validate(a);
  if (a.source_dims() != u.dims)
    fail(Status::invalid_input, "axis map does not fit marginal dims");
  const std::vector<Int> *src[3] = {&u.i, &u.j, &u.k};
  OneMarginals out = OneMarginals::zero(a.target_dims());
  std::vector<Int> *dst[3] = {&out.i, &out.j, &out.k};
  for (int m = 0; m < 3; ++m)
    for (std::size_t p = 0; p < a.index[m].size(); ++p)
      (*dst[m])[p] = (*src[a.axis[m]])[std::size_t(a.index[m][p] - 1)];
  return out;
}

EntryIndex remap(const EntryIndex &e, const AxisMap &a) {
  validate(a);
  check_entry(a.source_dims(), e);
  const int src[3] = {e.i, e.j, e.k};
  int tgt[3] = {0, 0, 0};
  for (int m = 0; m < 3; ++m) {
    const auto &idx = a.index[m];
    for (std::size_t p = 0; p < idx.size(); ++p)
      if (idx[p] == src[a.axis[m]]) {
        tgt[m] = int(p) + 1;
        break;
      }
  }
  return EntryIndex{tgt[0], tgt[1], tgt[2]};
}

AxisMap compose(const AxisMap &a, const AxisMap &b) {
  validate(a);
  validate(b);
  if (b.target_dims() != a.source_dims())
    fail(Status::invalid_input, "axis maps do not compose");
  AxisMap out;
  for (int m = 0; m < 3; ++m) {
    out.axis[m] = b.axis[a.axis[m]];
    out.index[m].resize(a.index[m].size());
    for (std::size_t p = 0; p < a.index[m].size(); ++p)
      out.index[m][p] = b.index[a.axis[m]][std::size_t(a.index[m][p] - 1)];
  }
  return out;
}

AxisMap inverse(const AxisMap &a) {
  validate(a);
  AxisMap out;
  for (int m = 0; m < 3; ++m) {
    int s = a.axis[m];  // source axis feeding target axis m
    out.axis[s] = m;
    out.index[s].resize(a.index[m].size());
    for (std::size_t p = 0; p < a.index[m].size(); ++p)
      out.index[s][std::size_t(a.index[m][p] - 1)] = int(p) + 1;
  }
  return out;
}

}  // namespace tab3
