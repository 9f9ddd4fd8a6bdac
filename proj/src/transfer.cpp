#include "tab3/transfer.hpp"

#include <algorithm>
#include <map>

namespace tab3 {

namespace {

// State caps beyond this would let single-cell values overflow the signed
// arithmetic used for difference layers.
constexpr std::uint64_t kMaxStateCap = std::uint64_t(1) << 62;

}  // namespace

std::vector<std::uint64_t> StateSpace::decode(std::uint64_t index) const {
  if (index >= size) fail(Status::invalid_input, "state index out of range");
  std::vector<std::uint64_t> cells(radix.size());
  for (std::size_t p = 0; p < radix.size(); ++p) {
    cells[p] = index / stride[p];
    index %= stride[p];
  }
  return cells;
}

std::uint64_t StateSpace::encode(const std::vector<std::uint64_t> &cells) const {
  if (cells.size() != radix.size())
    fail(Status::invalid_input, "state cell count does not match the space");
  std::uint64_t index = 0;
  for (std::size_t p = 0; p < cells.size(); ++p) {
    if (cells[p] >= radix[p]) fail(Status::invalid_input, "state cell exceeds its bound");
    index += cells[p] * stride[p];
  }
  return index;
}

StateSpace build_state_space(const Matrix &vertical, std::uint64_t cap) {
  if (cap < 1 || cap > kMaxStateCap)
    fail(Status::invalid_input, "state cap out of range");
  if (!vertical.all_nonnegative())
    fail(Status::invalid_input, "vertical marginal must be nonnegative");
  StateSpace ss;
  ss.shape = vertical;
  const std::size_t cells = std::size_t(vertical.rows()) * vertical.cols();
  ss.radix.resize(cells);
  ss.stride.resize(cells);
  Int size = 1;
  for (int i = 1; i <= vertical.rows(); ++i)
    for (int j = 1; j <= vertical.cols(); ++j) {
      size *= vertical.at(i, j) + 1;
      if (size > Int(static_cast<unsigned long>(cap)))
        fail(Status::cap_exceeded,
             "state space for a " + std::to_string(vertical.rows()) + "x" +
                 std::to_string(vertical.cols()) + " vertical marginal exceeds the cap of " +
                 std::to_string(cap) + " states");
    }
  ss.size = size.get_ui();
  for (int i = 1; i <= vertical.rows(); ++i)
    for (int j = 1; j <= vertical.cols(); ++j) {
      const std::size_t p = std::size_t(i - 1) * vertical.cols() + (j - 1);
      ss.radix[p] = vertical.at(i, j).get_ui() + 1;
    }
  std::uint64_t stride = 1;
  for (std::size_t p = cells; p-- > 0;) {
    ss.stride[p] = stride;
    stride *= ss.radix[p];
  }
  return ss;
}

LayerMatrix::LayerMatrix(const StateSpace &space, const std::vector<Int> &row_sums,
                         const std::vector<Int> &col_sums,
                         std::optional<EntryConstraint> corner)
    : space_(&space) {
  const int r = space.shape.rows();
  const int c = space.shape.cols();
  if (int(row_sums.size()) != r || int(col_sums.size()) != c)
    fail(Status::invalid_input, "layer sums do not match the state-space shape");
  // A prescribed line sum beyond the whole vertical budget (or beyond machine
  // range) admits no difference layer at all; record that instead of failing.
  const Int budget = space.shape.total();
  row_sums_.resize(row_sums.size());
  col_sums_.resize(col_sums.size());
  for (std::size_t p = 0; p < row_sums.size(); ++p) {
    if (row_sums[p] < 0) fail(Status::invalid_input, "layer row sum must be nonnegative");
    if (row_sums[p] > budget) {
      impossible_ = true;
      return;
    }
    row_sums_[p] = row_sums[p].get_si();
  }
  for (std::size_t p = 0; p < col_sums.size(); ++p) {
    if (col_sums[p] < 0) fail(Status::invalid_input, "layer column sum must be nonnegative");
    if (col_sums[p] > budget) {
      impossible_ = true;
      return;
    }
    col_sums_[p] = col_sums[p].get_si();
  }
  if (corner) {
    has_corner_ = true;
    if (corner->hi < corner->lo || corner->lo > budget) {
      impossible_ = true;
      return;
    }
    // Both bounds now fit in a long: the state space exists, so the whole
    // vertical budget does too.
    corner_lo_ = std::max<Int>(corner->lo, 0).get_si();
    corner_hi_ = std::min<Int>(corner->hi, budget).get_si();
  }
}

void LayerMatrix::for_each_successor(std::uint64_t s,
                                     const std::function<void(std::uint64_t)> &fn) const {
  if (impossible_) return;
  const StateSpace &ss = *space_;
  const int r = ss.shape.rows();
  const int c = ss.shape.cols();
  const std::vector<std::uint64_t> base = ss.decode(s);
  // Free capacity of each cell within the box.
  std::vector<long> cap(base.size());
  for (std::size_t p = 0; p < base.size(); ++p)
    cap[p] = long(ss.radix[p] - 1 - base[p]);
  std::vector<long> col_rem = col_sums_;

  // Row-major fill of the difference layer with the usual reach pruning;
  // values are folded straight into the target state index.
  std::function<void(int, int, long, std::uint64_t)> rec =
      [&](int i, int j, long row_rem, std::uint64_t t) {
        if (i == r) {
          fn(t);
          return;
        }
        const std::size_t p = std::size_t(i) * c + j;
        long hi = std::min({row_rem, col_rem[j], cap[p]});
        long row_cap = 0;
        for (int j2 = j + 1; j2 < c; ++j2)
          row_cap += std::min(col_rem[j2], cap[std::size_t(i) * c + j2]);
        long col_cap = 0;
        for (int i2 = i + 1; i2 < r; ++i2)
          col_cap += std::min(row_sums_[i2], cap[std::size_t(i2) * c + j]);
        long lo = std::max({long(0), row_rem - row_cap, col_rem[j] - col_cap});
        if (has_corner_ && i == 0 && j == 0) {
          lo = std::max(lo, corner_lo_);
          hi = std::min(hi, corner_hi_);
        }
        const int nj = (j + 1 < c) ? j + 1 : 0;
        const int ni = (nj == 0) ? i + 1 : i;
        for (long v = lo; v <= hi; ++v) {
          col_rem[j] -= v;
          rec(ni, nj, (nj == 0) ? (ni < r ? row_sums_[ni] : 0) : row_rem - v,
              t + std::uint64_t(v) * ss.stride[p]);
          col_rem[j] += v;
        }
      };
  rec(0, 0, r > 0 ? row_sums_[0] : 0, s);
}

std::vector<std::uint64_t> LayerMatrix::successors(std::uint64_t s) const {
  std::vector<std::uint64_t> out;
  for_each_successor(s, [&](std::uint64_t t) { out.push_back(t); });
  return out;
}

LayerMatrix layer_matrix(const StateSpace &space, const std::vector<Int> &row_sums,
                         const std::vector<Int> &col_sums) {
  return LayerMatrix(space, row_sums, col_sums);
}

namespace {

Int face_product(const Matrix &m) {
  Int p = 1;
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j) p *= m.at(i, j) + 1;
  return p;
}

AxisMap axes_only(const Dims3 &dims, std::array<int, 3> axis) {
  AxisMap a;
  a.axis = axis;
  for (int m = 0; m < 3; ++m) {
    a.index[m].resize(std::size_t(dims.extent(axis[m])));
    for (std::size_t p = 0; p < a.index[m].size(); ++p) a.index[m][p] = int(p) + 1;
  }
  return a;
}

// Count tables for marginals already remapped to the desired orientation,
// with an optional constraint on the (1,1) cell of the first layer.
Int count_oriented(const TwoMarginals &mm, std::uint64_t cap,
                   const std::optional<EntryConstraint> &corner) {
  const StateSpace ss = build_state_space(mm.ij, cap);
  const int h = mm.dims.h;
  std::map<std::uint64_t, Int> reachable;
  reachable[0] = 1;
  for (int k = 1; k <= h && !reachable.empty(); ++k) {
    std::vector<Int> row_sums(std::size_t(mm.dims.r));
    std::vector<Int> col_sums(std::size_t(mm.dims.c));
    for (int i = 1; i <= mm.dims.r; ++i) row_sums[std::size_t(i - 1)] = mm.ik.at(i, k);
    for (int j = 1; j <= mm.dims.c; ++j) col_sums[std::size_t(j - 1)] = mm.jk.at(j, k);
    LayerMatrix step(ss, row_sums, col_sums,
                     k == 1 ? corner : std::optional<EntryConstraint>{});
    std::map<std::uint64_t, Int> next;
    for (const auto &[s, count] : reachable)
      step.for_each_successor(s, [&](std::uint64_t t) { next[t] += count; });
    reachable = std::move(next);
  }
  const auto it = reachable.find(ss.full_index());
  return it == reachable.end() ? Int(0) : it->second;
}

}  // namespace

AxisMap select_orientation(const TwoMarginals &m) {
  const Int pij = face_product(m.ij);
  const Int pik = face_product(m.ik);
  const Int pjk = face_product(m.jk);
  if (pij <= pik && pij <= pjk) return axes_only(m.dims, {0, 1, 2});
  if (pik <= pjk) return axes_only(m.dims, {0, 2, 1});
  return axes_only(m.dims, {1, 2, 0});
}

Int count_tables(const TwoMarginals &m, std::uint64_t cap) {
  if (!check_consistency(m).consistent) return 0;
  const AxisMap a = select_orientation(m);
  return count_oriented(remap(m, a), cap, std::nullopt);
}

bool exists_fixed_rc(const TwoMarginals &m, std::uint64_t cap) {
  // count_oriented already stops as soon as no state stays reachable.
  return count_tables(m, cap) > 0;
}

std::vector<Int> entry_value_set(const TwoMarginals &m, const EntryIndex &e,
                                 std::uint64_t cap) {
  const Int bound = frechet_upper(m, e);  // validates shape and entry
  if (!check_consistency(m).consistent) return {};
  // Orient for the smallest state space, then relabel indices so the probed
  // entry sits at (1,1,1): its value is then exactly the (1,1) cell of the
  // first advance layer.
  AxisMap a = select_orientation(m);
  const int coords[3] = {e.i, e.j, e.k};
  for (int axis = 0; axis < 3; ++axis) {
    const int coord = coords[a.axis[axis]];
    std::swap(a.index[axis][0], a.index[axis][std::size_t(coord - 1)]);
  }
  const TwoMarginals mm = remap(m, a);
  build_state_space(mm.ij, cap);  // fail fast before the per-value sweep

  std::vector<Int> values;
  for (Int v = 0; v <= bound; ++v) {
    if (count_oriented(mm, cap, EntryConstraint{v, v}) > 0) values.push_back(v);
  }
  return values;
}

}  // namespace tab3
