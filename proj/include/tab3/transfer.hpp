#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tab3/types.hpp"

// Exact table counting by a layer-transfer recurrence.
//
// Fix the vertical marginal V = ij. A partially built table, filled layer by
// layer along the third axis, is summarized by the running 2-table of partial
// pillar sums; that summary lives in the grid box of 2-tables s with
// 0 <= s <= V entrywise. Tables with marginals (ij, ik, jk) correspond
// exactly to paths from the zero 2-table to V itself that advance, at step k,
// by a nonnegative layer with row sums ik(.,k) and column sums jk(.,k). The
// engine pushes a count vector along these steps; it never forms the
// exponentially large step matrices, and it only ever touches reachable
// summaries.

namespace tab3 {

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

/// The indexed box of 2-tables dominated by a vertical marginal. States are
/// numbered by mixed-radix encoding: cells in row-major order (row index
/// outermost), most significant first, cell (i,j) running over
/// 0..shape(i,j). Index 0 is the zero 2-table; index size-1 is the full
/// table, i.e. the vertical marginal itself.
struct StateSpace {
  Matrix shape;                        // the vertical marginal
  std::vector<std::uint64_t> radix;    // shape+1, row-major
  std::vector<std::uint64_t> stride;   // mixed-radix place values
  std::uint64_t size = 1;

  std::vector<std::uint64_t> decode(std::uint64_t index) const;
  std::uint64_t encode(const std::vector<std::uint64_t> &cells) const;
  std::uint64_t full_index() const { return size - 1; }
};

/// Builds the state space for a vertical marginal, refusing to proceed when
/// its size exceeds `cap`.
StateSpace build_state_space(const Matrix &vertical, std::uint64_t cap = kDefaultStateCap);

/// Closed interval constraint on the (1,1) cell of a single advance layer;
/// used to probe what values an entry can take.
struct EntryConstraint {
  Int lo;
  Int hi;
};

/// One transfer step: the boolean relation connecting state s to state t
/// whenever t - s is a nonnegative layer with the prescribed row and column
/// sums (and, optionally, a constrained (1,1) cell). Rows are generated on
/// demand by enumerating the admissible difference layers; nothing quadratic
/// in the state count is ever stored.
class LayerMatrix {
 public:
  LayerMatrix(const StateSpace &space, const std::vector<Int> &row_sums,
              const std::vector<Int> &col_sums,
              std::optional<EntryConstraint> corner = std::nullopt);

  /// Calls fn for every successor of s, in increasing state order.
  void for_each_successor(std::uint64_t s,
                          const std::function<void(std::uint64_t)> &fn) const;
  std::vector<std::uint64_t> successors(std::uint64_t s) const;

  const StateSpace &space() const { return *space_; }

 private:
  const StateSpace *space_;
  std::vector<long> row_sums_;
  std::vector<long> col_sums_;
  long corner_lo_ = 0;
  long corner_hi_ = -1;
  bool has_corner_ = false;
  bool impossible_ = false;
};

/// Convenience factory mirroring build_state_space.
LayerMatrix layer_matrix(const StateSpace &space, const std::vector<Int> &row_sums,
                         const std::vector<Int> &col_sums);

/// Axis permutation that minimizes the state-space size, i.e. picks as
/// vertical the marginal with the smallest entry+1 product. Ties prefer ij,
/// then ik, then jk. Counting results are invariant under this choice.
AxisMap select_orientation(const TwoMarginals &m);

/// Exact number of nonnegative integer tables with 2-marginals `m`.
/// Inconsistent marginals yield 0. Throws cap_exceeded when the best
/// orientation still needs more than `cap` states.
Int count_tables(const TwoMarginals &m, std::uint64_t cap = kDefaultStateCap);

/// True iff some table has 2-marginals `m`; same machinery as count_tables
/// with early termination once no state remains reachable.
bool exists_fixed_rc(const TwoMarginals &m, std::uint64_t cap = kDefaultStateCap);

/// All values entry `e` takes over tables with 2-marginals `m`, sorted
/// ascending: for each candidate v in 0..frechet_upper(m, e) the count is
/// rerun with the corresponding advance layer constrained to place exactly v
/// on that entry.
std::vector<Int> entry_value_set(const TwoMarginals &m, const EntryIndex &e,
                                 std::uint64_t cap = kDefaultStateCap);

}  // namespace tab3
