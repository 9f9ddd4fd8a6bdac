#pragma once

#include <cstdint>
#include <vector>

#include "tab3/types.hpp"

// Brute-force reference engines. Everything here favors transparency over
// speed: plain depth-first enumeration with budget pruning, written to be
// checkable by eye, so the clever engines elsewhere have something honest to
// be diffed against. All of it is exact.

namespace tab3 {

struct EnumLimits {
  std::uint64_t max_tables = 10'000'000;  // enumerated tables before giving up
  std::uint64_t max_nodes = 10'000'000;   // search nodes before giving up
};

/// Number of nonnegative integer tables with 2-marginals `m`, by exhaustive
/// enumeration. Throws cap_exceeded when a limit is hit.
Int brute_count(const TwoMarginals &m, const EnumLimits &lim = {});

/// True iff at least one table has 2-marginals `m`. Stops at the first witness.
bool brute_exists(const TwoMarginals &m, const EnumLimits &lim = {});

/// Every table with 2-marginals `m`, in lexicographic entry order.
std::vector<Table3> brute_tables(const TwoMarginals &m, const EnumLimits &lim = {});

/// All values the entry `e` takes over tables with 2-marginals `m`, sorted
/// ascending. The result need not be an interval.
std::vector<Int> brute_entry_set(const TwoMarginals &m, const EntryIndex &e,
                                 const EnumLimits &lim = {});

/// True iff some table with 2-marginals `m` has value `value` at entry `e`.
/// Stops at the first witness.
bool brute_entry_attains(const TwoMarginals &m, const EntryIndex &e, const Int &value,
                         const EnumLimits &lim = {});

/// Number of tables with 1-marginals `u` dominated entrywise by `bounds`.
Int brute_count_bounded(const OneMarginals &u, const Table3 &bounds,
                        const EnumLimits &lim = {});

/// Every table with 1-marginals `u` dominated by `bounds`.
std::vector<Table3> brute_tables_bounded(const OneMarginals &u, const Table3 &bounds,
                                         const EnumLimits &lim = {});

/// Permanent of a square 0/1 matrix: permutation enumeration for small n,
/// inclusion-exclusion beyond.
Int ryser_permanent(const Matrix &a);

/// Permanent by direct permutation enumeration; cross-check twin of
/// ryser_permanent, only sensible for small n.
Int permanent_by_permutations(const Matrix &a);

/// Three-dimensional matching by backtracking: true iff some binary x with all
/// 1-marginals equal to 1 is dominated by the binary cube `p`.
bool brute_3dm(const Table3 &p);

/// True iff the exact rational array `x` is nonnegative with 2-marginals `m`.
bool brute_real_halfint_check(const TwoMarginals &m, const RealTable3 &x);

}  // namespace tab3
