#pragma once

#include "tab3/types.hpp"

// Structure-preserving translations between constraint systems:
//
//   * embed_bounds: a system "prescribed 1-marginals + entrywise upper
//     bounds" on (r,c,h) tables becomes a plain 2-marginal system on
//     (3, rc, r+c+h) tables, with an entrywise bijection between the
//     solution sets (lift_embedded / project_embedded);
//   * reduce_3dm: three-dimensional matching as the special case of unit
//     1-marginals and 0/1 bounds;
//   * permanent_marginals: 2-marginal systems on (2, n, n) tables whose
//     table count is the permanent of a given 0/1 matrix;
//   * secure_zero_gadget / secure_frechet_gadget: families showing that
//     deciding whether a single entry can take the value 0, or its maximal
//     a-priori value, is as hard as the underlying feasibility questions.

namespace tab3 {

/// Invertible record of one bounds-to-marginals embedding. Everything needed
/// to reconstruct the target marginals and to move solutions in either
/// direction travels in this struct; there is no global registry.
struct EmbeddingSpec {
  Dims3 source;       // (r, c, h)
  Int U;              // uniform slack constant
  OneMarginals ones;  // the prescribed source 1-marginals
  Table3 bounds;      // the prescribed source upper bounds

  Dims3 target() const;
  /// Column index of the source cell column (i,j) on the second target axis,
  /// counting 11, 12, ..., 1c, 21, ... from 1.
  int pair_index(int i, int j) const;
  // The third target axis is partitioned into dom, row and col segments.
  int dom_index(int k) const { return k; }
  int row_index(int i) const { return source.h + i; }
  int col_index(int j) const { return source.h + source.r + j; }
};

struct Embedding {
  TwoMarginals marginals;
  EmbeddingSpec spec;
};

/// Encodes "find x with 1-marginals `u` and x <= `bounds`" as a 2-marginal
/// system on (3, rc, r+c+h) tables. Rejects inconsistent `u` and systems that
/// are trivially infeasible because some layer's bounds cannot reach its
/// 1-marginal.
Embedding embed_bounds(const OneMarginals &u, const Table3 &bounds);

/// The unique table with the constructed 2-marginals whose dom block equals
/// x. Rejects x violating a bound or 1-marginal. Integral input gives
/// integral output; the rational overload extends the same bijection to
/// fractional solutions.
Table3 lift_embedded(const Table3 &x, const EmbeddingSpec &spec);
RealTable3 lift_embedded(const RealTable3 &x, const EmbeddingSpec &spec);

/// Inverse of lift_embedded: reads the source solution off the dom block.
/// Rejects y that does not satisfy the constructed marginals.
Table3 project_embedded(const Table3 &y, const EmbeddingSpec &spec);
RealTable3 project_embedded(const RealTable3 &y, const EmbeddingSpec &spec);

/// Three-dimensional matching on the 0/1 cube `p`: the unit-1-marginal
/// special case of embed_bounds.
Embedding reduce_3dm(const Table3 &p);

struct PermanentReduction {
  bool trivially_infeasible = false;  // some row or column of A is all zero
  TwoMarginals marginals;             // meaningful only when feasible
};

/// 2-marginals on (2, n, n) tables admitting exactly per(A) tables: the first
/// layer along the leading axis ranges over the permutation matrices
/// dominated by A and the second layer takes up the slack. Rows or columns
/// summing to zero make the system infeasible outright, which is flagged
/// instead of encoded.
PermanentReduction permanent_marginals(const Matrix &a);

/// The distinguished witness table of the zero-entry gadget: dims
/// (r+1, c+1, h+1), the grand total at (1,1,1), and the three marginal
/// matrices of `m` laid out as its border blocks.
Table3 canonical_gadget_table(const TwoMarginals &m);

struct ZeroGadget {
  TwoMarginals marginals;  // dims (r+1, c+1, h+1)
  EntryIndex target;       // always (1,1,1)
  Int total;               // grand total of the input marginals
  Dims3 source;
};

/// Gadget instance that is always feasible and attains value 0 at its target
/// entry exactly when the input marginal triple `m` is feasible.
ZeroGadget secure_zero_gadget(const TwoMarginals &m);

struct FrechetGadget {
  Embedding embedding;  // always-feasible embedded instance
  int n;                // side of the input cube
  EntryIndex target;    // (1, (n+1)^2, n+1) in the embedded instance
  Int target_value;     // 2n, which is also the target's upper bound
};

/// Gadget instance whose target entry attains its maximal a-priori value 2n
/// exactly when the 0/1 cube `p` admits a three-dimensional matching.
FrechetGadget secure_frechet_gadget(const Table3 &p);

/// A bounds system together with its 1-marginals, as produced by the
/// reference generators.
struct SourceInstance {
  OneMarginals u;
  Table3 bounds;
};

/// Classic (2,2,2) system with a unique rational solution, all of whose
/// entries are 1/2: real-feasible but integrally infeasible.
SourceInstance vlach_instance();

/// Companion (2,2,2) matching system with exactly one solution.
SourceInstance example21_instance();

}  // namespace tab3
