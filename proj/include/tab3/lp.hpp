#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tab3/types.hpp"

// Real (fractional) relaxation of the table problems, handled entirely in
// exact rational arithmetic: no floating point is involved anywhere in a
// feasibility verdict or witness.

namespace tab3 {

/// A system of linear equations Ax = b over nonnegative variables. The first
/// `num_cells` variables are the table entries in (i, j, k) iteration order;
/// any further variables are slacks introduced for upper-bound rows.
struct RationalSystem {
  Dims3 dims;
  int num_cells = 0;
  int num_vars = 0;
  std::vector<std::vector<Rat>> rows;  // each of length num_vars
  std::vector<Rat> rhs;                // same length as rows, all nonnegative
  std::vector<std::string> labels;     // one diagnostic label per row
};

/// Equation system for "x has 2-marginals m".
RationalSystem transportation_system(const TwoMarginals &m);

/// Equation system for "x has 1-marginals u and x <= bounds", with one slack
/// variable per cell.
RationalSystem transportation_system(const OneMarginals &u, const Table3 &bounds);

struct LpResult {
  bool feasible = false;
  // Entry values of a nonnegative rational solution; verified against every
  // row of the system before being returned.
  std::optional<RealTable3> witness;
};

/// Decides whether the system has a nonnegative rational solution, by a
/// phase-I simplex with Bland's rule over exact rationals.
LpResult lp_feasible(const RationalSystem &sys);

}  // namespace tab3
