#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core value types for three-way tables constrained by their 2-marginals.
//
// Conventions used throughout the library:
//   * dimensions are written (r, c, h) and axes are numbered 0 (i), 1 (j), 2 (k);
//   * all entry and marginal indices are 1-based;
//   * iteration is always i outermost, then j, then k, which fixes the layout of
//     serialized output and makes witness selection deterministic;
//   * integer data is arbitrary precision end to end.

namespace tab3 {

using Int = mpz_class;
using Rat = mpq_class;

enum class Status {
  ok = 0,
  invalid_input = 2,  // malformed or out-of-contract input
  cap_exceeded = 3,   // state-space or search budget exhausted
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string &what)
      : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] void fail(Status status, const std::string &message);

/// Table dimensions. Every axis has extent at least 1; degenerate tables such
/// as (1,1,1) are first-class citizens.
struct Dims3 {
  int r = 1;
  int c = 1;
  int h = 1;

  Dims3() = default;
  Dims3(int r_, int c_, int h_);

  int extent(int axis) const;
  std::int64_t cells() const {
    return std::int64_t(r) * std::int64_t(c) * std::int64_t(h);
  }
  bool operator==(const Dims3 &) const = default;
};

std::string to_string(const Dims3 &d);

/// Dense matrix of nonnegative big integers with 1-based accessors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-filled
  static Matrix from_rows(const std::vector<std::vector<Int>> &rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Int &at(int i, int j) const { return a_[offset(i, j)]; }
  Int &at(int i, int j) { return a_[offset(i, j)]; }

  Int row_sum(int i) const;
  Int col_sum(int j) const;
  Int total() const;
  bool all_nonnegative() const;

  bool operator==(const Matrix &) const = default;

 private:
  std::size_t offset(int i, int j) const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> a_;
};

/// Dense 3-table of nonnegative big integers.
class Table3 {
 public:
  Table3() : Table3(Dims3{}) {}
  explicit Table3(const Dims3 &dims);
  static Table3 filled(const Dims3 &dims, const Int &value);

  const Dims3 &dims() const { return dims_; }
  const Int &at(int i, int j, int k) const { return a_[offset(i, j, k)]; }
  Int &at(int i, int j, int k) { return a_[offset(i, j, k)]; }

  Int total() const;
  bool all_nonnegative() const;

  bool operator==(const Table3 &) const = default;

 private:
  std::size_t offset(int i, int j, int k) const;

  Dims3 dims_;
  std::vector<Int> a_;
};

/// Dense 3-table over exact rationals, for relaxations and fractional
/// witnesses. Same indexing rules as Table3.
class RealTable3 {
 public:
  RealTable3() : RealTable3(Dims3{}) {}
  explicit RealTable3(const Dims3 &dims);
  static RealTable3 from(const Table3 &t);

  const Dims3 &dims() const { return dims_; }
  const Rat &at(int i, int j, int k) const { return a_[offset(i, j, k)]; }
  Rat &at(int i, int j, int k) { return a_[offset(i, j, k)]; }

  Rat total() const;
  bool all_nonnegative() const;

  bool operator==(const RealTable3 &) const = default;

 private:
  std::size_t offset(int i, int j, int k) const;

  Dims3 dims_;
  std::vector<Rat> a_;
};

/// The three 2-marginal matrices of a 3-table: ij(i,j) = sum over k,
/// ik(i,k) = sum over j, jk(j,k) = sum over i.
struct TwoMarginals {
  Dims3 dims;
  Matrix ij;  // r x c
  Matrix ik;  // r x h
  Matrix jk;  // c x h

  static TwoMarginals zero(const Dims3 &dims);
  bool operator==(const TwoMarginals &) const = default;
};

/// The three 1-marginal vectors of a 3-table (row, column and layer sums).
struct OneMarginals {
  Dims3 dims;
  std::vector<Int> i;  // size r
  std::vector<Int> j;  // size c
  std::vector<Int> k;  // size h

  static OneMarginals zero(const Dims3 &dims);
  bool operator==(const OneMarginals &) const = default;
};

/// 1-based position of a single entry.
struct EntryIndex {
  int i = 1;
  int j = 1;
  int k = 1;
  bool operator==(const EntryIndex &) const = default;
};

std::string to_string(const EntryIndex &e);

struct ConsistencyViolation {
  std::string equation;  // e.g. "i=2" for the second row agreement equation
  Int lhs;
  Int rhs;
};

/// Result of checking the linear compatibility equations a marginal triple
/// must satisfy to come from a common table. `total` is meaningful only when
/// `consistent` is true.
struct ConsistencyReport {
  bool consistent = false;
  Int total;
  std::vector<ConsistencyViolation> violations;
};

/// Axis relabeling: an axis permutation combined with an index permutation
/// along each axis. `axis[m]` is the source axis feeding target axis m and
/// `index[m][a-1]` is the 1-based source coordinate mapped to target
/// coordinate a along that axis. The source dims are implied by the index
/// vector lengths.
struct AxisMap {
  std::array<int, 3> axis{0, 1, 2};
  std::array<std::vector<int>, 3> index;

  static AxisMap identity(const Dims3 &dims);
  Dims3 source_dims() const;
  Dims3 target_dims() const;
};

// --- marginal computation ---------------------------------------------------

TwoMarginals marginals2_of(const Table3 &t);
OneMarginals marginals1_of(const Table3 &t);

/// Checks the r + c + h agreement equations between the three matrices plus
/// the grand-total equations, reporting every violated equation (not just the
/// first).
ConsistencyReport check_consistency(const TwoMarginals &m);

/// Smallest of the covering 2-marginal entries of `e`; no table entry at `e`
/// can exceed it.
Int frechet_upper(const TwoMarginals &m, const EntryIndex &e);

bool satisfies(const Table3 &t, const TwoMarginals &m);
bool satisfies(const RealTable3 &x, const TwoMarginals &m);
bool dominated(const Table3 &t, const Table3 &bounds);
bool dominated(const RealTable3 &x, const Table3 &bounds);

// --- axis relabeling ---------------------------------------------------------

void validate(const AxisMap &a);

Table3 remap(const Table3 &t, const AxisMap &a);
RealTable3 remap(const RealTable3 &x, const AxisMap &a);
TwoMarginals remap(const TwoMarginals &m, const AxisMap &a);
OneMarginals remap(const OneMarginals &u, const AxisMap &a);

/// Target position of the source entry `e` under `a`.
EntryIndex remap(const EntryIndex &e, const AxisMap &a);

/// Composition "b first, then a": remap(x, compose(a, b)) == remap(remap(x, b), a).
AxisMap compose(const AxisMap &a, const AxisMap &b);
AxisMap inverse(const AxisMap &a);

}  // namespace tab3
