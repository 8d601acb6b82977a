#pragma once

#include <cstddef>
#include <vector>

#include "mva/scalar.hpp"

namespace mva {

// Dense matrix over F_p with word-sized entries.  This is the workhorse for
// kernel/rank computations: columns are basis vectors of a weight or degree
// slice, rows are images under mode operators or derivations.
class FpMatrix {
public:
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::uint64_t* row(std::size_t i) { return a_.data() + i * cols_; }
  const std::uint64_t* row(std::size_t i) const { return a_.data() + i * cols_; }

private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint64_t> a_;
};

// In-place reduced row echelon form.  Pivot selection is fixed (first row
// with a nonzero entry in column order), so the result does not depend on
// the number of workers.  Returns the rank.
std::size_t fp_rref_serial(FpMatrix& m);
std::size_t fp_rref_parallel(FpMatrix& m);

// Dispatches on workers (<=1 serial, otherwise the OpenMP kernel).
std::size_t fp_rank(FpMatrix m, int workers);

// Basis of the right nullspace, one vector per non-pivot column, in column
// order with the free coordinate set to 1.
std::vector<std::vector<std::uint64_t>> fp_nullspace(FpMatrix m, int workers);

// Exact dense matrix over Scalar (any characteristic).  Serial reference
// implementation; the F_p kernels above must agree with it.
class ScalarMatrix {
public:
  ScalarMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, Scalar::zero(p)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t characteristic() const { return p_; }

  Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<Scalar> a_;
};

std::size_t scalar_rref(ScalarMatrix& m);
std::size_t scalar_rank(ScalarMatrix m);
std::vector<std::vector<Scalar>> scalar_nullspace(ScalarMatrix m);

// Inverse of a square matrix; empty optional-like flag via bool return.
bool scalar_inverse(const ScalarMatrix& m, ScalarMatrix& out);

// Exact solver fixed on a column space: echelonizes B once, then expands
// arbitrary vectors in the span of B's columns.  Rejects non-members.
class ColumnSolver {
public:
  explicit ColumnSolver(const ScalarMatrix& basis_columns);
  std::size_t rank() const { return pivot_rows_.size(); }
  // coords with basis_columns * coords = v, exact; throws errc::usage if v
  // is outside the column span.
  std::vector<Scalar> expand(const std::vector<Scalar>& v) const;

private:
  ScalarMatrix aug_;  // rref of [B | I]
  std::size_t n_;     // columns of B
  std::vector<std::size_t> pivot_rows_;
  std::vector<std::size_t> pivot_cols_;
};

}  // namespace mva
