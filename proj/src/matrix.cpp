#include "mva/matrix.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mva {

namespace {

// Shared elimination skeleton.  The only difference between the serial and
// parallel paths is how the row updates are scheduled; pivot choice and the
// arithmetic are identical, so both produce the same matrix.
template <bool Parallel>
std::size_t fp_rref_impl(FpMatrix& m) {
  const std::uint32_t p = m.modulus();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m.at(piv, col) % p == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      std::uint64_t* a = m.row(piv);
      std::uint64_t* b = m.row(rank);
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[j], b[j]);
    }
    std::uint64_t inv = mod_inverse(m.at(rank, col) % p, p);
    {
      std::uint64_t* r = m.row(rank);
      for (std::size_t j = col; j < cols; ++j) r[j] = r[j] % p * inv % p;
    }
    const std::uint64_t* pr = m.row(rank);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (long long i = 0; i < static_cast<long long>(rows); ++i) {
      if (static_cast<std::size_t>(i) == rank) continue;
      std::uint64_t f = m.at(i, col) % p;
      if (f == 0) continue;
      std::uint64_t* r = m.row(i);
      for (std::size_t j = col; j < cols; ++j) r[j] = (r[j] + (p - f) * pr[j]) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t fp_rref_serial(FpMatrix& m) { return fp_rref_impl<false>(m); }
std::size_t fp_rref_parallel(FpMatrix& m) { return fp_rref_impl<true>(m); }

std::size_t fp_rank(FpMatrix m, int workers) {
  if (workers > 1) {
#ifdef _OPENMP
    omp_set_num_threads(workers);
#endif
    return fp_rref_parallel(m);
  }
  return fp_rref_serial(m);
}

std::vector<std::vector<std::uint64_t>> fp_nullspace(FpMatrix m, int workers) {
  const std::uint32_t p = m.modulus();
  std::size_t rank;
  if (workers > 1) {
#ifdef _OPENMP
    omp_set_num_threads(workers);
#endif
    rank = fp_rref_parallel(m);
  } else {
    rank = fp_rref_serial(m);
  }
  // locate pivot columns
  std::vector<long long> pivot_of_col(m.cols(), -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rank; ++c) {
    if (m.at(r, c) % p == 1) {
      bool is_pivot = true;
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (i != r && m.at(i, c) % p != 0) { is_pivot = false; break; }
      if (is_pivot) {
        pivot_of_col[c] = static_cast<long long>(r);
        ++r;
      }
    }
  }
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<std::uint64_t> v(m.cols(), 0);
    v[c] = 1;
    for (std::size_t cc = 0; cc < m.cols(); ++cc) {
      long long pr = pivot_of_col[cc];
      if (pr >= 0) v[cc] = (p - m.at(static_cast<std::size_t>(pr), c) % p) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t scalar_rref(ScalarMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m.at(piv, col).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    Scalar inv = m.at(rank, col).inverse();
    for (std::size_t j = col; j < cols; ++j) m.at(rank, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (std::size_t j = col; j < cols; ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::size_t scalar_rank(ScalarMatrix m) { return scalar_rref(m); }

std::vector<std::vector<Scalar>> scalar_nullspace(ScalarMatrix m) {
  const std::uint32_t p = m.characteristic();
  scalar_rref(m);
  std::vector<long long> pivot_of_col(m.cols(), -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    if (!m.at(r, c).is_zero()) {
      pivot_of_col[c] = static_cast<long long>(r);
      ++r;
    }
  }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(p));
    v[c] = Scalar::one(p);
    for (std::size_t cc = 0; cc < m.cols(); ++cc) {
      long long pr = pivot_of_col[cc];
      if (pr >= 0) v[cc] = -m.at(static_cast<std::size_t>(pr), c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool scalar_inverse(const ScalarMatrix& m, ScalarMatrix& out) {
  if (m.rows() != m.cols()) throw error(errc::usage, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const std::uint32_t p = m.characteristic();
  ScalarMatrix aug(n, 2 * n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Scalar::one(p);
  }
  // pivots restricted to the left block
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug.at(piv, col).is_zero()) ++piv;
    if (piv == n) return false;
    if (piv != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug.at(piv, j), aug.at(col, j));
    Scalar inv = aug.at(col, col).inverse();
    for (std::size_t j = 0; j < 2 * n; ++j) aug.at(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || aug.at(i, col).is_zero()) continue;
      Scalar f = aug.at(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) aug.at(i, j) -= f * aug.at(col, j);
    }
  }
  out = ScalarMatrix(n, n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return true;
}

ColumnSolver::ColumnSolver(const ScalarMatrix& b)
    : aug_(b.rows(), b.cols() + b.rows(), b.characteristic()), n_(b.cols()) {
  const std::size_t rows = b.rows();
  const std::uint32_t p = b.characteristic();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n_; ++j) aug_.at(i, j) = b.at(i, j);
    aug_.at(i, n_ + i) = Scalar::one(p);
  }
  scalar_rref(aug_);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_ && r < rows; ++c) {
    if (!aug_.at(r, c).is_zero()) {
      pivot_rows_.push_back(r);
      pivot_cols_.push_back(c);
      ++r;
    }
  }
}

std::vector<Scalar> ColumnSolver::expand(const std::vector<Scalar>& v) const {
  const std::uint32_t p = aug_.characteristic();
  if (v.size() != aug_.rows()) throw error(errc::usage, "expand: wrong vector length");
  // u = U*v where U is the recorded row-operation matrix
  std::vector<Scalar> u(aug_.rows(), Scalar::zero(p));
  for (std::size_t i = 0; i < aug_.rows(); ++i)
    for (std::size_t j = 0; j < aug_.rows(); ++j) {
      if (aug_.at(i, n_ + j).is_zero() || v[j].is_zero()) continue;
      u[i] += aug_.at(i, n_ + j) * v[j];
    }
  // rows beyond the rank must vanish, otherwise v is outside the span
  for (std::size_t i = pivot_rows_.size(); i < aug_.rows(); ++i)
    if (!u[i].is_zero()) throw error(errc::usage, "expand: vector outside column span");
  std::vector<Scalar> coords(n_, Scalar::zero(p));
  // rref of B holds in the first n_ columns: coords read off pivot rows,
  // correcting for non-pivot columns (all zero here: the basis columns are
  // independent in every intended use, but handle the general case).
  for (std::size_t k = pivot_rows_.size(); k-- > 0;) {
    Scalar val = u[pivot_rows_[k]];
    for (std::size_t c = pivot_cols_[k] + 1; c < n_; ++c) {
      if (aug_.at(pivot_rows_[k], c).is_zero() || coords[c].is_zero()) continue;
      val -= aug_.at(pivot_rows_[k], c) * coords[c];
    }
    coords[pivot_cols_[k]] = val;
  }
  return coords;
}

}  // namespace mva
