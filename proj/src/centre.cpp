#include "mva/centre.hpp"

#include <map>

#include "mva/matrix.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mva {

namespace {

void extend_pbw(const LieAlgebraSpec& g, int remaining, ModeKey min_key, Pbw& cur,
                std::vector<Pbw>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int d = 1; d <= remaining; ++d) {
    for (int i = 0; i < g.dim; ++i) {
      ModeKey k = mode_key(i, d);
      if (k < min_key) continue;
      cur.modes.push_back(k);
      extend_pbw(g, remaining - d, k, cur, out);
      cur.modes.pop_back();
    }
  }
}

struct WeightSlice {
  std::vector<Pbw> basis;
  std::map<Pbw, int> index;
};

WeightSlice make_slice(const LieAlgebraSpec& g, int w) {
  WeightSlice s;
  Pbw cur;
  extend_pbw(g, w, 0, cur, s.basis);
  for (std::size_t i = 0; i < s.basis.size(); ++i) s.index.emplace(s.basis[i], static_cast<int>(i));
  return s;
}

// kernel dimension of the stacked mode operators on one weight slice
int kernel_dim_at_weight(const LieAlgebraSpec& g, const Scalar& level, int w, int workers,
                         std::size_t capacity) {
  if (w == 0) return 1;  // the vacuum line
  std::vector<WeightSlice> slices;  // slices[t] = weight w - n for n = 0..w... indexed by weight
  slices.reserve(static_cast<std::size_t>(w) + 1);
  for (int t = 0; t <= w; ++t) slices.push_back(make_slice(g, t));
  const std::size_t cols = slices[static_cast<std::size_t>(w)].basis.size();
  if (cols > capacity)
    throw error(errc::capacity_exceeded,
                "CapacityExceeded: weight " + std::to_string(w) + " needs " + std::to_string(cols) +
                    " columns");

  // rows: block per (basis element x, mode n), image in weight w - n
  std::vector<std::size_t> block_offset;
  std::size_t rows = 0;
  for (int i = 0; i < g.dim; ++i)
    for (int n = 0; n <= w; ++n) {
      block_offset.push_back(rows);
      rows += slices[static_cast<std::size_t>(w - n)].basis.size();
    }

  const std::vector<Pbw>& colbasis = slices[static_cast<std::size_t>(w)].basis;

  if (g.p != 0) {
    FpMatrix mat(rows, cols, g.p);
    auto fill_column = [&](std::size_t c, const Vacuum& vac) {
      VState v = vac.zero();
      v.add_term(colbasis[c], Scalar::one(g.p));
      std::size_t block = 0;
      for (int i = 0; i < g.dim; ++i)
        for (int n = 0; n <= w; ++n, ++block) {
          VState img = vac.apply_mode(i, n, v);
          const WeightSlice& target = slices[static_cast<std::size_t>(w - n)];
          for (const auto& [m, coeff] : img.terms)
            mat.at(block_offset[block] + static_cast<std::size_t>(target.index.at(m)), c) =
                coeff.residue_value();
        }
    };
    if (workers > 1) {
#ifdef _OPENMP
      omp_set_num_threads(workers);
#pragma omp parallel
      {
        Vacuum vac(g, level, 4 * w + 8);
#pragma omp for schedule(dynamic)
        for (long long c = 0; c < static_cast<long long>(cols); ++c)
          fill_column(static_cast<std::size_t>(c), vac);
      }
#else
      Vacuum vac(g, level, 4 * w + 8);
      for (std::size_t c = 0; c < cols; ++c) fill_column(c, vac);
#endif
    } else {
      Vacuum vac(g, level, 4 * w + 8);
      for (std::size_t c = 0; c < cols; ++c) fill_column(c, vac);
    }
    std::size_t rank = fp_rank(std::move(mat), workers);
    return static_cast<int>(cols - rank);
  }

  // characteristic 0: exact rational elimination, serial
  ScalarMatrix mat(rows, cols, 0);
  Vacuum vac(g, level, 4 * w + 8);
  for (std::size_t c = 0; c < cols; ++c) {
    VState v = vac.zero();
    v.add_term(colbasis[c], Scalar::one(0));
    std::size_t block = 0;
    for (int i = 0; i < g.dim; ++i)
      for (int n = 0; n <= w; ++n, ++block) {
        VState img = vac.apply_mode(i, n, v);
        const WeightSlice& target = slices[static_cast<std::size_t>(w - n)];
        for (const auto& [m, coeff] : img.terms)
          mat.at(block_offset[block] + static_cast<std::size_t>(target.index.at(m)), c) = coeff;
      }
  }
  std::size_t rank = scalar_rank(std::move(mat));
  return static_cast<int>(cols - rank);
}

}  // namespace

std::vector<Pbw> pbw_basis(const LieAlgebraSpec& g, int w) {
  std::vector<Pbw> out;
  Pbw cur;
  extend_pbw(g, w, 0, cur, out);
  return out;
}

std::vector<int> centre_dimension(const LieAlgebraSpec& g, const Scalar& level, int weight_cap,
                                  int workers, std::size_t capacity) {
  std::vector<int> dims;
  dims.reserve(static_cast<std::size_t>(weight_cap) + 1);
  for (int w = 0; w <= weight_cap; ++w)
    dims.push_back(kernel_dim_at_weight(g, level, w, workers, capacity));
  return dims;
}

std::vector<int> centre_dimension_serial(const LieAlgebraSpec& g, const Scalar& level,
                                         int weight_cap, std::size_t capacity) {
  return centre_dimension(g, level, weight_cap, 1, capacity);
}

}  // namespace mva
