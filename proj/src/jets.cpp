#include "mva/jets.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "mva/matrix.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mva {

std::vector<int> invariant_degrees(Family f, int N) {
  std::vector<int> d;
  switch (f) {
    case Family::gl:
      for (int i = 1; i <= N; ++i) d.push_back(i);
      break;
    case Family::sl:
      for (int i = 2; i <= N; ++i) d.push_back(i);
      break;
    case Family::sp:
      for (int i = 1; i <= N / 2; ++i) d.push_back(2 * i);
      break;
    case Family::so:
      if (N % 2) {
        for (int i = 1; i <= N / 2; ++i) d.push_back(2 * i);
      } else {
        for (int i = 1; i < N / 2; ++i) d.push_back(2 * i);
        d.push_back(N / 2);  // Pfaffian
        std::sort(d.begin(), d.end());
      }
      break;
  }
  return d;
}

namespace {

// generic matrix X with Tr(x_a X) = var_a: X = sum_a var_a y^a over the
// trace-dual basis
std::vector<std::vector<DiffPoly>> generic_matrix(const LieAlgebraSpec& g, int trunc) {
  ScalarMatrix gram(g.dim, g.dim, g.p);
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) gram.at(a, b) = mat_trace(mat_mul(g.basis[a], g.basis[b]));
  ScalarMatrix inv(0, 0, g.p);
  if (!scalar_inverse(gram, inv))
    throw error(errc::degenerate_form, "DegenerateForm: trace Gram matrix is singular");
  std::vector<std::vector<DiffPoly>> X(
      g.N, std::vector<DiffPoly>(g.N, DiffPoly::zero(g.p, trunc)));
  for (int a = 0; a < g.dim; ++a) {
    // trace-dual of x_a: sum_c inv(c,a) x_c
    DiffPoly va = DiffPoly::variable(a, 1, g.p, trunc);
    for (int c = 0; c < g.dim; ++c) {
      if (inv.at(c, a).is_zero()) continue;
      for (int r = 0; r < g.N; ++r)
        for (int s = 0; s < g.N; ++s) {
          const Scalar& e = g.basis[c].at(r, s);
          if (e.is_zero()) continue;
          X[r][s] += va.scaled(inv.at(c, a) * e);
        }
    }
  }
  return X;
}

// coefficients of det(lambda*I - X) as a polynomial in lambda, Laplace
// expansion along the first remaining row; N is small
using LambdaPoly = std::vector<DiffPoly>;  // index = power of lambda

LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b, std::uint32_t p, int trunc) {
  LambdaPoly out(a.size() + b.size() - 1, DiffPoly::zero(p, trunc));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

LambdaPoly char_poly_det(const std::vector<std::vector<DiffPoly>>& m, std::vector<int> rows,
                         std::vector<int> cols, std::uint32_t p, int trunc) {
  if (rows.empty()) return {DiffPoly::constant(Scalar::one(p), trunc)};
  int r = rows.front();
  std::vector<int> rrest(rows.begin() + 1, rows.end());
  LambdaPoly acc(1, DiffPoly::zero(p, trunc));
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    int c = cols[ci];
    // entry (lambda*delta_rc - X_rc) as a lambda-polynomial
    LambdaPoly entry(r == c ? 2 : 1, DiffPoly::zero(p, trunc));
    entry[0] = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].scaled(
        -Scalar::one(p));
    if (r == c) entry[1] = DiffPoly::constant(Scalar::one(p), trunc);
    std::vector<int> crest;
    for (std::size_t cj = 0; cj < cols.size(); ++cj)
      if (cj != ci) crest.push_back(cols[cj]);
    LambdaPoly minor = char_poly_det(m, rrest, crest, p, trunc);
    LambdaPoly term = lp_mul(entry, minor, p, trunc);
    if (ci % 2) {
      for (auto& t : term) t = t.scaled(-Scalar::one(p));
    }
    if (term.size() > acc.size()) acc.resize(term.size(), DiffPoly::zero(p, trunc));
    for (std::size_t t = 0; t < term.size(); ++t) acc[t] += term[t];
  }
  return acc;
}

DiffPoly pfaffian(const std::vector<std::vector<DiffPoly>>& a, std::vector<int> idx,
                  std::uint32_t p, int trunc) {
  if (idx.empty()) return DiffPoly::constant(Scalar::one(p), trunc);
  DiffPoly out = DiffPoly::zero(p, trunc);
  int first = idx.front();
  for (std::size_t k = 1; k < idx.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != k) rest.push_back(idx[t]);
    DiffPoly term = a[static_cast<std::size_t>(first)][static_cast<std::size_t>(idx[k])] *
                    pfaffian(a, rest, p, trunc);
    if (k % 2 == 0) term = term.scaled(-Scalar::one(p));
    out += term;
  }
  return out;
}

}  // namespace

DiffPoly build_invariant_P(const LieAlgebraSpec& g, int i, int trunc) {
  std::vector<int> degs = invariant_degrees(g.family, g.N);
  if (i < 1 || i > static_cast<int>(degs.size()))
    throw error(errc::usage, "build_invariant_P: index out of range");
  const int d = degs[static_cast<std::size_t>(i) - 1];
  auto X = generic_matrix(g, trunc);

  if (g.family == Family::so && g.N % 2 == 0 && d == g.N / 2 &&
      i == static_cast<int>(degs.size())) {
    // top type-D generator: Pfaffian of J X (antisymmetric for X in so_N)
    std::vector<std::vector<DiffPoly>> jx(
        g.N, std::vector<DiffPoly>(g.N, DiffPoly::zero(g.p, trunc)));
    for (int r = 0; r < g.N; ++r)
      for (int c = 0; c < g.N; ++c) jx[r][c] = X[static_cast<std::size_t>(g.N - 1 - r)][static_cast<std::size_t>(c)];
    std::vector<int> idx(static_cast<std::size_t>(g.N));
    for (int t = 0; t < g.N; ++t) idx[static_cast<std::size_t>(t)] = t;
    return pfaffian(jx, idx, g.p, trunc);
  }

  std::vector<int> all(static_cast<std::size_t>(g.N));
  for (int t = 0; t < g.N; ++t) all[static_cast<std::size_t>(t)] = t;
  LambdaPoly cp = char_poly_det(X, all, all, g.p, trunc);
  // det(lambda - X) = sum_t c_t lambda^{N-t}; e_t = (-1)^t c_t
  DiffPoly e = cp[static_cast<std::size_t>(g.N - d)];
  if (d % 2) e = e.scaled(-Scalar::one(g.p));
  if (g.family != Family::gl && d == 2) e = e.scaled(-Scalar::one(g.p));  // Tr(X^2)/2
  return e;
}

DiffPoly P_series(const LieAlgebraSpec& g, int i, int j, int trunc) {
  if (j < 1) throw error(errc::usage, "P_series: j must be positive");
  return hasse_derive(static_cast<unsigned>(j - 1), build_invariant_P(g, i, trunc));
}

DiffPoly coadjoint_derivation(const LieAlgebraSpec& g, int x, int m, const DiffPoly& f) {
  DiffPoly out(g.p, f.truncation());
  for (const auto& [mono, c] : f.terms()) {
    for (std::size_t k = 0; k < mono.size(); ++k) {
      const JetVar v = mono[k].first;
      const int depth = jet_var_depth(v);
      if (depth <= m) continue;  // (x t^m) . y_{-j} = 0 for m >= j
      const int y = jet_var_index(v);
      Scalar mult = c * Scalar::of_int(static_cast<long long>(mono[k].second), g.p);
      if (mult.is_zero()) continue;
      // remove one power of v, multiply by [x,y]_{-(depth-m)}
      JetMonomial rest = mono;
      if (rest[k].second == 1)
        rest.erase(rest.begin() + static_cast<long long>(k));
      else
        --rest[k].second;
      DiffPoly restp(g.p, f.truncation());
      restp.add_term(rest, mult);
      for (const auto& [z, cz] : g.bracket(x, y)) {
        DiffPoly var = DiffPoly::variable(z, depth - m, g.p, f.truncation());
        out += (restp * var).scaled(cz);
      }
    }
  }
  return out;
}

namespace {

// images of every variable under exp(s D): linear polynomials, computed by
// climbing ad(x_alpha); requires nilpotency order < p
std::vector<std::vector<std::pair<JetVar, Scalar>>> one_param_images(const LieAlgebraSpec& g,
                                                                     int root, int m,
                                                                     const Scalar& s_or_one,
                                                                     bool formal,
                                                                     std::vector<JetVar> vars,
                                                                     int max_tpow,
                                                                     std::vector<std::vector<std::vector<std::pair<JetVar, Scalar>>>>* formal_out) {
  const RootVectorInfo& rv = g.root_vectors.at(static_cast<std::size_t>(root));
  if (g.p != 0 && rv.nilpotency_order >= static_cast<int>(g.p))
    throw error(errc::nilpotency_order_too_large,
                "NilpotencyOrderTooLarge: ad(" + rv.label + ") order " +
                    std::to_string(rv.nilpotency_order) + " vs p = " + std::to_string(g.p));
  const int x = rv.basis_index;
  std::vector<std::vector<std::pair<JetVar, Scalar>>> images(vars.size());
  if (formal_out) formal_out->assign(vars.size(), {});
  for (std::size_t vi = 0; vi < vars.size(); ++vi) {
    const JetVar v0 = vars[vi];
    // iterate D^t on a single variable: sparse combo depth j - t*m
    std::map<int, Scalar> combo;  // basis index -> coeff at current depth
    combo[jet_var_index(v0)] = Scalar::one(g.p);
    int depth = jet_var_depth(v0);
    Scalar factorial = Scalar::one(g.p);
    std::vector<std::pair<JetVar, Scalar>> img;
    std::vector<std::vector<std::pair<JetVar, Scalar>>> by_power;
    for (int t = 0; t <= max_tpow; ++t) {
      if (t > 0) {
        // apply D once: y -> [x,y] at depth - m
        if (depth - m < 1) break;
        std::map<int, Scalar> next;
        for (const auto& [y, cy] : combo)
          for (const auto& [z, cz] : g.bracket(x, y)) {
            Scalar w = cy * cz;
            if (w.is_zero()) continue;
            auto it = next.find(z);
            if (it == next.end())
              next.emplace(z, w);
            else {
              it->second += w;
              if (it->second.is_zero()) next.erase(it);
            }
          }
        combo.swap(next);
        depth -= m;
        if (combo.empty()) break;
        factorial *= Scalar::of_int(t, g.p);
      }
      Scalar st = formal ? Scalar::one(g.p) : s_or_one.pow(static_cast<std::uint64_t>(t));
      std::vector<std::pair<JetVar, Scalar>> level_terms;
      for (const auto& [z, cz] : combo) {
        Scalar coeff = cz / factorial;
        if (!formal) coeff *= st;
        if (coeff.is_zero()) continue;
        level_terms.emplace_back(jet_var(z, depth), coeff);
      }
      if (formal) {
        by_power.push_back(level_terms);
      } else {
        for (auto& t2 : level_terms) img.push_back(t2);
      }
      if (m == 0 && t > 2 * g.dim) break;  // safety; nilpotency ends the loop first
    }
    if (formal) {
      (*formal_out)[vi] = by_power;
    } else {
      images[vi] = img;
    }
  }
  return images;
}

std::vector<JetVar> poly_vars(const DiffPoly& f) {
  std::vector<JetVar> vars;
  for (const auto& [m, c] : f.terms())
    for (const auto& [v, e] : m) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

}  // namespace

DiffPoly one_param_action(const LieAlgebraSpec& g, int root, int m, const Scalar& s,
                          const DiffPoly& f) {
  std::vector<JetVar> vars = poly_vars(f);
  const int max_t = 2 * static_cast<int>(g.root_vectors.at(static_cast<std::size_t>(root))
                                             .nilpotency_order) +
                    4;
  auto images =
      one_param_images(g, root, m, s, false, vars, max_t, nullptr);
  std::map<JetVar, std::size_t> pos;
  for (std::size_t i = 0; i < vars.size(); ++i) pos.emplace(vars[i], i);
  DiffPoly out(g.p, f.truncation());
  for (const auto& [mono, c] : f.terms()) {
    DiffPoly acc = DiffPoly::constant(c, f.truncation());
    for (const auto& [v, e] : mono) {
      DiffPoly lin(g.p, f.truncation());
      for (const auto& [w, cw] : images[pos.at(v)]) {
        DiffPoly var = DiffPoly::variable(jet_var_index(w), jet_var_depth(w), g.p, f.truncation());
        lin += var.scaled(cw);
      }
      for (std::uint32_t t = 0; t < e; ++t) acc = acc * lin;
    }
    out += acc;
  }
  return out;
}

std::vector<DiffPoly> one_param_action_formal(const LieAlgebraSpec& g, int root, int m,
                                              const DiffPoly& f) {
  if (g.p == 0)
    throw error(errc::bad_characteristic, "BadCharacteristic: formal nilpotent check needs p");
  const std::uint32_t p = g.p;
  std::vector<JetVar> vars = poly_vars(f);
  std::vector<std::vector<std::vector<std::pair<JetVar, Scalar>>>> formal;
  one_param_images(g, root, m, Scalar::one(p), true, vars,
                   static_cast<int>(p) - 1, &formal);
  std::map<JetVar, std::size_t> pos;
  for (std::size_t i = 0; i < vars.size(); ++i) pos.emplace(vars[i], i);

  // series with coefficients in DiffPoly, s^p = 0
  using Series = std::vector<DiffPoly>;
  auto series_zero = [&]() { return Series(p, DiffPoly::zero(p, f.truncation())); };
  auto series_mul = [&](const Series& a, const Series& b) {
    Series out = series_zero();
    for (std::size_t i = 0; i < p; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < p; ++j) {
        if (b[j].is_zero()) continue;
        out[i + j] += a[i] * b[j];
      }
    }
    return out;
  };

  Series total = series_zero();
  for (const auto& [mono, c] : f.terms()) {
    Series acc = series_zero();
    acc[0] = DiffPoly::constant(c, f.truncation());
    for (const auto& [v, e] : mono) {
      Series lin = series_zero();
      const auto& by_power = formal[pos.at(v)];
      for (std::size_t t = 0; t < by_power.size() && t < p; ++t)
        for (const auto& [w, cw] : by_power[t]) {
          DiffPoly var =
              DiffPoly::variable(jet_var_index(w), jet_var_depth(w), g.p, f.truncation());
          lin[t] += var.scaled(cw);
        }
      for (std::uint32_t t = 0; t < e; ++t) acc = series_mul(acc, lin);
    }
    for (std::size_t i = 0; i < p; ++i) total[i] += acc[i];
  }
  return total;
}

std::vector<JetVar> jet_var_order(const LieAlgebraSpec& g, int m) {
  std::vector<JetVar> order;
  for (int j = 1; j <= m + 1; ++j)
    for (int i = 0; i < g.dim; ++i) order.push_back(jet_var(i, j));
  return order;
}

JacobianResult jacobian_rank(const LieAlgebraSpec& g, int m, const std::vector<Scalar>& point) {
  JacobianResult res;
  const int r = g.rank;
  res.full_rank = (m + 1) * r;
  std::vector<JetVar> order = jet_var_order(g, m);
  if (point.size() != order.size())
    throw error(errc::usage, "jacobian_rank: point has wrong length");

  // P_{i,-a} for a = 1..m+1
  std::vector<std::vector<DiffPoly>> P(static_cast<std::size_t>(r));
  for (int i = 1; i <= r; ++i) {
    P[static_cast<std::size_t>(i - 1)].push_back(build_invariant_P(g, i, m));
    for (int a = 2; a <= m + 1; ++a)
      P[static_cast<std::size_t>(i - 1)].push_back(
          hasse_derive(1u * static_cast<unsigned>(a - 1),
                       P[static_cast<std::size_t>(i - 1)][0]));
  }

  // block structure at the polynomial level
  res.block_structure_ok = true;
  for (int i = 1; i <= r && res.block_structure_ok; ++i)
    for (int a = 1; a <= m + 1 && res.block_structure_ok; ++a)
      for (int b = 1; b <= m + 1; ++b) {
        for (int jv = 0; jv < g.dim; ++jv) {
          DiffPoly d =
              P[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(a - 1)].partial(
                  jet_var(jv, b));
          if (b > a && !d.is_zero()) {
            res.block_structure_ok = false;
            res.witness = "nonzero partial above the diagonal: P_" + std::to_string(i) + ",-" +
                          std::to_string(a) + " by depth " + std::to_string(b);
            break;
          }
          if (b == a) {
            DiffPoly diag =
                P[static_cast<std::size_t>(i - 1)][0].partial(jet_var(jv, 1));
            if (d != diag) {
              res.block_structure_ok = false;
              res.witness = "diagonal block differs from the constant block at P_" +
                            std::to_string(i) + ",-" + std::to_string(a);
              break;
            }
          }
        }
      }

  ScalarMatrix jac(order.size(), static_cast<std::size_t>((m + 1) * r), g.p);
  for (int i = 1; i <= r; ++i)
    for (int a = 1; a <= m + 1; ++a) {
      std::size_t col = static_cast<std::size_t>((a - 1) * r + (i - 1));
      for (std::size_t row = 0; row < order.size(); ++row) {
        DiffPoly d = P[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(a - 1)].partial(
            order[row]);
        if (d.is_zero()) continue;
        jac.at(row, col) = d.eval(point, order);
      }
    }
  res.rank = static_cast<int>(scalar_rank(jac));
  return res;
}

std::vector<Scalar> sample_regular_point(const LieAlgebraSpec& g, int m, SplitMix64& rng) {
  if (g.p == 0) throw error(errc::usage, "sample_regular_point: needs characteristic p");
  std::vector<JetVar> order = jet_var_order(g, m);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    std::vector<Scalar> xi0;
    xi0.reserve(static_cast<std::size_t>(g.dim));
    for (int i = 0; i < g.dim; ++i) xi0.push_back(Scalar::residue(rng.below(g.p), g.p));
    if (coadjoint_stabilizer_dim(g, xi0) != g.rank) continue;
    std::vector<Scalar> point;
    point.reserve(order.size());
    for (std::size_t t = 0; t < order.size(); ++t) {
      if (jet_var_depth(order[t]) == 1)
        point.push_back(xi0[static_cast<std::size_t>(jet_var_index(order[t]))]);
      else
        point.push_back(Scalar::residue(rng.below(g.p), g.p));
    }
    return point;
  }
  throw error(errc::usage, "sample_regular_point: no regular point found");
}

DiffPoly rewriteders_residual(const LieAlgebraSpec& g, const DiffPoly& P, int i, int s, int m) {
  if (P.characteristic() != g.p)
    throw error(errc::characteristic_mismatch, "CharacteristicMismatch: polynomial vs algebra");
  DiffPoly lhs = hasse_derive(static_cast<unsigned>(m), P).partial(jet_var(i, 1 + s));
  if (m < s) return lhs;  // predicted zero
  DiffPoly rhs = hasse_derive(static_cast<unsigned>(m - s), P.partial(jet_var(i, 1)));
  return lhs - rhs;
}

JetIdeal jet_ideal(const std::vector<DiffPoly>& gens, int m) {
  JetIdeal out;
  out.truncation = m;
  for (const auto& a : gens)
    for (int t = 0; t <= m; ++t) out.generators.push_back(hasse_derive(static_cast<unsigned>(t), a));
  return out;
}

InvariantMode invariant_mode_from_string(const std::string& s) {
  if (s == "lie") return InvariantMode::lie;
  if (s == "group") return InvariantMode::group;
  if (s == "p-th-powers-quotient" || s == "pquot") return InvariantMode::pth_powers_quotient;
  throw error(errc::usage, "Usage: unknown invariant mode " + s);
}

const char* invariant_mode_name(InvariantMode m) {
  switch (m) {
    case InvariantMode::lie: return "lie";
    case InvariantMode::group: return "group";
    case InvariantMode::pth_powers_quotient: return "p-th-powers-quotient";
  }
  return "?";
}

namespace {

void extend_monomials(const std::vector<JetVar>& vars, std::size_t from, int remaining,
                      JetMonomial& cur, std::vector<JetMonomial>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t t = from; t < vars.size(); ++t) {
    if (!cur.empty() && cur.back().first == vars[t])
      ++cur.back().second;
    else
      cur.emplace_back(vars[t], 1);
    extend_monomials(vars, t, remaining - 1, cur, out);
    if (cur.back().second == 1)
      cur.pop_back();
    else
      --cur.back().second;
  }
}

std::vector<JetMonomial> degree_monomials(const LieAlgebraSpec& g, int m, int degree) {
  std::vector<JetVar> vars = jet_var_order(g, m);
  std::vector<JetMonomial> out;
  JetMonomial cur;
  extend_monomials(vars, 0, degree, cur, out);
  return out;
}

// dimension of the joint kernel of linear maps on the degree-d monomial
// space; ops produce the image polynomial of a monomial
int kernel_dim_generic(const LieAlgebraSpec& g, const std::vector<JetMonomial>& monos,
                       const std::vector<std::function<DiffPoly(const DiffPoly&)>>& ops,
                       int workers) {
  std::map<JetMonomial, std::size_t> index;
  for (std::size_t c = 0; c < monos.size(); ++c) index.emplace(monos[c], c);
  const std::size_t cols = monos.size();
  const std::size_t rows = cols * ops.size();
  if (g.p != 0) {
    FpMatrix mat(rows, cols, g.p);
    auto fill = [&](std::size_t c) {
      DiffPoly mono(g.p, -1);
      mono.add_term(monos[c], Scalar::one(g.p));
      for (std::size_t o = 0; o < ops.size(); ++o) {
        DiffPoly img = ops[o](mono);
        for (const auto& [mm, cc] : img.terms())
          mat.at(o * cols + index.at(mm), c) = cc.residue_value();
      }
    };
#ifdef _OPENMP
    if (workers > 1) {
      omp_set_num_threads(workers);
#pragma omp parallel for schedule(dynamic)
      for (long long c = 0; c < static_cast<long long>(cols); ++c)
        fill(static_cast<std::size_t>(c));
    } else {
      for (std::size_t c = 0; c < cols; ++c) fill(c);
    }
#else
    for (std::size_t c = 0; c < cols; ++c) fill(c);
#endif
    return static_cast<int>(cols - fp_rank(std::move(mat), workers));
  }
  ScalarMatrix mat(rows, cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    DiffPoly mono(0, -1);
    mono.add_term(monos[c], Scalar::one(0));
    for (std::size_t o = 0; o < ops.size(); ++o) {
      DiffPoly img = ops[o](mono);
      for (const auto& [mm, cc] : img.terms()) mat.at(o * cols + index.at(mm), c) = cc;
    }
  }
  return static_cast<int>(cols - scalar_rank(std::move(mat)));
}

// nullspace basis (as polynomials) of the lie operators at one degree
std::vector<DiffPoly> lie_invariant_basis(const LieAlgebraSpec& g, int m,
                                          const std::vector<JetMonomial>& monos, int workers) {
  std::map<JetMonomial, std::size_t> index;
  for (std::size_t c = 0; c < monos.size(); ++c) index.emplace(monos[c], c);
  const std::size_t cols = monos.size();
  const std::size_t nops = static_cast<std::size_t>(g.dim) * static_cast<std::size_t>(m + 1);
  FpMatrix mat(cols * nops, cols, g.p);
  for (std::size_t c = 0; c < cols; ++c) {
    DiffPoly mono(g.p, -1);
    mono.add_term(monos[c], Scalar::one(g.p));
    std::size_t o = 0;
    for (int x = 0; x < g.dim; ++x)
      for (int mm = 0; mm <= m; ++mm, ++o) {
        DiffPoly img = coadjoint_derivation(g, x, mm, mono);
        for (const auto& [t, cc] : img.terms()) mat.at(o * cols + index.at(t), c) = cc.residue_value();
      }
  }
  auto null_vecs = fp_nullspace(std::move(mat), workers);
  std::vector<DiffPoly> basis;
  for (const auto& v : null_vecs) {
    DiffPoly f(g.p, -1);
    for (std::size_t c = 0; c < cols; ++c)
      if (v[c]) f.add_term(monos[c], Scalar::residue(v[c], g.p));
    basis.push_back(std::move(f));
  }
  return basis;
}

}  // namespace

std::vector<int> invariant_ring_dimensions(const LieAlgebraSpec& g, int m, int degree_cap,
                                           InvariantMode mode, int workers,
                                           std::size_t capacity) {
  if (mode != InvariantMode::lie && g.p == 0)
    throw error(errc::bad_characteristic,
                "BadCharacteristic: mode " + std::string(invariant_mode_name(mode)) +
                    " needs characteristic p");
  std::vector<int> dims;
  // lie bases by degree, kept for the quotient mode
  std::vector<std::vector<DiffPoly>> lie_bases;
  for (int d = 0; d <= degree_cap; ++d) {
    std::vector<JetMonomial> monos = degree_monomials(g, m, d);
    if (monos.size() > capacity)
      throw error(errc::capacity_exceeded, "CapacityExceeded: degree " + std::to_string(d) +
                                               " needs " + std::to_string(monos.size()) +
                                               " columns");
    if (d == 0) {
      dims.push_back(1);
      if (mode == InvariantMode::pth_powers_quotient) {
        DiffPoly one(g.p, -1);
        one.add_term({}, Scalar::one(g.p));
        lie_bases.push_back({one});
      }
      continue;
    }
    switch (mode) {
      case InvariantMode::lie: {
        std::vector<std::function<DiffPoly(const DiffPoly&)>> ops;
        for (int x = 0; x < g.dim; ++x)
          for (int mm = 0; mm <= m; ++mm)
            ops.push_back([&g, x, mm](const DiffPoly& f) { return coadjoint_derivation(g, x, mm, f); });
        dims.push_back(kernel_dim_generic(g, monos, ops, workers));
        break;
      }
      case InvariantMode::group: {
        std::vector<std::function<DiffPoly(const DiffPoly&)>> ops;
        for (std::size_t rt = 0; rt < g.root_vectors.size(); ++rt)
          for (int mm = 0; mm <= m; ++mm)
            for (std::uint32_t s = 1; s < g.p; ++s)
              ops.push_back([&g, rt, mm, s](const DiffPoly& f) {
                return one_param_action(g, static_cast<int>(rt), mm, Scalar::residue(s, g.p), f) -
                       f;
              });
        dims.push_back(kernel_dim_generic(g, monos, ops, workers));
        break;
      }
      case InvariantMode::pth_powers_quotient: {
        std::vector<DiffPoly> inv = lie_invariant_basis(g, m, monos, workers);
        // span of q^p * h with q a monomial of degree e >= 1 and h a lower
        // lie invariant of degree d - p*e
        std::map<JetMonomial, std::size_t> index;
        for (std::size_t c = 0; c < monos.size(); ++c) index.emplace(monos[c], c);
        std::vector<std::vector<std::uint64_t>> uvecs;
        for (int e = 1; e * static_cast<int>(g.p) <= d; ++e) {
          int rest = d - e * static_cast<int>(g.p);
          std::vector<JetMonomial> qs = degree_monomials(g, m, e);
          for (const auto& q : qs) {
            JetMonomial qp = q;
            for (auto& [v, ex] : qp) ex *= g.p;
            DiffPoly qpoly(g.p, -1);
            qpoly.add_term(qp, Scalar::one(g.p));
            for (const auto& h : lie_bases[static_cast<std::size_t>(rest)]) {
              DiffPoly prod = qpoly * h;
              std::vector<std::uint64_t> vec(monos.size(), 0);
              for (const auto& [t, cc] : prod.terms()) vec[index.at(t)] = cc.residue_value();
              uvecs.push_back(std::move(vec));
            }
          }
        }
        std::size_t udim = 0;
        if (!uvecs.empty()) {
          FpMatrix umat(uvecs.size(), monos.size(), g.p);
          for (std::size_t r = 0; r < uvecs.size(); ++r)
            for (std::size_t c = 0; c < monos.size(); ++c) umat.at(r, c) = uvecs[r][c];
          udim = fp_rank(std::move(umat), workers);
        }
        dims.push_back(static_cast<int>(inv.size() - udim));
        lie_bases.push_back(std::move(inv));
        break;
      }
    }
  }
  return dims;
}

std::vector<long long> monomial_counts_by_degree(const std::vector<int>& generator_degrees,
                                                 int degree_cap, unsigned bound) {
  std::vector<long long> series(static_cast<std::size_t>(degree_cap) + 1, 0);
  series[0] = 1;
  for (int dg : generator_degrees) {
    std::vector<long long> next(series.size(), 0);
    for (std::size_t t = 0; t < series.size(); ++t) {
      if (!series[t]) continue;
      for (unsigned e = 0; bound == 0 || e < bound; ++e) {
        std::size_t idx = t + static_cast<std::size_t>(e) * static_cast<std::size_t>(dg);
        if (idx >= next.size()) break;
        next[idx] += series[t];
      }
    }
    series.swap(next);
  }
  return series;
}

namespace {

// The n-th products of the level-k Poisson vertex structure on the
// differential polynomial algebra, defined on generators by
//   x_{-1} (0) y_{-1} = [x,y]_{-1},  x_{-1} (1) y_{-1} = kappa(x,y) k,
// and extended by the divided-power translation rule in the first slot,
// skew-symmetry, and the derivation property in the second slot.  The
// extension terminates: the derivation rule shrinks the second argument,
// and a flip is always followed by a derivation step.
struct PvaCtx {
  const LieAlgebraSpec& g;
  Scalar level;
  int trunc;

  DiffPoly zero() const { return DiffPoly::zero(g.p, trunc); }

  DiffPoly mono_poly(const JetMonomial& m, const Scalar& c) const {
    DiffPoly f = zero();
    f.add_term(m, c);
    return f;
  }

  // single variable (n) single variable
  DiffPoly single(JetVar a, long long n, JetVar b) const {
    const int j = jet_var_depth(a);
    if (j > 1) {
      // first-slot depth reduction: a = d^(j-1) x_{-1}
      Scalar c = binomial_scalar(-n + j - 2, static_cast<unsigned>(j - 1), g.p);
      if (c.is_zero()) return zero();
      return single(jet_var(jet_var_index(a), 1), n - j + 1, b).scaled(c);
    }
    const int l = jet_var_depth(b);
    if (l == 1) {
      DiffPoly out = zero();
      if (n == 0) {
        for (const auto& [z, cz] : g.bracket(jet_var_index(a), jet_var_index(b)))
          out += DiffPoly::variable(z, 1, g.p, trunc).scaled(cz);
      } else if (n == 1) {
        Scalar c = g.kappa_at(jet_var_index(a), jet_var_index(b)) * level;
        if (!c.is_zero()) out.add_term({}, c);
      }
      return out;
    }
    // flip by skew-symmetry; the inner first slot depth-reduces to the base
    DiffPoly out = zero();
    for (long long k = 0; n + k <= l + 1; ++k) {
      DiffPoly inner = single(b, n + k, a);
      if (inner.is_zero()) continue;
      DiffPoly term = hasse_derive(static_cast<unsigned>(k), inner);
      if ((n + k) % 2 == 0) term = term.scaled(-Scalar::one(g.p));
      out += term;
    }
    return out;
  }

  DiffPoly mono(const JetMonomial& a, long long n, const JetMonomial& b) const {
    if (a.empty() || b.empty()) return zero();
    if (jet_monomial_degree(b) >= 2) {
      // derivation in the second slot: split off one factor
      JetVar u = b.front().first;
      JetMonomial rest = b;
      if (rest.front().second == 1)
        rest.erase(rest.begin());
      else
        --rest.front().second;
      DiffPoly upoly = mono_poly({{u, 1}}, Scalar::one(g.p));
      DiffPoly rpoly = mono_poly(rest, Scalar::one(g.p));
      return mono(a, n, {{u, 1}}) * rpoly + upoly * mono(a, n, rest);
    }
    if (jet_monomial_degree(a) == 1) return single(a.front().first, n, b.front().first);
    // flip, then the inner call takes the derivation branch
    const int bound = jet_monomial_weight(a) + jet_monomial_weight(b) - static_cast<int>(n) - 1;
    DiffPoly out = zero();
    for (long long k = 0; k <= bound; ++k) {
      DiffPoly inner = mono(b, n + k, a);
      if (inner.is_zero()) continue;
      DiffPoly term = hasse_derive(static_cast<unsigned>(k), inner);
      if ((n + k) % 2 == 0) term = term.scaled(-Scalar::one(g.p));
      out += term;
    }
    return out;
  }
};

}  // namespace

DiffPoly pva_product(const LieAlgebraSpec& g, const Scalar& level, const DiffPoly& a, long long n,
                     const DiffPoly& b) {
  if (n < 0) throw error(errc::usage, "pva_product: n must be nonnegative");
  if (level.characteristic() != g.p)
    throw error(errc::characteristic_mismatch, "CharacteristicMismatch: level vs algebra");
  int trunc = -1;
  if (a.truncation() >= 0 && b.truncation() >= 0)
    trunc = std::max(a.truncation(), b.truncation());
  PvaCtx ctx{g, level, trunc};
  DiffPoly out = ctx.zero();
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out += ctx.mono(ma, n, mb).scaled(ca * cb);
  return out;
}

}  // namespace mva
