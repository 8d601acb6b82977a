#include "mva/sugawara.hpp"

#include <algorithm>

namespace mva {

Construction construction_from_string(const std::string& s) {
  if (s == "casimir") return Construction::casimir;
  if (s == "cdet") return Construction::cdet;
  throw error(errc::usage, "Usage: unknown construction " + s);
}

const char* construction_name(Construction c) {
  return c == Construction::casimir ? "casimir" : "cdet";
}

VState casimir_vector(const LieAlgebraSpec& g, const Scalar& level, int weight_cap) {
  auto duals = dual_basis(g);  // throws DegenerateForm when kappa is singular
  Vacuum vac(g, level, weight_cap);
  VState sum = vac.zero();
  for (int a = 0; a < g.dim; ++a) {
    VState inner = vac.zero();
    for (int b = 0; b < g.dim; ++b) {
      if (duals[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].is_zero()) continue;
      state_axpy(inner, vac.gen(b, 1), duals[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
    state_axpy(sum, vac.apply_mode(a, -1, inner), Scalar::one(g.p));
  }
  return state_scaled(sum, Scalar::of_int(2, g.p).inverse());
}

namespace {

struct CdetTerm {
  Int coeff;
  std::vector<ModeKey> word;  // E_{ij}[-d] factors in product order
  int taus = 0;
};

Scalar scalar_from_big(const Int& v, std::uint32_t p) {
  if (p == 0) return Scalar::of_rat(Rat(v));
  Int m = v % p;
  if (m < 0) m += p;
  return Scalar::residue(m.convert_to<std::uint64_t>(), p);
}

void permutations(int n, std::vector<int>& cur, std::vector<bool>& used, int& sign,
                  const std::function<void(const std::vector<int>&, int)>& fn) {
  if (static_cast<int>(cur.size()) == n) {
    fn(cur, sign);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (used[static_cast<std::size_t>(v)]) continue;
    int inversions = 0;
    for (int u : cur)
      if (u > v) ++inversions;
    used[static_cast<std::size_t>(v)] = true;
    cur.push_back(v);
    if (inversions % 2) sign = -sign;
    permutations(n, cur, used, sign, fn);
    if (inversions % 2) sign = -sign;
    cur.pop_back();
    used[static_cast<std::size_t>(v)] = false;
  }
}

}  // namespace

std::vector<VState> molev_cdet(int N, std::uint32_t characteristic, const Scalar& level,
                               int weight_cap) {
  if (characteristic != 0 && static_cast<int>(characteristic) <= N)
    throw error(errc::bad_characteristic, "BadCharacteristic: cdet needs p > N or p = 0");
  LieAlgebraSpec gl = build_classical(Family::gl, N, characteristic);
  Vacuum vac(gl, level, weight_cap);

  // accumulate terms of cdet(tau I + E[-1]) by residual tau power
  std::vector<std::vector<CdetTerm>> by_taus(static_cast<std::size_t>(N) + 1);
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(N), false);
  int sign = 1;
  permutations(N, cur, used, sign, [&](const std::vector<int>& sigma, int sgn) {
    std::vector<CdetTerm> terms;
    terms.push_back({Int(sgn), {}, 0});
    for (int col = 0; col < N; ++col) {
      const int row = sigma[static_cast<std::size_t>(col)];
      std::vector<CdetTerm> next;
      for (const CdetTerm& t : terms) {
        if (row == col) {
          // diagonal factor tau + E_cc[-1]: tau branch
          CdetTerm tt = t;
          ++tt.taus;
          next.push_back(std::move(tt));
        }
        // E_{row,col}[-1] branch, pushed through tau^t.taus:
        // tau^t E[-1] = sum_u t!/(t-u)! E[-1-u] tau^{t-u}
        Int falling = 1;
        for (int u = 0; u <= t.taus; ++u) {
          if (u > 0) falling *= t.taus - u + 1;
          CdetTerm tt;
          tt.coeff = t.coeff * falling;
          tt.word = t.word;
          tt.word.push_back(mode_key(row * N + col, 1 + u));
          tt.taus = t.taus - u;
          next.push_back(std::move(tt));
        }
      }
      terms.swap(next);
    }
    for (CdetTerm& t : terms) by_taus[static_cast<std::size_t>(t.taus)].push_back(std::move(t));
  });

  std::vector<VState> out;
  for (int i = 1; i <= N; ++i) {
    VState s = vac.zero();
    for (const CdetTerm& t : by_taus[static_cast<std::size_t>(N - i)]) {
      VState w = vac.vac();
      for (auto it = t.word.rbegin(); it != t.word.rend(); ++it)
        w = vac.apply_mode(mode_index(*it), -mode_depth(*it), w);
      state_axpy(s, w, scalar_from_big(t.coeff, characteristic));
    }
    out.push_back(std::move(s));
  }
  return out;
}

SSFamily build_family(const LieAlgebraSpec& g, Construction c, int weight_cap) {
  SSFamily fam;
  fam.family = g.family;
  fam.N = g.N;
  fam.p = g.p;
  fam.level = g.critical_level();
  fam.construction = c;
  switch (c) {
    case Construction::casimir:
      fam.degrees = {2};
      fam.vectors.push_back(casimir_vector(g, fam.level, weight_cap));
      break;
    case Construction::cdet: {
      if (g.family != Family::gl)
        throw error(errc::unsupported_family, "UnsupportedFamily: cdet is a gl_N construction");
      for (int i = 1; i <= g.N; ++i) fam.degrees.push_back(i);
      fam.vectors = molev_cdet(g.N, g.p, fam.level, weight_cap);
      break;
    }
  }
  return fam;
}

VState derived_vector(const Vacuum& vac, const SSFamily& fam, int i, int j) {
  if (i < 1 || i > static_cast<int>(fam.vectors.size()))
    throw error(errc::usage, "derived_vector: index out of range");
  return vac.translate(static_cast<unsigned>(j - 1), fam.vectors[static_cast<std::size_t>(i - 1)]);
}

SSFamily reduce_family(const SSFamily& fam, const LieAlgebraSpec& g_mod_p) {
  if (fam.p != 0) throw error(errc::usage, "reduce_family: source must be characteristic 0");
  const std::uint32_t p = g_mod_p.p;
  if (p == 0) throw error(errc::bad_characteristic, "BadCharacteristic: target needs p > 0");
  SSFamily out;
  out.family = fam.family;
  out.N = fam.N;
  out.p = p;
  out.level = g_mod_p.critical_level();
  out.construction = fam.construction;
  out.degrees = fam.degrees;
  out.char0_preimage = fam.vectors;
  for (const VState& v : fam.vectors) {
    VState w;
    w.level = out.level;
    for (const auto& [m, c] : v.terms) {
      try {
        w.add_term(m, reduce_rational(c.rational_value(), p));
      } catch (const error& e) {
        if (e.code() != errc::denominator_divisible_by_p) throw;
        std::string mono;
        for (ModeKey k : m.modes)
          mono += g_mod_p.basis_names[static_cast<std::size_t>(mode_index(k))] + "{-" +
                  std::to_string(mode_depth(k)) + "}";
        throw error(errc::denominator_divisible_by_p,
                    std::string(e.what()) + " at monomial " + mono);
      }
    }
    out.vectors.push_back(std::move(w));
  }
  return out;
}

CheckList verify_family(const LieAlgebraSpec& g, SSFamily& fam, int depth_cap) {
  CheckList out;
  Vacuum vac(g, fam.level, 8 + 2 * (depth_cap + *std::max_element(fam.degrees.begin(),
                                                                  fam.degrees.end())));
  fam.normalization.assign(fam.vectors.size(), Scalar::zero(g.p));
  for (int i = 1; i <= static_cast<int>(fam.vectors.size()); ++i) {
    for (int j = 1; j <= depth_cap; ++j) {
      VState sij = derived_vector(vac, fam, i, j);
      std::string name = "S_" + std::to_string(i) + ",-" + std::to_string(j);
      auto witness = vac.central_witness(sij);
      bool central = witness.first < 0;
      out.checks.push_back({name + " central", central,
                            central ? ""
                                    : g.basis_names[static_cast<std::size_t>(witness.first)] +
                                          " t^" + std::to_string(witness.second) +
                                          " does not annihilate"});
      // symbol must be a fixed scalar multiple of P_{i,-j}
      DiffPoly sym = symbol(sij);
      DiffPoly pij = P_series(g, i, j);
      bool ok = false;
      Scalar ratio = Scalar::zero(g.p);
      if (!pij.is_zero() && !sym.is_zero()) {
        const auto& [lead, lc] = *pij.terms().begin();
        Scalar sc = sym.coefficient(lead);
        if (!sc.is_zero()) {
          ratio = sc / lc;
          ok = (sym - pij.scaled(ratio)).is_zero();
        }
      }
      if (ok && j == 1) fam.normalization[static_cast<std::size_t>(i - 1)] = ratio;
      if (ok && j > 1) ok = ratio == fam.normalization[static_cast<std::size_t>(i - 1)];
      if (ok && g.family != Family::so) ok = ratio.is_one();
      out.checks.push_back({name + " symbol = P", ok,
                            ok ? "" : "symbol is not the expected multiple of P_{i,-j}"});
    }
  }
  return out;
}

std::vector<long long> predicted_centre_dimensions(const std::vector<int>& degrees, int dim_g,
                                                   std::uint32_t p, int weight_cap) {
  std::vector<long long> series(static_cast<std::size_t>(weight_cap) + 1, 0);
  series[0] = 1;
  auto mul_factor = [&](int w, unsigned bound) {
    // multiply by 1 + q^w + ... (exponents < bound; 0 = unbounded)
    std::vector<long long> next(series.size(), 0);
    for (std::size_t t = 0; t < series.size(); ++t) {
      if (!series[t]) continue;
      for (unsigned e = 0; bound == 0 || e < bound; ++e) {
        std::size_t idx = t + static_cast<std::size_t>(e) * static_cast<std::size_t>(w);
        if (idx >= next.size()) break;
        next[idx] += series[t];
      }
    }
    series.swap(next);
  };
  for (int d : degrees)
    for (int j = 1; d + j - 1 <= weight_cap; ++j) mul_factor(d + j - 1, p);
  for (int j = 1; static_cast<int>(p) * j <= weight_cap; ++j)
    for (int t = 0; t < dim_g; ++t) mul_factor(static_cast<int>(p) * j, 0);
  return series;
}

}  // namespace mva
