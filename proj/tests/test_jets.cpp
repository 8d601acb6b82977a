#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mva/jets.hpp"
#include "mva/rng.hpp"

using namespace mva;

namespace {

const int E = 0, H = 1, F = 2;  // sl_2 basis order

DiffPoly var(int i, int j, std::uint32_t p, int trunc = -1) {
  return DiffPoly::variable(i, j, p, trunc);
}

DiffPoly random_poly(const LieAlgebraSpec& g, SplitMix64& rng, int max_terms, int max_deg,
                     int max_depth) {
  DiffPoly f(g.p, -1);
  int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
  for (int t = 0; t < terms; ++t) {
    JetMonomial mono;
    int deg = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg)));
    std::vector<JetVar> vs;
    for (int d = 0; d < deg; ++d)
      vs.push_back(jet_var(static_cast<int>(rng.below(g.dim)),
                           1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_depth)))));
    std::sort(vs.begin(), vs.end());
    for (JetVar v : vs) {
      if (!mono.empty() && mono.back().first == v)
        ++mono.back().second;
      else
        mono.emplace_back(v, 1);
    }
    long long c = 1 + static_cast<long long>(rng.below(g.p ? g.p - 1 : 5));
    f.add_term(mono, Scalar::of_int(c, g.p));
  }
  return f;
}

}  // namespace

TEST_CASE("hasse derivation on variables and products") {
  for (std::uint32_t p : {0u, 5u}) {
    // d^(1) x_{-1} = x_{-2}
    DiffPoly x1 = var(E, 1, p);
    CHECK(hasse_derive(1, x1) == var(E, 2, p));
    // Leibniz: d^(1)(x_{-1} y_{-1}) = x_{-2} y_{-1} + x_{-1} y_{-2}
    DiffPoly prod = var(E, 1, p) * var(F, 1, p);
    DiffPoly expect = var(E, 2, p) * var(F, 1, p) + var(E, 1, p) * var(F, 2, p);
    CHECK(hasse_derive(1, prod) == expect);
  }
}

TEST_CASE("hasse composition rule with binomial coefficient") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  SplitMix64 rng(3);
  for (int t = 0; t < 30; ++t) {
    DiffPoly f = random_poly(g, rng, 3, 3, 2);
    unsigned i = static_cast<unsigned>(rng.below(4));
    unsigned j = static_cast<unsigned>(rng.below(4));
    DiffPoly lhs = hasse_derive(i, hasse_derive(j, f));
    DiffPoly rhs = hasse_derive(i + j, f).scaled(
        binomial_scalar(static_cast<long long>(i + j), i, 5));
    CHECK(lhs == rhs);
  }
  // char 5: d^(5) d^(1) = C(6,1) d^(6) = d^(6)
  DiffPoly f = var(E, 1, 5) * var(H, 1, 5);
  CHECK(hasse_derive(5, hasse_derive(1, f)) == hasse_derive(6, f));
}

TEST_CASE("p-adic factorization of divided powers") {
  // d^(i) = prod_k (d^(p^k))^{i_k} / i_k!  for the base-p digits i_k; the
  // factorials are forced by (d^(q))^m = m! d^(mq) for q a p-th power
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  SplitMix64 rng(4);
  for (unsigned i = 1; i < 25; ++i) {
    DiffPoly f = random_poly(g, rng, 2, 2, 2);
    DiffPoly lhs = hasse_derive(i, f);
    DiffPoly rhs = f;
    Scalar fact = Scalar::one(5);
    unsigned i0 = i % 5, i1 = i / 5;
    for (unsigned t = 0; t < i0; ++t) {
      rhs = hasse_derive(1, rhs);
      fact *= Scalar::of_int(t + 1, 5);
    }
    for (unsigned t = 0; t < i1; ++t) {
      rhs = hasse_derive(5, rhs);
      fact *= Scalar::of_int(t + 1, 5);
    }
    CHECK(lhs == rhs.scaled(fact.inverse()));
  }
}

TEST_CASE("invariant generator for sl_2 and gl_1") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  // P_1 = (1/4) h^2 + e f
  DiffPoly P = build_invariant_P(g, 1);
  JetMonomial hh = {{jet_var(H, 1), 2}};
  JetMonomial ef = {{jet_var(E, 1), 1}, {jet_var(F, 1), 1}};
  CHECK(P.coefficient(hh).rational_value() == Rat(1, 4));
  CHECK(P.coefficient(ef).rational_value() == 1);
  CHECK(P.term_count() == 2);

  LieAlgebraSpec g1 = build_classical(Family::gl, 1, 0);
  DiffPoly P1 = build_invariant_P(g1, 1);
  JetMonomial x = {{jet_var(0, 1), 1}};
  CHECK(P1.coefficient(x).rational_value() == 1);
  CHECK(P1.term_count() == 1);
}

TEST_CASE("P series: the sl_2 quadratic at depth 2") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  // P_{1,-2} = (1/2) h_{-1} h_{-2} + e_{-2} f_{-1} + e_{-1} f_{-2}
  DiffPoly P2 = P_series(g, 1, 2);
  CHECK(P_series(g, 1, 1) == build_invariant_P(g, 1));
  JetMonomial h12 = {{jet_var(H, 1), 1}, {jet_var(H, 2), 1}};
  JetMonomial e2f1 = {{jet_var(F, 1), 1}, {jet_var(E, 2), 1}};
  JetMonomial e1f2 = {{jet_var(E, 1), 1}, {jet_var(F, 2), 1}};
  CHECK(P2.coefficient(h12).rational_value() == Rat(1, 2));
  CHECK(P2.coefficient(e2f1).rational_value() == 1);
  CHECK(P2.coefficient(e1f2).rational_value() == 1);
  CHECK(P2.term_count() == 3);
}

TEST_CASE("coadjoint derivation on variables") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  // (e t^0) . f_{-1} = h_{-1}
  CHECK(coadjoint_derivation(g, E, 0, var(F, 1, 0)) == var(H, 1, 0));
  // exponent truncation: (x t^m) . y_{-j} = 0 for m >= j
  CHECK(coadjoint_derivation(g, E, 1, var(F, 1, 0)).is_zero());
  CHECK(coadjoint_derivation(g, E, 3, var(F, 2, 0)).is_zero());
  // (e t^1) . f_{-2} = h_{-1}
  CHECK(coadjoint_derivation(g, E, 1, var(F, 2, 0)) == var(H, 1, 0));
}

TEST_CASE("ladder relation [D_{x,m}, d^(1)] = m D_{x,m-1}") {
  LieAlgebraSpec g = build_classical(Family::sl, 3, 7);
  SplitMix64 rng(9);
  for (int t = 0; t < 25; ++t) {
    DiffPoly f = random_poly(g, rng, 2, 2, 3);
    int x = static_cast<int>(rng.below(g.dim));
    int m = 1 + static_cast<int>(rng.below(3));
    DiffPoly lhs = coadjoint_derivation(g, x, m, hasse_derive(1, f)) -
                   hasse_derive(1, coadjoint_derivation(g, x, m, f));
    DiffPoly rhs = coadjoint_derivation(g, x, m - 1, f).scaled(Scalar::of_int(m, 7));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("P_{i,-j} lie invariance for several algebras") {
  for (auto [fam, n, p] : {std::tuple<Family, int, std::uint32_t>{Family::sl, 2, 5},
                           {Family::sl, 3, 7},
                           {Family::sp, 4, 7},
                           {Family::so, 5, 7},
                           {Family::so, 4, 7},
                           {Family::gl, 2, 5}}) {
    LieAlgebraSpec g = build_classical(fam, n, p);
    std::vector<int> degs = invariant_degrees(fam, n);
    for (int i = 1; i <= static_cast<int>(degs.size()); ++i)
      for (int j = 1; j <= 2; ++j) {
        DiffPoly pij = P_series(g, i, j);
        for (int x = 0; x < g.dim; ++x)
          for (int m = 0; m <= 2; ++m) {
            INFO(family_name(fam) << n << " P_" << i << ",-" << j << " x=" << x << " m=" << m);
            CHECK(coadjoint_derivation(g, x, m, pij).is_zero());
          }
      }
  }
}

TEST_CASE("one-parameter action on sl_2: explicit exponential") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  // root vector e (index 0 in root_vectors): f -> f + s h - s^2 e
  int root_e = -1;
  for (std::size_t r = 0; r < g.root_vectors.size(); ++r)
    if (g.root_vectors[r].basis_index == E) root_e = static_cast<int>(r);
  REQUIRE(root_e >= 0);
  for (std::uint64_t sv : {0ull, 1ull, 2ull, 3ull, 4ull}) {
    Scalar s = Scalar::residue(sv, 5);
    DiffPoly img = one_param_action(g, root_e, 0, s, var(F, 1, 5));
    DiffPoly expect = var(F, 1, 5) + var(H, 1, 5).scaled(s) - var(E, 1, 5).scaled(s * s);
    CHECK(img == expect);
  }
  // s = 0 fixes everything
  LieAlgebraSpec g3 = build_classical(Family::sl, 3, 7);
  SplitMix64 rng(12);
  DiffPoly f = random_poly(g3, rng, 3, 3, 2);
  CHECK(one_param_action(g3, 0, 1, Scalar::zero(7), f) == f);
}

TEST_CASE("P_{i,-j} fixed by one-parameter subgroups over F_p and formally") {
  for (auto [fam, n, p] : {std::tuple<Family, int, std::uint32_t>{Family::sl, 2, 5},
                           {Family::sl, 3, 7}}) {
    LieAlgebraSpec g = build_classical(fam, n, p);
    std::vector<int> degs = invariant_degrees(fam, n);
    for (int i = 1; i <= static_cast<int>(degs.size()); ++i)
      for (int j = 1; j <= 3; ++j) {
        DiffPoly pij = P_series(g, i, j);
        for (std::size_t rt = 0; rt < g.root_vectors.size(); ++rt)
          for (int m = 0; m <= 3; ++m) {
            for (std::uint64_t s = 0; s < p; ++s) {
              INFO(family_name(fam) << n << " P_" << i << ",-" << j << " root " << rt << " m=" << m
                                    << " s=" << s);
              CHECK(one_param_action(g, static_cast<int>(rt), m, Scalar::residue(s, p), pij) ==
                    pij);
            }
            auto powers = one_param_action_formal(g, static_cast<int>(rt), m, pij);
            for (std::size_t t = 1; t < powers.size(); ++t) CHECK(powers[t].is_zero());
          }
      }
  }
}

TEST_CASE("group action is a ring homomorphism") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 7);
  SplitMix64 rng(21);
  for (int t = 0; t < 20; ++t) {
    DiffPoly a = random_poly(g, rng, 2, 2, 3);
    DiffPoly b = random_poly(g, rng, 2, 2, 3);
    int rt = static_cast<int>(rng.below(g.root_vectors.size()));
    int m = static_cast<int>(rng.below(3));
    Scalar s = Scalar::residue(rng.below(7), 7);
    CHECK(one_param_action(g, rt, m, s, a * b) ==
          one_param_action(g, rt, m, s, a) * one_param_action(g, rt, m, s, b));
  }
}

TEST_CASE("p-th powers are killed by every coadjoint derivation") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  SplitMix64 rng(31);
  for (int t = 0; t < 10; ++t) {
    DiffPoly f = random_poly(g, rng, 2, 2, 2);
    DiffPoly f5 = f * f;
    f5 = f5 * f5;
    f5 = f5 * f;  // f^5
    for (int x = 0; x < g.dim; ++x)
      for (int m = 0; m <= 2; ++m) CHECK(coadjoint_derivation(g, x, m, f5).is_zero());
  }
}

TEST_CASE("rewrite-of-derivatives residual") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 7);
  // m < s: the partial itself vanishes
  SplitMix64 rng(8);
  for (int t = 0; t < 50; ++t) {
    DiffPoly P = random_poly(g, rng, 3, 3, 1);  // weight-1 variables only
    for (int s = 0; s <= 3; ++s)
      for (int m = 0; m <= 3; ++m) {
        int i = static_cast<int>(rng.below(g.dim));
        INFO("trial " << t << " i=" << i << " s=" << s << " m=" << m);
        CHECK(rewriteders_residual(g, P, i, s, m).is_zero());
      }
  }
  // the pinned instance P = x y
  DiffPoly P = var(E, 1, 7) * var(F, 1, 7);
  CHECK(rewriteders_residual(g, P, E, 1, 1).is_zero());
  CHECK(hasse_derive(1, P).partial(jet_var(E, 3)).is_zero());  // m < s case explicitly
}

TEST_CASE("jet ideal generators") {
  std::uint32_t p = 5;
  // gens = {x_{-1}}, m = 2 -> {x_{-1}, x_{-2}, x_{-3}}
  JetIdeal id1 = jet_ideal({var(E, 1, p)}, 2);
  REQUIRE(id1.generators.size() == 3);
  CHECK(id1.generators[0] == var(E, 1, p));
  CHECK(id1.generators[1] == var(E, 2, p));
  CHECK(id1.generators[2] == var(E, 3, p));
  // gens = {x^2}, m = 1 -> {x^2, 2 x_{-1} x_{-2}}
  DiffPoly x2 = var(E, 1, p) * var(E, 1, p);
  JetIdeal id2 = jet_ideal({x2}, 1);
  REQUIRE(id2.generators.size() == 2);
  CHECK(id2.generators[1] == (var(E, 1, p) * var(E, 2, p)).scaled(Scalar::of_int(2, p)));
  CHECK(jet_ideal({}, 3).generators.empty());
}

TEST_CASE("jacobian rank at regular and singular points") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  // m=1, x_0-part the regular nilpotent e: variable values kappa(., e)
  std::vector<JetVar> order = jet_var_order(g, 1);
  std::vector<Scalar> point;
  for (JetVar v : order) {
    bool is_f_slot = jet_var_index(v) == F && jet_var_depth(v) == 1;
    point.push_back(is_f_slot ? Scalar::one(5) : Scalar::zero(5));
  }
  JacobianResult jr = jacobian_rank(g, 1, point);
  CHECK(jr.rank == 2);
  CHECK(jr.full_rank == 2);
  CHECK(jr.block_structure_ok);

  std::vector<Scalar> zero(order.size(), Scalar::zero(5));
  CHECK(jacobian_rank(g, 1, zero).rank == 0);
  CHECK(jacobian_rank(g, 0, std::vector<Scalar>(3, Scalar::zero(5))).rank == 0);
}

TEST_CASE("jacobian full rank at sampled regular points of sl_3") {
  LieAlgebraSpec g = build_classical(Family::sl, 3, 7);
  SplitMix64 rng(77);
  for (int t = 0; t < 5; ++t) {
    std::vector<Scalar> point = sample_regular_point(g, 1, rng);
    JacobianResult jr = jacobian_rank(g, 1, point);
    CHECK(jr.rank == 4);
    CHECK(jr.full_rank == 4);
    CHECK(jr.block_structure_ok);
  }
}

TEST_CASE("invariant ring dimensions for sl_2") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  // m = 0: powers of P_1 below degree 5
  std::vector<int> lie0 = invariant_ring_dimensions(g, 0, 4, InvariantMode::lie, 1);
  CHECK(lie0 == std::vector<int>{1, 0, 1, 0, 1});
  // m = 0 further out: p-th powers enter at degree 5
  std::vector<int> lie0x = invariant_ring_dimensions(g, 0, 6, InvariantMode::lie, 2);
  CHECK(lie0x == std::vector<int>{1, 0, 1, 0, 1, 3, 1});
  std::vector<int> grp0 = invariant_ring_dimensions(g, 0, 4, InvariantMode::group, 1);
  CHECK(grp0 == lie0);
  // m = 1: monomials in P_{1,-1}, P_{1,-2}
  std::vector<int> lie1 = invariant_ring_dimensions(g, 1, 4, InvariantMode::lie, 2);
  CHECK(lie1 == std::vector<int>{1, 0, 2, 0, 3});
  std::vector<int> grp1 = invariant_ring_dimensions(g, 1, 4, InvariantMode::group, 2);
  CHECK(grp1 == lie1);
}

TEST_CASE("restricted quotient matches the Veldkamp pattern") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  std::vector<int> quot = invariant_ring_dimensions(g, 0, 6, InvariantMode::pth_powers_quotient, 1);
  // restricted powers of P_1: 1, P, P^2, P^3 at degrees 0,2,4,6
  CHECK(quot == std::vector<int>{1, 0, 1, 0, 1, 0, 1});
  std::vector<long long> restricted = monomial_counts_by_degree({2}, 6, 5);
  for (int d = 0; d <= 6; ++d)
    CHECK(quot[static_cast<std::size_t>(d)] == restricted[static_cast<std::size_t>(d)]);
}

TEST_CASE("pva products on generators") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  Scalar k = Scalar::of_int(-2, 0);
  // x (0) y = [x,y]_{-1}
  CHECK(pva_product(g, k, var(E, 1, 0), 0, var(F, 1, 0)) == var(H, 1, 0));
  // x (1) y = kappa(x,y) k
  DiffPoly c = pva_product(g, k, var(E, 1, 0), 1, var(F, 1, 0));
  CHECK(c == DiffPoly::constant(k));
  // beyond the depth everything dies
  CHECK(pva_product(g, k, var(E, 1, 0), 2, var(F, 1, 0)).is_zero());
  CHECK(pva_product(g, k, var(E, 1, 0), 3, var(H, 2, 0) * var(F, 1, 0)).is_zero());
}

TEST_CASE("pva axioms on random inputs") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  Scalar k = Scalar::of_int(-2, 5);
  SplitMix64 rng(55);
  auto rand_homog = [&](int deg) {
    DiffPoly f(g.p, -1);
    JetMonomial mono;
    std::vector<JetVar> vs;
    for (int d = 0; d < deg; ++d)
      vs.push_back(jet_var(static_cast<int>(rng.below(g.dim)), 1 + static_cast<int>(rng.below(2))));
    std::sort(vs.begin(), vs.end());
    for (JetVar v : vs) {
      if (!mono.empty() && mono.back().first == v)
        ++mono.back().second;
      else
        mono.emplace_back(v, 1);
    }
    f.add_term(mono, Scalar::of_int(1 + static_cast<long long>(rng.below(4)), g.p));
    return f;
  };
  for (int t = 0; t < 8; ++t) {
    DiffPoly a = rand_homog(1 + static_cast<int>(rng.below(2)));
    DiffPoly b = rand_homog(1 + static_cast<int>(rng.below(2)));
    DiffPoly c = rand_homog(1);

    // (i)  (d^(k) a)_(n) b = (-1)^k C(n,k) a_(n-k) b
    for (long long n = 0; n <= 3; ++n)
      for (unsigned kk = 1; kk <= 2; ++kk) {
        if (n < static_cast<long long>(kk)) continue;
        DiffPoly lhs = pva_product(g, k, hasse_derive(kk, a), n, b);
        Scalar coeff = binomial_scalar(n, kk, g.p);
        if (kk % 2) coeff = -coeff;
        CHECK(lhs == pva_product(g, k, a, n - kk, b).scaled(coeff));
      }

    // (ii) skew-symmetry: a_(n) b = sum_k (-1)^{n+k+1} d^(k) (b_(n+k) a)
    for (long long n = 0; n <= 2; ++n) {
      DiffPoly rhs(g.p, -1);
      for (long long kk = 0; kk <= 6; ++kk) {
        DiffPoly inner = pva_product(g, k, b, n + kk, a);
        if (inner.is_zero()) continue;
        DiffPoly term = hasse_derive(static_cast<unsigned>(kk), inner);
        if ((n + kk) % 2 == 0) term = term.scaled(-Scalar::one(g.p));
        rhs += term;
      }
      CHECK(pva_product(g, k, a, n, b) == rhs);
    }

    // (iii) commutator formula
    for (long long m = 0; m <= 2; ++m)
      for (long long n = 0; n <= 2; ++n) {
        DiffPoly lhs = pva_product(g, k, a, m, pva_product(g, k, b, n, c)) -
                       pva_product(g, k, b, n, pva_product(g, k, a, m, c));
        DiffPoly rhs(g.p, -1);
        for (long long j = 0; j <= m; ++j) {
          Scalar coeff = binomial_scalar(m, static_cast<unsigned>(j), g.p);
          if (coeff.is_zero()) continue;
          rhs += pva_product(g, k, pva_product(g, k, a, j, b), m + n - j, c).scaled(coeff);
        }
        CHECK(lhs == rhs);
      }

    // (iv) Leibniz
    for (long long n = 0; n <= 2; ++n) {
      DiffPoly lhs = pva_product(g, k, a, n, b * c);
      DiffPoly rhs = pva_product(g, k, a, n, b) * c + pva_product(g, k, a, n, c) * b;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("truncation overflow fails loudly") {
  DiffPoly x = var(E, 1, 5, 1);  // truncation m=1: depths 1..2
  CHECK_THROWS_AS(hasse_derive(2, x), error);
  CHECK(hasse_derive(1, x) == var(E, 2, 5, 1));
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  CHECK_THROWS_AS(P_series(g, 1, 3, 1), error);
}
