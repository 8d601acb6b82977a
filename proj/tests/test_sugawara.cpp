#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mva/sugawara.hpp"

using namespace mva;

namespace {
const int E = 0, H = 1, F = 2;  // sl_2 basis order
}

TEST_CASE("sl_2 Casimir vector: exact straightened form") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  VState s = casimir_vector(g, g.critical_level());
  // e_{-1} f_{-1} + (1/4) h_{-1}^2 - (1/2) h_{-2}
  REQUIRE(s.terms.size() == 3);
  Pbw ef, hh, h2;
  ef.modes = {mode_key(E, 1), mode_key(F, 1)};
  hh.modes = {mode_key(H, 1), mode_key(H, 1)};
  h2.modes = {mode_key(H, 2)};
  CHECK(s.terms.at(ef).rational_value() == 1);
  CHECK(s.terms.at(hh).rational_value() == Rat(1, 4));
  CHECK(s.terms.at(h2).rational_value() == Rat(-1, 2));
}

TEST_CASE("Casimir centrality happens exactly at the critical level") {
  for (std::uint32_t p : {0u, 5u, 7u}) {
    LieAlgebraSpec g = build_classical(Family::sl, 2, p);
    VState s = casimir_vector(g, g.critical_level());
    Vacuum crit(g, g.critical_level());
    CHECK(crit.is_central(s));
    Vacuum zero(g, Scalar::of_int(0, p));
    VState s0 = casimir_vector(g, Scalar::of_int(0, p));
    CHECK_FALSE(zero.is_central(s0));
  }
}

TEST_CASE("Casimir symbol equals the quadratic invariant") {
  for (auto [fam, n] : {std::pair<Family, int>{Family::sl, 2}, {Family::sp, 4}}) {
    LieAlgebraSpec g = build_classical(fam, n, 0);
    VState s = casimir_vector(g, g.critical_level());
    CHECK(symbol(s) == build_invariant_P(g, 1));
  }
  // so uses kappa = Tr/2, so the dual basis doubles: symbol = 2 P_1
  LieAlgebraSpec so5 = build_classical(Family::so, 5, 0);
  VState s = casimir_vector(so5, so5.critical_level());
  CHECK(symbol(s) == build_invariant_P(so5, 1).scaled(Scalar::of_int(2, 0)));
}

TEST_CASE("so_5 and sp_4 Casimir vectors are central at the critical level") {
  for (auto [fam, n] : {std::pair<Family, int>{Family::sp, 4}, {Family::so, 5}, {Family::so, 4}}) {
    LieAlgebraSpec g = build_classical(fam, n, 0);
    Vacuum vac(g, g.critical_level());
    CHECK(vac.is_central(casimir_vector(g, g.critical_level())));
  }
}

TEST_CASE("column determinant for gl_1 and gl_2") {
  // N = 1: S_1 = E_{11,-1}|0>, central at every level
  LieAlgebraSpec g1 = build_classical(Family::gl, 1, 0);
  for (long long k : {-1l, 0l, 2l}) {
    auto vs = molev_cdet(1, 0, Scalar::of_int(k, 0));
    REQUIRE(vs.size() == 1);
    Vacuum vac(g1, Scalar::of_int(k, 0));
    CHECK(vs[0] == vac.gen(0, 1));
    CHECK(vac.is_central(vs[0]));
  }

  // N = 2 at the critical level -2
  LieAlgebraSpec g2 = build_classical(Family::gl, 2, 0);
  Scalar crit = Scalar::of_int(-2, 0);
  auto vs = molev_cdet(2, 0, crit);
  REQUIRE(vs.size() == 2);
  const int E11 = 0, E12 = 1, E21 = 2, E22 = 3;  // row-major order
  // S_1 = (E11 + E22)[-1]|0>
  Pbw m11, m22;
  m11.modes = {mode_key(E11, 1)};
  m22.modes = {mode_key(E22, 1)};
  CHECK(vs[0].terms.size() == 2);
  CHECK(vs[0].terms.at(m11).rational_value() == 1);
  CHECK(vs[0].terms.at(m22).rational_value() == 1);
  // S_2 = E11[-1]E22[-1] - E21[-1]E12[-1] + E22[-2]; straightening the
  // middle word gives -E12[-1]E21[-1] + [E12,E21]_{-2}-corrections
  Vacuum vac(g2, crit);
  VState expect = vac.zero();
  {
    VState t1 = vac.apply_mode(E11, -1, vac.gen(E22, 1));
    VState t2 = vac.apply_mode(E21, -1, vac.gen(E12, 1));
    VState t3 = vac.gen(E22, 2);
    expect = state_add(state_sub(t1, t2), t3);
  }
  CHECK(vs[1] == expect);

  CHECK(vac.is_central(vs[0]));
  CHECK(vac.is_central(vs[1]));
  // away from criticality S_2 fails
  Vacuum zero(g2, Scalar::of_int(0, 0));
  auto vs0 = molev_cdet(2, 0, Scalar::of_int(0, 0));
  CHECK(zero.is_central(vs0[0]));  // the trace current is always central
  CHECK_FALSE(zero.is_central(vs0[1]));
}

TEST_CASE("cdet vectors central for gl_2 mod 5 and 7, and gl_3 mod 7") {
  for (std::uint32_t p : {5u, 7u}) {
    LieAlgebraSpec g = build_classical(Family::gl, 2, p);
    Vacuum vac(g, g.critical_level());
    for (const VState& s : molev_cdet(2, p, g.critical_level())) CHECK(vac.is_central(s));
  }
  LieAlgebraSpec g3 = build_classical(Family::gl, 3, 7);
  Vacuum vac(g3, g3.critical_level());
  auto vs = molev_cdet(3, 7, g3.critical_level());
  REQUIRE(vs.size() == 3);
  for (const VState& s : vs) CHECK(vac.is_central(s));
  CHECK_THROWS_AS(molev_cdet(3, 3, Scalar::of_int(-3, 3)), error);
}

TEST_CASE("build_family + verify_family end to end") {
  // gl_2 cdet over Q and reduced mod 5
  LieAlgebraSpec g0 = build_classical(Family::gl, 2, 0);
  SSFamily fam0 = build_family(g0, Construction::cdet);
  CheckList cl0 = verify_family(g0, fam0, 4);
  for (const auto& c : cl0.checks) {
    INFO("char0 " << c.name << " " << c.witness);
    CHECK(c.pass);
  }
  CHECK(fam0.normalization[0].is_one());
  CHECK(fam0.normalization[1].is_one());

  LieAlgebraSpec g5 = build_classical(Family::gl, 2, 5);
  SSFamily fam5 = reduce_family(fam0, g5);
  CHECK(fam5.char0_preimage.size() == 2);
  CheckList cl5 = verify_family(g5, fam5, 4);
  for (const auto& c : cl5.checks) {
    INFO("mod5 " << c.name << " " << c.witness);
    CHECK(c.pass);
  }

  // sl_2 casimir (coefficients in Z[1/4]) reduces mod 5
  LieAlgebraSpec s0 = build_classical(Family::sl, 2, 0);
  SSFamily sfam = build_family(s0, Construction::casimir);
  LieAlgebraSpec s5 = build_classical(Family::sl, 2, 5);
  SSFamily sfam5 = reduce_family(sfam, s5);
  CheckList scl = verify_family(s5, sfam5, 4);
  for (const auto& c : scl.checks) CHECK(c.pass);
}

TEST_CASE("reduction rejects denominators divisible by p with a witness") {
  LieAlgebraSpec g0 = build_classical(Family::sl, 2, 0);
  SSFamily fam = build_family(g0, Construction::casimir);
  // plant a coefficient with denominator 5
  Pbw bad;
  bad.modes = {mode_key(E, 2)};
  fam.vectors[0].add_term(bad, Scalar::of_rat(Rat(1, 5)));
  LieAlgebraSpec g5 = build_classical(Family::sl, 2, 5);
  try {
    reduce_family(fam, g5);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::denominator_divisible_by_p);
    CHECK(std::string(e.what()).find("e[1,2]{-2}") != std::string::npos);
  }
}

TEST_CASE("derived vectors stay central and match the P series") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  SSFamily fam0 = build_family(build_classical(Family::sl, 2, 0), Construction::casimir);
  SSFamily fam = reduce_family(fam0, g);
  Vacuum vac(g, g.critical_level(), 40);
  for (int j = 1; j <= 5; ++j) {
    VState sij = derived_vector(vac, fam, 1, j);
    CHECK(sij.max_weight() == 1 + j);
    CHECK(vac.is_central(sij));
    CHECK(symbol(sij) == P_series(g, 1, j));
  }
  // products of central vectors remain central
  VState s1 = derived_vector(vac, fam, 1, 1);
  VState s2 = derived_vector(vac, fam, 1, 2);
  CHECK(vac.is_central(vac.nth_product(s1, -1, s2)));
  CHECK(vac.is_central(vac.nth_product(s1, -1, vac.pcentre_state(H, 1))));
}

TEST_CASE("predicted centre dimensions") {
  // sl_2, p = 5: S-generators of weight 2,3,4,5 and three p-centre
  // generators of weight 5
  std::vector<long long> sl2 = predicted_centre_dimensions({2}, 3, 5, 5);
  CHECK(sl2 == std::vector<long long>{1, 0, 1, 1, 2, 5});
  // no weight-1 invariants for a simple algebra
  CHECK(predicted_centre_dimensions({2}, 3, 5, 1) == std::vector<long long>{1, 0});
  // gl_2: S-generator weights 1,2,2,3,3,...
  std::vector<long long> gl2 = predicted_centre_dimensions({1, 2}, 4, 5, 3);
  CHECK(gl2 == std::vector<long long>{1, 1, 3, 5});
}

TEST_CASE("cdet requires gl") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  CHECK_THROWS_AS(build_family(g, Construction::cdet), error);
}
