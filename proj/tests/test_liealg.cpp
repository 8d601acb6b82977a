#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mva/lie_algebra.hpp"

using namespace mva;

TEST_CASE("sl_2 over the rationals: basis order and trace form") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  CHECK(g.dim == 3);
  CHECK(g.rank == 1);
  CHECK(g.coxeter == 2);
  CHECK(g.dual_coxeter == 2);
  // order e, h, f
  CHECK(g.basis_names[0] == "e[1,2]");
  CHECK(g.basis_names[1] == "h[1]");
  CHECK(g.basis_names[2] == "f[2,1]");
  int e = 0, h = 1, f = 2;
  CHECK(g.kappa_at(e, f).rational_value() == 1);
  CHECK(g.kappa_at(h, h).rational_value() == 2);
  CHECK(g.kappa_at(e, e).rational_value() == 0);
  // [e,f] = h
  REQUIRE(g.bracket(e, f).size() == 1);
  CHECK(g.bracket(e, f)[0].first == h);
  CHECK(g.bracket(e, f)[0].second.rational_value() == 1);
  CHECK(g.critical_level().rational_value() == -2);
}

TEST_CASE("gl_1 has identically vanishing form") {
  LieAlgebraSpec g = build_classical(Family::gl, 1, 0);
  CHECK(g.dim == 1);
  CHECK(g.kappa_at(0, 0).is_zero());
  CHECK_THROWS_AS(dual_basis(g), error);
}

TEST_CASE("sl_2 mod 5: restricted powers") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  int e = 0, h = 1, f = 2;
  CHECK(g.restricted[static_cast<std::size_t>(e)].empty());  // e^[5] = 0
  CHECK(g.restricted[static_cast<std::size_t>(f)].empty());
  REQUIRE(g.restricted[static_cast<std::size_t>(h)].size() == 1);
  CHECK(g.restricted[static_cast<std::size_t>(h)][0].first == h);  // h^[5] = h
  CHECK(g.restricted[static_cast<std::size_t>(h)][0].second.is_one());
}

TEST_CASE("dual basis of sl_2 is (f, h/2, e)") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  auto duals = dual_basis(g);
  CHECK(duals[0][2].rational_value() == 1);  // dual of e is f
  CHECK(duals[0][0].is_zero());
  CHECK(duals[1][1].rational_value() == Rat(1, 2));
  CHECK(duals[2][0].rational_value() == 1);  // dual of f is e
}

TEST_CASE("dual basis defining property for sl_3 mod 7") {
  LieAlgebraSpec g = build_classical(Family::sl, 3, 7);
  auto duals = dual_basis(g);
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      Scalar v = Scalar::zero(7);
      for (int c = 0; c < g.dim; ++c)
        v += g.kappa_at(a, c) * duals[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
      CHECK(v == (a == b ? Scalar::one(7) : Scalar::zero(7)));
    }
}

TEST_CASE("validate passes on all shipped families") {
  for (auto [fam, n, p] : {std::tuple<Family, int, std::uint32_t>{Family::sl, 2, 5},
                           {Family::sl, 3, 7},
                           {Family::gl, 2, 5},
                           {Family::gl, 1, 5},
                           {Family::sp, 4, 7},
                           {Family::so, 4, 5},
                           {Family::so, 5, 7},
                           {Family::sl, 2, 0},
                           {Family::sp, 4, 0},
                           {Family::so, 5, 0}}) {
    LieAlgebraSpec g = build_classical(fam, n, p);
    CheckList cl = validate_spec(g);
    for (const auto& c : cl.checks) {
      INFO(family_name(fam) << "_" << n << " p=" << p << " check " << c.name << " witness "
                            << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("expected dimensions and Coxeter data") {
  CHECK(build_classical(Family::so, 4, 5).dim == 6);
  CHECK(build_classical(Family::so, 5, 7).dim == 10);
  CHECK(build_classical(Family::sp, 4, 7).dim == 10);
  CHECK(build_classical(Family::sp, 4, 7).rank == 2);
  CHECK(build_classical(Family::so, 5, 7).rank == 2);
  CHECK(build_classical(Family::gl, 3, 0).dim == 9);
  CHECK(build_classical(Family::sp, 4, 7).dual_coxeter == 3);
  CHECK(build_classical(Family::so, 5, 7).dual_coxeter == 3);
  CHECK(build_classical(Family::sp, 4, 7).coxeter == 4);
  CHECK(build_classical(Family::so, 5, 7).coxeter == 4);
}

TEST_CASE("corrupted structure constant fails Jacobi with a witness") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  g.bracket_table[0][1][0].second *= Scalar::of_int(2, 5);
  CheckList cl = validate_spec(g);
  CHECK_FALSE(cl.all_pass());
  bool structure_failed = false;
  for (const auto& c : cl.checks)
    if ((c.name == "jacobi" || c.name == "antisymmetry") && !c.pass) {
      structure_failed = true;
      CHECK_FALSE(c.witness.empty());
    }
  CHECK(structure_failed);
}

TEST_CASE("characteristic gate and size gate") {
  CHECK_THROWS_AS(build_classical(Family::sl, 2, 2), error);
  CHECK_THROWS_AS(build_classical(Family::sl, 3, 3), error);
  CHECK_THROWS_AS(build_classical(Family::sp, 4, 3), error);  // h = 4
  CHECK_THROWS_AS(build_classical(Family::sp, 5, 7), error);  // odd size
  CHECK_THROWS_AS(build_classical(Family::so, 2, 7), error);
  try {
    build_classical(Family::sl, 2, 2);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_characteristic);
  }
}

TEST_CASE("kappa Gram matrix invertible for sl_N mod p > N") {
  for (auto [n, p] : {std::pair<int, std::uint32_t>{2, 5}, {3, 5}, {4, 7}}) {
    LieAlgebraSpec g = build_classical(Family::sl, n, p);
    ScalarMatrix gram(g.dim, g.dim, p);
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) gram.at(i, j) = g.kappa_at(i, j);
    CHECK(scalar_rank(gram) == static_cast<std::size_t>(g.dim));
  }
}

TEST_CASE("root vectors are ad-nilpotent within the stated bound") {
  for (auto [fam, n, p] : {std::tuple<Family, int, std::uint32_t>{Family::sl, 3, 5},
                           {Family::sp, 4, 7},
                           {Family::so, 5, 7}}) {
    LieAlgebraSpec g = build_classical(fam, n, p);
    CHECK_FALSE(g.root_vectors.empty());
    for (const auto& rv : g.root_vectors) {
      CHECK(rv.nilpotency_order >= 2);
      CHECK(rv.nilpotency_order <= 2 * g.coxeter - 1);
      CHECK(rv.nilpotency_order < static_cast<int>(p));
    }
  }
}

TEST_CASE("spec document round-trips") {
  LieAlgebraSpec g = build_classical(Family::sp, 4, 7);
  std::string doc = serialize_spec(g);
  LieAlgebraSpec h = parse_spec(doc);
  CHECK(serialize_spec(h) == doc);
  CHECK(h.dim == g.dim);
  CHECK(h.kappa == g.kappa);
}

TEST_CASE("coadjoint stabilizer detects regular and singular points") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 7);
  // the functional kappa(e, -): values on (e, h, f)
  std::vector<Scalar> xi = {Scalar::zero(7), Scalar::zero(7), Scalar::one(7)};
  CHECK(coadjoint_stabilizer_dim(g, xi) == 1);  // regular nilpotent
  std::vector<Scalar> zero(3, Scalar::zero(7));
  CHECK(coadjoint_stabilizer_dim(g, zero) == 3);  // the origin is not regular
}
