#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mva/centre.hpp"
#include "mva/sugawara.hpp"

using namespace mva;

TEST_CASE("pbw enumeration sizes follow the graded dimension") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  // coefficients of prod (1-q^n)^{-3}
  CHECK(pbw_basis(g, 0).size() == 1);
  CHECK(pbw_basis(g, 1).size() == 3);
  CHECK(pbw_basis(g, 2).size() == 9);
  CHECK(pbw_basis(g, 3).size() == 22);
  CHECK(pbw_basis(g, 4).size() == 51);
  CHECK(pbw_basis(g, 5).size() == 108);
  for (const Pbw& m : pbw_basis(g, 4)) {
    CHECK(m.weight() == 4);
    CHECK(std::is_sorted(m.modes.begin(), m.modes.end()));
  }
}

TEST_CASE("sl_2 critical centre dimensions match the restricted-monomial count") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  std::vector<int> dims = centre_dimension(g, g.critical_level(), 5, 1);
  CHECK(dims == std::vector<int>{1, 0, 1, 1, 2, 5});
}

TEST_CASE("weight zero is the vacuum line for any level") {
  LieAlgebraSpec g = build_classical(Family::gl, 2, 5);
  for (long long k : {-2l, 0l, 3l}) {
    std::vector<int> dims = centre_dimension(g, Scalar::of_int(k, 5), 0, 1);
    CHECK(dims == std::vector<int>{1});
  }
}

TEST_CASE("non-critical level has strictly smaller centre in weights 2..4") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  std::vector<int> crit = centre_dimension(g, g.critical_level(), 4, 2);
  std::vector<int> zero = centre_dimension(g, Scalar::of_int(0, 5), 4, 2);
  for (int w = 2; w <= 4; ++w)
    CHECK(zero[static_cast<std::size_t>(w)] < crit[static_cast<std::size_t>(w)]);
}

TEST_CASE("gl_1: everything is central, dimensions are partition counts") {
  LieAlgebraSpec g = build_classical(Family::gl, 1, 5);
  std::vector<int> dims = centre_dimension(g, g.critical_level(), 3, 1);
  CHECK(dims == std::vector<int>{1, 1, 2, 3});
  std::vector<long long> pred =
      predicted_centre_dimensions(invariant_degrees(Family::gl, 1), g.dim, 5, 3);
  CHECK(pred == std::vector<long long>{1, 1, 2, 3});
}

TEST_CASE("worker count does not change the result") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  std::vector<int> w1 = centre_dimension(g, g.critical_level(), 4, 1);
  std::vector<int> w4 = centre_dimension(g, g.critical_level(), 4, 4);
  CHECK(w1 == w4);
  CHECK(w1 == centre_dimension_serial(g, g.critical_level(), 4));
}

TEST_CASE("characteristic zero: critical centre per weight is the free count") {
  // over Q the graded dimensions of the centre are the unrestricted
  // monomial counts in the S_{1,-j}, with no p-centre contribution
  LieAlgebraSpec g = build_classical(Family::sl, 2, 0);
  std::vector<int> dims = centre_dimension(g, g.critical_level(), 4, 1);
  // generators of weight 2,3,4 -> 1,0,1,1,2
  CHECK(dims == std::vector<int>{1, 0, 1, 1, 2});
}

TEST_CASE("capacity gate names the offending weight") {
  LieAlgebraSpec g = build_classical(Family::sl, 2, 5);
  try {
    centre_dimension(g, g.critical_level(), 5, 1, 50);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::capacity_exceeded);
    CHECK(std::string(e.what()).find("weight") != std::string::npos);
  }
}
