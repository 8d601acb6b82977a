#pragma once

#include <string>
#include <vector>

#include "mva/jets.hpp"
#include "mva/lie_algebra.hpp"
#include "mva/vstate.hpp"

namespace mva {

enum class Construction { casimir, cdet };
Construction construction_from_string(const std::string& s);
const char* construction_name(Construction c);

// A family of Segal-Sugawara vectors S_{i,-1} at the critical level, with
// provenance.  S_{i,-j} = T^(j-1) S_{i,-1} is derived on demand.
struct SSFamily {
  Family family = Family::gl;
  int N = 0;
  std::uint32_t p = 0;
  Scalar level;  // critical
  Construction construction = Construction::casimir;
  std::vector<int> degrees;            // conformal weights d_i of S_{i,-1}
  std::vector<VState> vectors;         // S_{i,-1}
  std::vector<VState> char0_preimage;  // retained when built by reduction
  // symbol(S_{i,-1}) = normalization[i] * P_{i,-1}; filled by verify_family
  std::vector<Scalar> normalization;
};

// S = 1/2 sum_a x_{a,-1} x^a_{-1} |0> over kappa-dual bases; weight 2.
VState casimir_vector(const LieAlgebraSpec& g, const Scalar& level, int weight_cap = 64);

// The column-determinant vectors S_1..S_N of V^{-N}(gl_N): expand
// cdet(tau I + E[-1]) moving tau to the right with [tau, E[-m]] = m E[-m-1],
// collect the coefficient of tau^{N-i} and apply it to the vacuum.
std::vector<VState> molev_cdet(int N, std::uint32_t characteristic, const Scalar& level,
                               int weight_cap = 64);

// casimir for any family with nondegenerate kappa; cdet for gl only.
SSFamily build_family(const LieAlgebraSpec& g, Construction c, int weight_cap = 64);

// S_{i,-j} (i, j 1-based).
VState derived_vector(const Vacuum& vac, const SSFamily& fam, int i, int j);

// Coefficient-wise reduce_rational; on failure the error names the
// offending monomial.  Re-verification is the caller's job (verify_family).
SSFamily reduce_family(const SSFamily& fam, const LieAlgebraSpec& g_mod_p);

// Centrality of every S_{i,-j} for j <= depth_cap and proportionality of
// symbols to the P_{i,-j}; fills fam.normalization.  For gl/sl/sp the
// recorded scalar must be 1; for so it is recorded (the quadratic one is 2
// because kappa is half the trace form there).
CheckList verify_family(const LieAlgebraSpec& g, SSFamily& fam, int depth_cap);

// Restricted-monomial times p-centre counts per conformal weight, from the
// generating function: each S_{i,-j} (weight d_i + j - 1) with exponent
// < p, and dim(g) free p-centre generators of weight p*j for every j >= 1.
std::vector<long long> predicted_centre_dimensions(const std::vector<int>& degrees, int dim_g,
                                                   std::uint32_t p, int weight_cap);

}  // namespace mva
