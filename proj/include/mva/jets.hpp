#pragma once

#include <string>
#include <vector>

#include "mva/diff_poly.hpp"
#include "mva/lie_algebra.hpp"
#include "mva/rng.hpp"
#include "mva/vstate.hpp"

namespace mva {

// Degrees d_i of the generating invariants, smallest first.
std::vector<int> invariant_degrees(Family f, int N);

// i is 1-based.  Characteristic-polynomial coefficient of the generic
// matrix under the trace pairing, in the weight-1 variables; the quadratic
// generator is normalized as Tr(X^2)/2, and for so_{2n} the top generator
// is the Pfaffian (the coefficients alone do not generate in type D).
DiffPoly build_invariant_P(const LieAlgebraSpec& g, int i, int trunc = -1);

// P_{i,-j} = d^(j-1) P_{i,-1}; weight d_i + j - 1.
DiffPoly P_series(const LieAlgebraSpec& g, int i, int j, int trunc = -1);

// The degree-preserving derivation with (x t^m) . y_{-j} = [x,y]_{m-j} when
// m < j and 0 otherwise; no central term at level 0.
DiffPoly coadjoint_derivation(const LieAlgebraSpec& g, int x, int m, const DiffPoly& f);

// u_{alpha,m}(s): the ring substitution induced by exp(s D) on the
// variables, D = coadjoint_derivation(x_alpha, m, .).  root is an index
// into g.root_vectors.  Requires ad-nilpotency order < p.
DiffPoly one_param_action(const LieAlgebraSpec& g, int root, int m, const Scalar& s,
                          const DiffPoly& f);

// Same with s a formal nilpotent of order p: returns the coefficients of
// s^0 .. s^{p-1}.  Invariance means every positive power vanishes.
std::vector<DiffPoly> one_param_action_formal(const LieAlgebraSpec& g, int root, int m,
                                              const DiffPoly& f);

// Fixed global variable order at truncation m: depth-major, then basis.
std::vector<JetVar> jet_var_order(const LieAlgebraSpec& g, int m);

struct JacobianResult {
  int rank = 0;
  int full_rank = 0;          // (m+1) * rank(g)
  bool block_structure_ok = false;  // vanishing above + constant diagonal blocks
  std::string witness;
};

// Rank at a point of the (m+1)dim(g) x (m+1)rank(g) Jacobian of the
// P_{i,-j}; also verifies the lower-triangular block structure with
// constant diagonal blocks at the polynomial level.
JacobianResult jacobian_rank(const LieAlgebraSpec& g, int m, const std::vector<Scalar>& point);

// Point with regular weight-1 slice, remaining depths uniform.
std::vector<Scalar> sample_regular_point(const LieAlgebraSpec& g, int m, SplitMix64& rng);

// d/dx^i_{-1-s} d^(m) P_{-1} minus the predicted right-hand side; the
// contract is the zero polynomial.
DiffPoly rewriteders_residual(const LieAlgebraSpec& g, const DiffPoly& P, int i, int s, int m);

struct JetIdeal {
  std::vector<DiffPoly> generators;
  int truncation = -1;
};

// Generators {d^(t) a : a in gens, 0 <= t <= m}.
JetIdeal jet_ideal(const std::vector<DiffPoly>& gens, int m);

enum class InvariantMode { lie, group, pth_powers_quotient };
InvariantMode invariant_mode_from_string(const std::string& s);
const char* invariant_mode_name(InvariantMode m);

// Per-degree dimensions (degree 0..degree_cap) of the invariants of
// k[J_m g*]: joint kernel of the coadjoint derivations (lie), fixed points
// of the one-parameter subgroups over all s in F_p (group), or the lie
// invariants modulo p-th powers times lower invariants (the freeness
// comparison).
std::vector<int> invariant_ring_dimensions(const LieAlgebraSpec& g, int m, int degree_cap,
                                           InvariantMode mode, int workers,
                                           std::size_t capacity = 200000);

// Expected per-degree counts for monomials in generators with the given
// degrees, each exponent < bound (bound = 0 means unbounded).
std::vector<long long> monomial_counts_by_degree(const std::vector<int>& generator_degrees,
                                                 int degree_cap, unsigned bound);

// n-th product on the semiclassical side: symbol of the n-th product of
// the canonical PBW lifts.
DiffPoly pva_product(const LieAlgebraSpec& g, const Scalar& level, const DiffPoly& a, long long n,
                     const DiffPoly& b);

}  // namespace mva
