#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mva/matrix.hpp"
#include "mva/scalar.hpp"

namespace mva {

enum class Family { gl, sl, so, sp };

Family family_from_string(const std::string& s);
const char* family_name(Family f);

// N x N matrix over Scalar; the concrete realization of basis elements.
struct SmallMat {
  int n = 0;
  std::vector<Scalar> e;

  static SmallMat zero(int n, std::uint32_t p) {
    SmallMat m;
    m.n = n;
    m.e.assign(static_cast<std::size_t>(n) * n, Scalar::zero(p));
    return m;
  }
  Scalar& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
  const Scalar& at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }
};

SmallMat mat_mul(const SmallMat& a, const SmallMat& b);
SmallMat mat_sub(const SmallMat& a, const SmallMat& b);
SmallMat mat_add(const SmallMat& a, const SmallMat& b);
SmallMat mat_pow(const SmallMat& a, unsigned e);
SmallMat commutator(const SmallMat& a, const SmallMat& b);
Scalar mat_trace(const SmallMat& a);
bool mat_is_zero(const SmallMat& a);

// Sparse expansion in the ordered basis: list of (basis index, coefficient).
using BasisCombo = std::vector<std::pair<int, Scalar>>;

struct RootVectorInfo {
  std::string label;
  int basis_index = 0;
  int nilpotency_order = 0;  // least k with ad(x)^k = 0
};

// A classical matrix Lie algebra with its ordered basis and all derived
// tables.  Immutable after construction (the validator may be handed
// deliberately corrupted copies in tests).
struct LieAlgebraSpec {
  Family family = Family::gl;
  int N = 0;
  std::uint32_t p = 0;  // characteristic (0 or prime > coxeter)

  int dim = 0;
  int rank = 0;
  int coxeter = 0;
  int dual_coxeter = 0;

  std::vector<std::string> basis_names;
  std::vector<SmallMat> basis;

  // bracket_table[i][j] = [x_i, x_j] expanded in the basis
  std::vector<std::vector<BasisCombo>> bracket_table;
  // normalised invariant form, Gram matrix in the basis
  std::vector<std::vector<Scalar>> kappa;
  // x_i^{[p]} = p-th matrix power, expanded in the basis (characteristic p)
  std::vector<BasisCombo> restricted;
  std::vector<RootVectorInfo> root_vectors;

  const BasisCombo& bracket(int i, int j) const { return bracket_table[i][j]; }
  const Scalar& kappa_at(int i, int j) const { return kappa[i][j]; }
  Scalar critical_level() const;  // -h_vee in this characteristic
  bool is_cartan(int i) const;    // diagonal basis matrix
};

// Standard realizations: gl_N (E_ij row-major), sl_N (positive roots,
// Cartan differences, negative roots), so_N and sp_N in the antidiagonal
// form.  Requires p = 0 or prime p > coxeter number.
LieAlgebraSpec build_classical(Family f, int N, std::uint32_t p);

// { x^a } with kappa(x_a, x^b) = delta_ab, as coordinate vectors in the
// basis.  Throws DegenerateForm when the Gram matrix is singular.
std::vector<std::vector<Scalar>> dual_basis(const LieAlgebraSpec& g);

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on pass
};

struct CheckList {
  std::vector<Check> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Runs every structural invariant: antisymmetry, Jacobi, form symmetry and
// invariance, nondegeneracy (sl/so/sp), restrictedness, root vector
// nilpotency.  Failures are data, not exceptions.
CheckList validate_spec(const LieAlgebraSpec& g);

// Matrix of ad(x_i) in the basis (column j = [x_i, x_j]).
ScalarMatrix ad_matrix(const LieAlgebraSpec& g, int i);

// Least k with ad(x_i)^k = 0, or -1 if not nilpotent within 2*dim steps.
int ad_nilpotency_order(const LieAlgebraSpec& g, int i);

// dim of the coadjoint stabilizer of the functional with coordinates xi
// (xi[a] = value on basis element a); the point is regular iff this equals
// the rank.
int coadjoint_stabilizer_dim(const LieAlgebraSpec& g, const std::vector<Scalar>& xi);

// Expansion of an arbitrary matrix in the basis; throws if outside the span.
BasisCombo expand_in_basis(const LieAlgebraSpec& g, const SmallMat& m);

// Stable text format consumed and emitted by the harness.
std::string serialize_spec(const LieAlgebraSpec& g);
LieAlgebraSpec parse_spec(const std::string& text);

}  // namespace mva
