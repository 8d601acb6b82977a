#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mva/diff_poly.hpp"
#include "mva/lie_algebra.hpp"

namespace mva {

// One creation mode x^i_{-d} with depth d >= 1, packed as (d << 16) | i so
// that ascending integer order is the canonical PBW order: modes by
// nondecreasing depth, ties by basis index.
using ModeKey = std::uint32_t;

constexpr ModeKey mode_key(int basis_index, int depth) {
  return (static_cast<ModeKey>(depth) << 16) | static_cast<ModeKey>(basis_index);
}
constexpr int mode_index(ModeKey m) { return static_cast<int>(m & 0xffff); }
constexpr int mode_depth(ModeKey m) { return static_cast<int>(m >> 16); }

// Canonical PBW monomial applied to the vacuum.
struct Pbw {
  std::vector<ModeKey> modes;  // ascending

  int weight() const {
    int w = 0;
    for (ModeKey m : modes) w += mode_depth(m);
    return w;
  }
  int length() const { return static_cast<int>(modes.size()); }
  bool operator<(const Pbw& o) const { return modes < o.modes; }
  bool operator==(const Pbw& o) const { return modes == o.modes; }
};

// Finite linear combination of PBW monomials at a fixed level.  The level
// scalar also pins the characteristic; the central element K is never
// stored, its action is folded into coefficients as brackets are resolved.
struct VState {
  Scalar level;
  std::map<Pbw, Scalar> terms;

  bool is_zero() const { return terms.empty(); }
  int max_weight() const {
    int w = 0;
    for (const auto& [m, c] : terms) w = std::max(w, m.weight());
    return w;
  }
  int max_length() const {
    int l = 0;
    for (const auto& [m, c] : terms) l = std::max(l, m.length());
    return l;
  }
  void add_term(const Pbw& m, const Scalar& c);
  bool operator==(const VState& o) const { return terms == o.terms; }
};

void state_axpy(VState& acc, const VState& v, const Scalar& c);
VState state_scaled(const VState& v, const Scalar& c);
VState state_add(const VState& a, const VState& b);
VState state_sub(const VState& a, const VState& b);

// Deterministic text: terms ordered by weight, then lexicographically.
std::string state_str(const VState& v, const LieAlgebraSpec& g);

// Workspace for V^k(g): the algebra, the level, a weight cap that turns
// runaway growth into a loud CapacityExceeded, and the straightening memo.
// Not safe for concurrent use; give each worker its own instance.
class Vacuum {
public:
  Vacuum(const LieAlgebraSpec& g, Scalar level, int weight_cap = 64);

  const LieAlgebraSpec& algebra() const { return g_; }
  const Scalar& level() const { return level_; }
  bool is_critical_level() const { return level_ == g_.critical_level(); }
  int weight_cap() const { return weight_cap_; }

  VState zero() const;
  VState vac() const;
  VState gen(int basis_index, int depth) const;           // x^i_{-depth}|0>
  VState monomial(const std::vector<ModeKey>& modes) const;  // straightened product

  // Action of x^i t^n, re-straightened to canonical form.
  VState apply_mode(int basis_index, long long n, const VState& v) const;

  // Divided-power translation operator T^(k).
  VState translate(unsigned k, const VState& v) const;

  // a_(n) b via the normally ordered product of divided-power derivative
  // fields; exact, all internal sums are finite because annihilation modes
  // of index at least the weight of their argument act as zero.
  VState nth_product(const VState& a, long long n, const VState& b) const;

  // LHS - RHS of the Borcherds identity applied to c; zero for a vertex
  // algebra, so any nonzero value is an implementation witness.
  VState borcherds_residual(const VState& a, const VState& b, const VState& c, long long m,
                            long long n, long long k) const;

  bool is_central(const VState& v) const;
  // first (basis index, mode) that fails centrality, or (-1, 0)
  std::pair<int, long long> central_witness(const VState& v) const;

  // (x_{-j})^p |0> - (x^[p])_{-pj} |0>, characteristic p only.
  VState pcentre_state(int basis_index, int j) const;

  std::size_t memo_entries() const { return memo_.size(); }

private:
  const VState& mode_on_monomial(int i, long long n, const Pbw& m) const;
  const VState& field_mode_mono(int list_id, std::size_t pos, long long n, const Pbw& m) const;
  void check_weight(int w) const;

  const LieAlgebraSpec& g_;
  Scalar level_;
  int weight_cap_;
  VState zero_;
  mutable std::map<std::tuple<int, long long, Pbw>, VState> memo_;
  // interned field lists (packed (depth<<16)|index per factor) for the
  // normally-ordered-product recursion, plus its memo
  mutable std::map<std::vector<std::uint32_t>, int> field_lists_;
  mutable std::vector<std::vector<std::pair<int, int>>> field_list_store_;
  mutable std::map<std::tuple<int, std::size_t, long long, Pbw>, VState> field_memo_;
};

// Top PBW-length part as a commutative differential polynomial.
DiffPoly symbol(const VState& v);

// Monomial-wise canonical PBW lift of a differential polynomial.
VState lift_poly(const Vacuum& vac, const DiffPoly& f);

}  // namespace mva
