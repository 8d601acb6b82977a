#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mva/scalar.hpp"

namespace mva {

// Variable x^i_{-j}: basis index i, depth j >= 1.  Packed so that the
// natural integer order sorts by depth first, then basis index.
using JetVar = std::uint32_t;

constexpr JetVar jet_var(int basis_index, int depth) {
  return (static_cast<JetVar>(depth) << 16) | static_cast<JetVar>(basis_index);
}
constexpr int jet_var_index(JetVar v) { return static_cast<int>(v & 0xffff); }
constexpr int jet_var_depth(JetVar v) { return static_cast<int>(v >> 16); }

// Sorted (variable, exponent) pairs, exponents > 0.
using JetMonomial = std::vector<std::pair<JetVar, std::uint32_t>>;

int jet_monomial_degree(const JetMonomial& m);
int jet_monomial_weight(const JetMonomial& m);

// Sparse polynomial in the variables x^i_{-j}, bigraded by total degree and
// by weight (sum of depths).  trunc records the truncation level m: depths
// are then confined to 1..m+1.  trunc = -1 means no truncation.  Mixed
// operations coerce the truncation upward only.
class DiffPoly {
public:
  DiffPoly() : p_(0), trunc_(-1) {}
  DiffPoly(std::uint32_t p, int trunc) : p_(p), trunc_(trunc) {}

  static DiffPoly zero(std::uint32_t p, int trunc = -1) { return DiffPoly(p, trunc); }
  static DiffPoly constant(const Scalar& c, int trunc = -1);
  static DiffPoly variable(int basis_index, int depth, std::uint32_t p, int trunc = -1);

  std::uint32_t characteristic() const { return p_; }
  int truncation() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<JetMonomial, Scalar>& terms() const { return terms_; }

  void add_term(const JetMonomial& m, const Scalar& c);
  Scalar coefficient(const JetMonomial& m) const;

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly scaled(const Scalar& c) const;
  bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffPoly& o) const { return !(*this == o); }

  // -1 on zero
  int degree() const;
  int weight() const;
  bool is_homogeneous_degree() const;
  DiffPoly degree_part(int d) const;

  DiffPoly partial(JetVar v) const;
  Scalar eval(const std::vector<Scalar>& point_by_var,
              const std::vector<JetVar>& var_order) const;

  // every exponent divisible by p: membership in the span of p-th powers
  bool exponents_divisible_by(std::uint32_t p) const;

  // deterministic text: terms sorted by (degree, weight, monomial)
  std::string str(const std::vector<std::string>& basis_names) const;

private:
  void check_depth(int depth) const;
  std::uint32_t p_;
  int trunc_;
  std::map<JetMonomial, Scalar> terms_;
};

// Hasse-Schmidt derivation: order-k divided power.  On a variable,
// d^(k) x_{-j} = C(j-1+k, k) x_{-j-k}; extended by the divided-power
// Leibniz rule.  Throws TruncationOverflow when the result needs depths
// beyond the truncation level.
DiffPoly hasse_derive(unsigned k, const DiffPoly& f);

}  // namespace mva
