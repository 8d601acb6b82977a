#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mva {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class errc {
  denominator_divisible_by_p,
  bad_characteristic,
  bad_size,
  degenerate_form,
  characteristic_mismatch,
  truncation_overflow,
  capacity_exceeded,
  nilpotency_order_too_large,
  unsupported_family,
  usage,
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

const char* errc_name(errc c);

bool is_prime(std::uint32_t n);

// Exact coefficient: a rational number (characteristic 0) or a canonical
// residue in {0,...,p-1} (characteristic p).  The characteristic travels with
// the value; operations on mismatched characteristics throw.
class Scalar {
public:
  Scalar() : p_(0), r_(0), q_(0) {}

  static Scalar zero(std::uint32_t p) { return of_int(0, p); }
  static Scalar one(std::uint32_t p) { return of_int(1, p); }
  static Scalar of_int(long long v, std::uint32_t p);
  static Scalar of_rat(const Rat& q);  // characteristic 0
  static Scalar residue(std::uint64_t r, std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t residue_value() const;  // requires characteristic p
  const Rat& rational_value() const;    // requires characteristic 0

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;  // throws on zero
  Scalar pow(std::uint64_t e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Canonical text: residue digits in characteristic p, "n" or "n/d" in
  // characteristic 0.  Used verbatim in reports, so it must stay stable.
  std::string str() const;

private:
  void check_same(const Scalar& o) const;
  std::uint32_t p_;
  std::uint64_t r_;
  Rat q_;
};

// (numerator mod p) * (denominator mod p)^{-1}; rejects denominators
// divisible by p (the input is then outside the integral form for p).
Scalar reduce_rational(const Rat& q, std::uint32_t p);

// n(n-1)...(n-j+1)/j! in exact integers; n may be negative.
Int binomial_int(long long n, unsigned j);

// binomial_int reduced mod p.  For n >= 0 takes the Lucas digit route; the
// negative-upper-index case goes through exact integers (Lucas does not
// apply there).
Scalar binomial_mod(long long n, unsigned j, std::uint32_t p);

// Digit-wise product of base-p binomials; requires n, j >= 0.
std::uint64_t lucas_binomial(std::uint64_t n, std::uint64_t j, std::uint32_t p);

// binomial in the given characteristic: rational integer when p = 0,
// binomial_mod otherwise.
Scalar binomial_scalar(long long n, unsigned j, std::uint32_t p);

std::uint64_t mod_inverse(std::uint64_t a, std::uint32_t p);

}  // namespace mva
