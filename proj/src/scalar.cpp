#include "mva/scalar.hpp"

#include <sstream>

namespace mva {

const char* errc_name(errc c) {
  switch (c) {
    case errc::denominator_divisible_by_p: return "DenominatorDivisibleByP";
    case errc::bad_characteristic: return "BadCharacteristic";
    case errc::bad_size: return "BadSize";
    case errc::degenerate_form: return "DegenerateForm";
    case errc::characteristic_mismatch: return "CharacteristicMismatch";
    case errc::truncation_overflow: return "TruncationOverflow";
    case errc::capacity_exceeded: return "CapacityExceeded";
    case errc::nilpotency_order_too_large: return "NilpotencyOrderTooLarge";
    case errc::unsupported_family: return "UnsupportedFamily";
    case errc::usage: return "Usage";
  }
  return "Unknown";
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint32_t p) {
  // extended Euclid; p prime, a != 0 mod p
  long long t = 0, newt = 1;
  long long r = p, newr = static_cast<long long>(a % p);
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw error(errc::usage, "mod_inverse: not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

Scalar Scalar::of_int(long long v, std::uint32_t p) {
  Scalar s;
  if (p == 0) {
    s.q_ = v;
    return s;
  }
  if (!is_prime(p)) throw error(errc::bad_characteristic, "BadCharacteristic: modulus must be prime");
  s.p_ = p;
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += p;
  s.r_ = static_cast<std::uint64_t>(m);
  s.q_ = 0;
  return s;
}

Scalar Scalar::of_rat(const Rat& q) {
  Scalar s;
  s.q_ = q;
  return s;
}

Scalar Scalar::residue(std::uint64_t r, std::uint32_t p) {
  if (p == 0 || !is_prime(p)) throw error(errc::bad_characteristic, "BadCharacteristic: modulus must be prime");
  Scalar s;
  s.p_ = p;
  s.r_ = r % p;
  return s;
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return p_ ? r_ == 1 : q_ == 1; }

std::uint64_t Scalar::residue_value() const {
  if (p_ == 0) throw error(errc::characteristic_mismatch, "CharacteristicMismatch: residue of a rational");
  return r_;
}

const Rat& Scalar::rational_value() const {
  if (p_ != 0) throw error(errc::characteristic_mismatch, "CharacteristicMismatch: rational of a residue");
  return q_;
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_)
    throw error(errc::characteristic_mismatch,
                "CharacteristicMismatch: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
}

Scalar Scalar::operator-() const {
  Scalar s(*this);
  if (p_) {
    s.r_ = r_ == 0 ? 0 : p_ - r_;
  } else {
    s.q_ = -q_;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_) {
    r_ += o.r_;
    if (r_ >= p_) r_ -= p_;
  } else {
    q_ += o.q_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_) {
    r_ = (r_ + p_ - o.r_) % p_;
  } else {
    q_ -= o.q_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_) {
    r_ = (r_ * o.r_) % p_;
  } else {
    q_ *= o.q_;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  if (o.is_zero()) throw error(errc::usage, "division by zero");
  if (p_) {
    r_ = (r_ * mod_inverse(o.r_, p_)) % p_;
  } else {
    q_ /= o.q_;
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw error(errc::usage, "inverse of zero");
  Scalar s(*this);
  if (p_) {
    s.r_ = mod_inverse(r_, p_);
  } else {
    s.q_ = Rat(1) / q_;
  }
  return s;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar acc = Scalar::one(p_);
  Scalar base(*this);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_) return false;
  return p_ ? r_ == o.r_ : q_ == o.q_;
}

std::string Scalar::str() const {
  if (p_) return std::to_string(r_);
  std::ostringstream os;
  os << q_;
  return os.str();
}

Scalar reduce_rational(const Rat& q, std::uint32_t p) {
  if (!is_prime(p)) throw error(errc::bad_characteristic, "BadCharacteristic: modulus must be prime");
  Int num = numerator(q);
  Int den = denominator(q);  // canonical: den > 0, gcd(num,den)=1
  if (den % p == 0)
    throw error(errc::denominator_divisible_by_p,
                "DenominatorDivisibleByP: " + q.str() + " mod " + std::to_string(p));
  Int nm = num % p;
  if (nm < 0) nm += p;
  Int dm = den % p;
  std::uint64_t n64 = nm.convert_to<std::uint64_t>();
  std::uint64_t d64 = dm.convert_to<std::uint64_t>();
  return Scalar::residue(n64 * mod_inverse(d64, p) % p, p);
}

Int binomial_int(long long n, unsigned j) {
  Int num = 1;
  Int den = 1;
  for (unsigned i = 0; i < j; ++i) {
    num *= Int(n) - static_cast<int>(i);
    den *= static_cast<int>(i) + 1;
  }
  return num / den;  // always exact
}

std::uint64_t lucas_binomial(std::uint64_t n, std::uint64_t j, std::uint32_t p) {
  if (!is_prime(p)) throw error(errc::bad_characteristic, "BadCharacteristic: modulus must be prime");
  std::uint64_t result = 1;
  while (j > 0 || n > 0) {
    std::uint64_t nd = n % p, jd = j % p;
    if (jd > nd) return 0;
    // C(nd, jd) mod p by the incremental product, all values < p^2
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < jd; ++i) {
      c = c * ((nd - i) % p) % p;
      c = c * mod_inverse((i + 1) % p, p) % p;
    }
    result = result * c % p;
    n /= p;
    j /= p;
  }
  return result;
}

Scalar binomial_mod(long long n, unsigned j, std::uint32_t p) {
  if (n >= 0)
    return Scalar::residue(lucas_binomial(static_cast<std::uint64_t>(n), j, p), p);
  Int b = binomial_int(n, j);
  Int m = b % p;
  if (m < 0) m += p;
  return Scalar::residue(m.convert_to<std::uint64_t>(), p);
}

Scalar binomial_scalar(long long n, unsigned j, std::uint32_t p) {
  if (p == 0) return Scalar::of_rat(Rat(binomial_int(n, j)));
  return binomial_mod(n, j, p);
}

}  // namespace mva
