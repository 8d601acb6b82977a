#include "mva/diff_poly.hpp"

#include <algorithm>
#include <sstream>

namespace mva {

int jet_monomial_degree(const JetMonomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += static_cast<int>(e);
  return d;
}

int jet_monomial_weight(const JetMonomial& m) {
  int w = 0;
  for (const auto& [v, e] : m) w += jet_var_depth(v) * static_cast<int>(e);
  return w;
}

DiffPoly DiffPoly::constant(const Scalar& c, int trunc) {
  DiffPoly f(c.characteristic(), trunc);
  if (!c.is_zero()) f.terms_[{}] = c;
  return f;
}

DiffPoly DiffPoly::variable(int basis_index, int depth, std::uint32_t p, int trunc) {
  DiffPoly f(p, trunc);
  f.check_depth(depth);
  f.terms_[{{jet_var(basis_index, depth), 1}}] = Scalar::one(p);
  return f;
}

void DiffPoly::check_depth(int depth) const {
  if (depth < 1) throw error(errc::usage, "depth must be >= 1");
  if (trunc_ >= 0 && depth > trunc_ + 1)
    throw error(errc::truncation_overflow,
                "TruncationOverflow: depth " + std::to_string(depth) + " at truncation level " +
                    std::to_string(trunc_));
}

void DiffPoly::add_term(const JetMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [v, e] : m) check_depth(jet_var_depth(v));
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar DiffPoly::coefficient(const JetMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(p_) : it->second;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  if (trunc_ >= 0 && (o.trunc_ < 0 || o.trunc_ > trunc_)) trunc_ = o.trunc_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  if (trunc_ >= 0 && (o.trunc_ < 0 || o.trunc_ > trunc_)) trunc_ = o.trunc_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

namespace {

JetMonomial monomial_mul(const JetMonomial& a, const JetMonomial& b) {
  JetMonomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first)
      out.push_back(a[i++]);
    else if (b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

}  // namespace

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  int t = trunc_;
  if (t >= 0 && (o.trunc_ < 0 || o.trunc_ > t)) t = o.trunc_;
  DiffPoly out(p_ ? p_ : o.p_, t);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(monomial_mul(ma, mb), ca * cb);
  return out;
}

DiffPoly DiffPoly::scaled(const Scalar& c) const {
  DiffPoly out(p_, trunc_);
  if (c.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.add_term(m, v * c);
  return out;
}

int DiffPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, jet_monomial_degree(m));
  return d;
}

int DiffPoly::weight() const {
  int w = -1;
  for (const auto& [m, c] : terms_) w = std::max(w, jet_monomial_weight(m));
  return w;
}

bool DiffPoly::is_homogeneous_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int dm = jet_monomial_degree(m);
    if (d < 0) d = dm;
    if (dm != d) return false;
  }
  return true;
}

DiffPoly DiffPoly::degree_part(int d) const {
  DiffPoly out(p_, trunc_);
  for (const auto& [m, c] : terms_)
    if (jet_monomial_degree(m) == d) out.add_term(m, c);
  return out;
}

DiffPoly DiffPoly::partial(JetVar v) const {
  DiffPoly out(p_, trunc_);
  for (const auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k].first != v) continue;
      Scalar coeff = c * Scalar::of_int(static_cast<long long>(m[k].second), p_);
      if (coeff.is_zero()) break;  // exponent divisible by p
      JetMonomial mm = m;
      if (mm[k].second == 1)
        mm.erase(mm.begin() + static_cast<long long>(k));
      else
        --mm[k].second;
      out.add_term(mm, coeff);
      break;
    }
  }
  return out;
}

Scalar DiffPoly::eval(const std::vector<Scalar>& point_by_var,
                      const std::vector<JetVar>& var_order) const {
  std::map<JetVar, Scalar> value;
  for (std::size_t i = 0; i < var_order.size(); ++i) value.emplace(var_order[i], point_by_var[i]);
  Scalar total = Scalar::zero(p_);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (const auto& [v, e] : m) {
      auto it = value.find(v);
      if (it == value.end()) throw error(errc::usage, "eval: point does not cover all variables");
      t *= it->second.pow(e);
      if (t.is_zero()) break;
    }
    total += t;
  }
  return total;
}

bool DiffPoly::exponents_divisible_by(std::uint32_t p) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (e % p != 0) return false;
  return true;
}

std::string DiffPoly::str(const std::vector<std::string>& basis_names) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<JetMonomial, Scalar>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = jet_monomial_degree(a.first), db = jet_monomial_degree(b.first);
    if (da != db) return da < db;
    int wa = jet_monomial_weight(a.first), wb = jet_monomial_weight(b.first);
    if (wa != wb) return wa < wb;
    return a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (const auto& [v, e] : m) {
      int i = jet_var_index(v);
      os << "*" << (i < static_cast<int>(basis_names.size()) ? basis_names[i] : "x" + std::to_string(i))
         << "{-" << jet_var_depth(v) << "}";
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

DiffPoly hasse_derive(unsigned k, const DiffPoly& f) {
  if (k == 0) return f;
  const std::uint32_t p = f.characteristic();
  DiffPoly out(p, f.truncation());
  for (const auto& [m, c] : f.terms()) {
    // flatten the monomial into single-variable factors and fold the
    // divided-power Leibniz rule left to right
    std::vector<JetVar> factors;
    for (const auto& [v, e] : m)
      for (std::uint32_t t = 0; t < e; ++t) factors.push_back(v);
    // partial[j] = sum over ways to distribute j among processed factors
    std::vector<DiffPoly> partial(k + 1, DiffPoly::zero(p, f.truncation()));
    partial[0].add_term({}, c);
    for (JetVar v : factors) {
      std::vector<DiffPoly> next(k + 1, DiffPoly::zero(p, f.truncation()));
      const int depth = jet_var_depth(v);
      const int idx = jet_var_index(v);
      for (unsigned used = 0; used <= k; ++used) {
        if (partial[used].is_zero()) continue;
        for (unsigned give = 0; give + used <= k; ++give) {
          // d^(give) x_{-depth} = C(depth-1+give, give) x_{-depth-give}
          Scalar b = binomial_scalar(depth - 1 + static_cast<long long>(give), give, p);
          if (b.is_zero()) continue;
          DiffPoly var = DiffPoly::variable(idx, depth + static_cast<int>(give), p, f.truncation());
          next[used + give] += (partial[used] * var).scaled(b);
        }
      }
      partial.swap(next);
    }
    out += partial[k];
  }
  return out;
}

}  // namespace mva
