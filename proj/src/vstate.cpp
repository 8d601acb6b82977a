#include "mva/vstate.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mva {

void VState::add_term(const Pbw& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void state_axpy(VState& acc, const VState& v, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [m, x] : v.terms) acc.add_term(m, x * c);
}

VState state_scaled(const VState& v, const Scalar& c) {
  VState out;
  out.level = v.level;
  state_axpy(out, v, c);
  return out;
}

VState state_add(const VState& a, const VState& b) {
  if (a.level != b.level) throw error(errc::characteristic_mismatch, "CharacteristicMismatch: level");
  VState out = a;
  for (const auto& [m, c] : b.terms) out.add_term(m, c);
  return out;
}

VState state_sub(const VState& a, const VState& b) {
  if (a.level != b.level) throw error(errc::characteristic_mismatch, "CharacteristicMismatch: level");
  VState out = a;
  for (const auto& [m, c] : b.terms) out.add_term(m, -c);
  return out;
}

std::string state_str(const VState& v, const LieAlgebraSpec& g) {
  if (v.terms.empty()) return "0";
  std::vector<std::pair<Pbw, Scalar>> sorted(v.terms.begin(), v.terms.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int wa = a.first.weight(), wb = b.first.weight();
    if (wa != wb) return wa < wb;
    return a.first.modes < b.first.modes;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (m.modes.empty()) {
      os << "*|0>";
    } else {
      for (ModeKey k : m.modes)
        os << "*" << g.basis_names[mode_index(k)] << "{-" << mode_depth(k) << "}";
    }
  }
  return os.str();
}

Vacuum::Vacuum(const LieAlgebraSpec& g, Scalar level, int weight_cap)
    : g_(g), level_(std::move(level)), weight_cap_(weight_cap) {
  if (level_.characteristic() != g_.p)
    throw error(errc::characteristic_mismatch, "CharacteristicMismatch: level vs algebra");
  zero_.level = level_;
}

void Vacuum::check_weight(int w) const {
  if (w > weight_cap_)
    throw error(errc::capacity_exceeded,
                "CapacityExceeded: weight " + std::to_string(w) + " over cap " +
                    std::to_string(weight_cap_));
}

VState Vacuum::zero() const {
  VState s;
  s.level = level_;
  return s;
}

VState Vacuum::vac() const {
  VState s = zero();
  s.add_term(Pbw{}, Scalar::one(g_.p));
  return s;
}

VState Vacuum::gen(int basis_index, int depth) const {
  check_weight(depth);
  VState s = zero();
  s.add_term(Pbw{{mode_key(basis_index, depth)}}, Scalar::one(g_.p));
  return s;
}

VState Vacuum::monomial(const std::vector<ModeKey>& modes) const {
  VState s = vac();
  for (auto it = modes.rbegin(); it != modes.rend(); ++it)
    s = apply_mode(mode_index(*it), -mode_depth(*it), s);
  return s;
}

VState Vacuum::apply_mode(int i, long long n, const VState& v) const {
  VState out = zero();
  for (const auto& [m, c] : v.terms) state_axpy(out, mode_on_monomial(i, n, m), c);
  return out;
}

const VState& Vacuum::mode_on_monomial(int i, long long n, const Pbw& m) const {
  if (n >= 0 && n > m.weight()) return zero_;
  auto key = std::make_tuple(i, n, m);
  auto hit = memo_.find(key);
  if (hit != memo_.end()) return hit->second;

  VState res = zero();
  if (m.modes.empty()) {
    if (n < 0) {
      check_weight(static_cast<int>(-n));
      res.add_term(Pbw{{mode_key(i, static_cast<int>(-n))}}, Scalar::one(g_.p));
    }
    // x_n |0> = 0 for n >= 0
  } else if (n < 0 && mode_key(i, static_cast<int>(-n)) <= m.modes.front()) {
    // already in canonical position: prepend
    check_weight(m.weight() + static_cast<int>(-n));
    Pbw ext;
    ext.modes.reserve(m.modes.size() + 1);
    ext.modes.push_back(mode_key(i, static_cast<int>(-n)));
    ext.modes.insert(ext.modes.end(), m.modes.begin(), m.modes.end());
    res.add_term(ext, Scalar::one(g_.p));
  } else {
    // x_n (y_{-d} rest) = y_{-d} (x_n rest) + [x_n, y_{-d}] rest
    const int i1 = mode_index(m.modes.front());
    const int d1 = mode_depth(m.modes.front());
    Pbw rest;
    rest.modes.assign(m.modes.begin() + 1, m.modes.end());

    const VState& inner = mode_on_monomial(i, n, rest);
    if (!inner.is_zero()) state_axpy(res, apply_mode(i1, -d1, inner), Scalar::one(g_.p));

    const long long bn = n - d1;
    for (const auto& [k, c] : g_.bracket(i, i1)) state_axpy(res, mode_on_monomial(k, bn, rest), c);

    if (n == d1) {
      // central term kappa(x, y) * n * K with K acting by the level
      Scalar c = g_.kappa_at(i, i1) * Scalar::of_int(n, g_.p) * level_;
      if (!c.is_zero()) res.add_term(rest, c);
    }
  }
  return memo_.emplace(std::move(key), std::move(res)).first->second;
}

namespace {

// compositions of total into parts slots, lexicographic order
void for_each_composition(int total, int parts, std::vector<int>& cur,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (parts == 1) {
    cur.push_back(total);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    cur.push_back(first);
    for_each_composition(total - first, parts - 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

VState Vacuum::translate(unsigned k, const VState& v) const {
  if (k == 0) return v;
  VState out = zero();
  for (const auto& [m, c] : v.terms) {
    if (m.modes.empty()) continue;  // T^(k)|0> = 0
    const int len = m.length();
    std::vector<int> cur;
    for_each_composition(static_cast<int>(k), len, cur, [&](const std::vector<int>& js) {
      Scalar coeff = c;
      std::vector<ModeKey> shifted(m.modes);
      for (int l = 0; l < len && !coeff.is_zero(); ++l) {
        int d = mode_depth(m.modes[static_cast<std::size_t>(l)]);
        int j = js[static_cast<std::size_t>(l)];
        coeff *= binomial_scalar(d - 1 + j, static_cast<unsigned>(j), g_.p);
        shifted[static_cast<std::size_t>(l)] =
            mode_key(mode_index(m.modes[static_cast<std::size_t>(l)]), d + j);
      }
      if (coeff.is_zero()) return;
      state_axpy(out, monomial(shifted), coeff);
    });
  }
  return out;
}

const VState& Vacuum::field_mode_mono(int list_id, std::size_t pos, long long n,
                                      const Pbw& m) const {
  const std::vector<std::pair<int, int>>& fields =
      field_list_store_[static_cast<std::size_t>(list_id)];
  if (pos == fields.size()) {
    // identity field: |0>_(n) b = delta_{n,-1} b
    if (n != -1) return zero_;
    auto key = std::make_tuple(list_id, pos, n, m);
    auto hit = field_memo_.find(key);
    if (hit != field_memo_.end()) return hit->second;
    VState res = zero();
    res.add_term(m, Scalar::one(g_.p));
    return field_memo_.emplace(std::move(key), std::move(res)).first->second;
  }
  int wf = 0;
  for (std::size_t l = pos; l < fields.size(); ++l) wf += fields[l].second + 1;
  const int wb = m.weight();
  if (n >= wf + wb) return zero_;

  auto key = std::make_tuple(list_id, pos, n, m);
  auto hit = field_memo_.find(key);
  if (hit != field_memo_.end()) return hit->second;

  const int i = fields[pos].first;
  const int nd = fields[pos].second;
  VState res = zero();

  if (pos + 1 == fields.size()) {
    // modes of the divided-power derivative field d^(nd) x(z)
    Scalar c = binomial_scalar(-n + nd - 1, static_cast<unsigned>(nd), g_.p);
    if (!c.is_zero()) state_axpy(res, mode_on_monomial(i, n - nd, m), c);
  } else {
    const int wr = wf - (nd + 1);

    // creation part in front: sum_{j<0} A_j R_{n-1-j}
    const long long jmin = n - wr - wb;
    for (long long j = -1; j >= jmin; --j) {
      const VState& inner = field_mode_mono(list_id, pos + 1, n - 1 - j, m);
      if (inner.is_zero()) continue;
      Scalar c = binomial_scalar(-j + nd - 1, static_cast<unsigned>(nd), g_.p);
      if (c.is_zero()) continue;
      state_axpy(res, apply_mode(i, j - nd, inner), c);
    }

    // annihilation part behind: sum_{j>=0} R_{n-1-j} A_j; the binomial
    // kills 0 <= j < nd and the mode kills j - nd > wt(m)
    for (long long j = nd; j <= static_cast<long long>(nd) + wb; ++j) {
      const VState& t = mode_on_monomial(i, j - nd, m);
      if (t.is_zero()) continue;
      Scalar c = binomial_scalar(-j + nd - 1, static_cast<unsigned>(nd), g_.p);
      if (c.is_zero()) continue;
      for (const auto& [tm, tc] : t.terms)
        state_axpy(res, field_mode_mono(list_id, pos + 1, n - 1 - j, tm), c * tc);
    }
  }
  return field_memo_.emplace(std::move(key), std::move(res)).first->second;
}

VState Vacuum::nth_product(const VState& a, long long n, const VState& b) const {
  if (a.level != b.level || !(a.level == level_))
    throw error(errc::characteristic_mismatch, "CharacteristicMismatch: levels differ");
  VState out = zero();
  for (const auto& [m, c] : a.terms) {
    std::vector<std::uint32_t> packed(m.modes.begin(), m.modes.end());
    auto it = field_lists_.find(packed);
    int list_id;
    if (it == field_lists_.end()) {
      list_id = static_cast<int>(field_list_store_.size());
      std::vector<std::pair<int, int>> fields;
      fields.reserve(m.modes.size());
      for (ModeKey k : m.modes) fields.emplace_back(mode_index(k), mode_depth(k) - 1);
      field_list_store_.push_back(std::move(fields));
      field_lists_.emplace(std::move(packed), list_id);
    } else {
      list_id = it->second;
    }
    for (const auto& [bm, bc] : b.terms)
      state_axpy(out, field_mode_mono(list_id, 0, n, bm), c * bc);
  }
  return out;
}

VState Vacuum::borcherds_residual(const VState& a, const VState& b, const VState& c, long long m,
                                  long long n, long long k) const {
  VState lhs = zero();
  const int wa = a.max_weight(), wb = b.max_weight(), wc = c.max_weight();
  const Scalar sign_n =
      ((n % 2 + 2) % 2 == 0) ? Scalar::one(g_.p) : -Scalar::one(g_.p);
  for (long long j = 0; k + j < wb + wc; ++j) {
    Scalar cj = binomial_scalar(n, static_cast<unsigned>(j), g_.p);
    if (cj.is_zero()) continue;
    if (j % 2) cj = -cj;
    VState t = nth_product(a, m + n - j, nth_product(b, k + j, c));
    state_axpy(lhs, t, cj);
  }
  for (long long j = 0; m + j < wa + wc; ++j) {
    Scalar cj = binomial_scalar(n, static_cast<unsigned>(j), g_.p);
    if (cj.is_zero()) continue;
    if (j % 2) cj = -cj;
    VState t = nth_product(b, n + k - j, nth_product(a, m + j, c));
    state_axpy(lhs, t, -(sign_n * cj));
  }
  VState rhs = zero();
  for (long long j = 0; n + j < wa + wb; ++j) {
    Scalar cj = binomial_scalar(m, static_cast<unsigned>(j), g_.p);
    if (cj.is_zero()) continue;
    VState t = nth_product(nth_product(a, n + j, b), m + k - j, c);
    state_axpy(rhs, t, cj);
  }
  return state_sub(lhs, rhs);
}

bool Vacuum::is_central(const VState& v) const { return central_witness(v).first < 0; }

std::pair<int, long long> Vacuum::central_witness(const VState& v) const {
  const int w = v.max_weight();
  for (int i = 0; i < g_.dim; ++i)
    for (long long n = 0; n <= w; ++n)
      if (!apply_mode(i, n, v).is_zero()) return {i, n};
  return {-1, 0};
}

VState Vacuum::pcentre_state(int basis_index, int j) const {
  if (g_.p == 0)
    throw error(errc::bad_characteristic, "BadCharacteristic: p-centre needs characteristic p");
  if (j < 1) throw error(errc::usage, "pcentre_state: j must be positive");
  check_weight(static_cast<int>(g_.p) * j);
  VState s = zero();
  Pbw power;
  power.modes.assign(g_.p, mode_key(basis_index, j));
  s.add_term(power, Scalar::one(g_.p));
  for (const auto& [k, c] : g_.restricted[basis_index]) {
    Pbw single;
    single.modes.push_back(mode_key(k, static_cast<int>(g_.p) * j));
    s.add_term(single, -c);
  }
  return s;
}

DiffPoly symbol(const VState& v) {
  DiffPoly out(v.level.characteristic(), -1);
  int top = v.max_length();
  if (v.is_zero()) return out;
  for (const auto& [m, c] : v.terms) {
    if (m.length() != top) continue;
    JetMonomial jm;
    for (ModeKey k : m.modes) {
      JetVar var = jet_var(mode_index(k), mode_depth(k));
      if (!jm.empty() && jm.back().first == var)
        ++jm.back().second;
      else
        jm.emplace_back(var, 1);
    }
    out.add_term(jm, c);
  }
  return out;
}

VState lift_poly(const Vacuum& vac, const DiffPoly& f) {
  VState out = vac.zero();
  for (const auto& [m, c] : f.terms()) {
    Pbw mono;
    for (const auto& [v, e] : m)
      for (std::uint32_t t = 0; t < e; ++t)
        mono.modes.push_back(mode_key(jet_var_index(v), jet_var_depth(v)));
    std::sort(mono.modes.begin(), mono.modes.end());
    out.add_term(mono, c);
  }
  return out;
}

}  // namespace mva
