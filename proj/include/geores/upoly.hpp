#pragma once
#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geores/ring.hpp"

namespace geores {

// Univariate polynomial over a commutative coefficient ring K, ascending in T.
// Every polynomial carries a witness element so zero/one exist without a context.
template <class K>
struct UPoly {
  K wit;            // a ring element fixing the context; value irrelevant
  std::vector<K> c; // trimmed: leading coefficient nonzero

  explicit UPoly(K witness) : wit(std::move(witness)) { c.clear(); }
  UPoly(K witness, std::vector<K> coeffs) : wit(std::move(witness)), c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && ring_is_zero(c.back())) c.pop_back();
  }
  int degree() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  K get(size_t i) const { return i < c.size() ? c[i] : ring_zero(wit); }
  K lead() const {
    if (c.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c.back();
  }
  bool is_monic() const { return !c.empty() && ring_is_zero(c.back() - ring_one(wit)); }

  static UPoly zero(const K& w) { return UPoly(w); }
  static UPoly constant(const K& v) { return UPoly(v, {v}); }
  static UPoly variable(const K& w) { return UPoly(w, {ring_zero(w), ring_one(w)}); }

  K eval(const K& x) const {
    K r = ring_zero(wit);
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  // evaluate in another ring via a coefficient embedding
  template <class R, class Embed>
  R eval_in(const R& rwit, const R& x, Embed embed) const {
    R r = ring_zero(rwit);
    for (size_t i = c.size(); i-- > 0;) r = r * x + embed(c[i]);
    return r;
  }
};

template <class K>
bool operator==(const UPoly<K>& a, const UPoly<K>& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!ring_is_zero(a.c[i] - b.c[i])) return false;
  return true;
}
template <class K>
bool operator!=(const UPoly<K>& a, const UPoly<K>& b) { return !(a == b); }

template <class K>
UPoly<K> operator+(const UPoly<K>& a, const UPoly<K>& b) {
  std::vector<K> r;
  size_t n = std::max(a.c.size(), b.c.size());
  r.reserve(n);
  for (size_t i = 0; i < n; ++i) r.push_back(a.get(i) + b.get(i));
  return UPoly<K>(a.wit, std::move(r));
}
template <class K>
UPoly<K> operator-(const UPoly<K>& a, const UPoly<K>& b) {
  std::vector<K> r;
  size_t n = std::max(a.c.size(), b.c.size());
  r.reserve(n);
  for (size_t i = 0; i < n; ++i) r.push_back(a.get(i) - b.get(i));
  return UPoly<K>(a.wit, std::move(r));
}
template <class K>
UPoly<K> operator-(const UPoly<K>& a) {
  UPoly<K> r = a;
  for (auto& v : r.c) v = ring_zero(a.wit) - v;
  return r;
}
template <class K>
UPoly<K> operator*(const UPoly<K>& a, const UPoly<K>& b) {
  if (a.is_zero() || b.is_zero()) return UPoly<K>::zero(a.wit);
  std::vector<K> r(a.c.size() + b.c.size() - 1, ring_zero(a.wit));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (ring_is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
  }
  return UPoly<K>(a.wit, std::move(r));
}
template <class K>
UPoly<K> operator*(const UPoly<K>& a, const K& s) {
  UPoly<K> r = a;
  for (auto& v : r.c) v = v * s;
  r.trim();
  return r;
}

template <class K>
UPoly<K> shift_up(const UPoly<K>& a, size_t k) { // multiply by T^k
  if (a.is_zero()) return a;
  std::vector<K> r(k, ring_zero(a.wit));
  r.insert(r.end(), a.c.begin(), a.c.end());
  return UPoly<K>(a.wit, std::move(r));
}

template <class K>
UPoly<K> derivative(const UPoly<K>& a) {
  std::vector<K> r;
  for (size_t i = 1; i < a.c.size(); ++i) r.push_back(a.c[i] * ring_from_int(a.wit, (long long)i));
  return UPoly<K>(a.wit, std::move(r));
}

// a = q*b + r, deg r < deg b; b's leading coefficient must be invertible
template <class K>
std::pair<UPoly<K>, UPoly<K>> poly_divrem(const UPoly<K>& a, const UPoly<K>& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  K lcinv = ring_inv(b.lead());
  UPoly<K> q = UPoly<K>::zero(a.wit);
  UPoly<K> r = a;
  if (a.is_zero()) return {q, r};
  int db = b.degree();
  q.c.assign(std::max(0, a.degree() - db + 1), ring_zero(a.wit));
  while (r.degree() >= db) {
    int k = r.degree() - db;
    K cc = r.lead() * lcinv;
    q.c[k] = q.c[k] + cc;
    for (int i = 0; i <= db; ++i) r.c[k + i] = r.c[k + i] - cc * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

template <class K>
UPoly<K> poly_mod(const UPoly<K>& a, const UPoly<K>& b) { return poly_divrem(a, b).second; }

// exact division: remainder must be zero (hard error otherwise)
template <class K>
UPoly<K> poly_div_exact(const UPoly<K>& a, const UPoly<K>& b) {
  auto [q, r] = poly_divrem(a, b);
  if (!r.is_zero()) throw std::domain_error("exact polynomial division left a nonzero remainder");
  return q;
}

template <class K>
UPoly<K> make_monic(const UPoly<K>& a) {
  if (a.is_zero()) return a;
  return a * ring_inv(a.lead());
}

// monic Euclidean GCD over a field
template <class K>
UPoly<K> poly_gcd(UPoly<K> a, UPoly<K> b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  while (!b.is_zero()) {
    auto r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

template <class K>
UPoly<K> poly_gcd_many(const std::vector<UPoly<K>>& ps) {
  if (ps.empty()) throw std::domain_error("gcd of empty list");
  UPoly<K> g = ps[0];
  for (size_t i = 1; i < ps.size(); ++i) {
    if (g.degree() == 0) break;
    if (ps[i].is_zero() && g.is_zero()) continue;
    if (g.is_zero()) { g = make_monic(ps[i]); continue; }
    if (ps[i].is_zero()) { g = make_monic(g); continue; }
    g = poly_gcd(g, ps[i]);
  }
  return make_monic(g);
}

// extended Euclid: returns (g, s, t) monic g = s*a + t*b
template <class K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> poly_xgcd(UPoly<K> a, UPoly<K> b) {
  UPoly<K> s0 = UPoly<K>::constant(ring_one(a.wit)), s1 = UPoly<K>::zero(a.wit);
  UPoly<K> t0 = UPoly<K>::zero(a.wit), t1 = UPoly<K>::constant(ring_one(a.wit));
  while (!b.is_zero()) {
    auto [q, r] = poly_divrem(a, b);
    UPoly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
    a = std::move(b); b = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (a.is_zero()) throw std::domain_error("xgcd of zero polynomials");
  K li = ring_inv(a.lead());
  return {a * li, s0 * li, t0 * li};
}

// inverse of a modulo monic m (coprimality required)
template <class K>
UPoly<K> poly_invmod(const UPoly<K>& a, const UPoly<K>& m) {
  auto [g, s, t] = poly_xgcd(a, m);
  (void)t;
  if (g.degree() != 0) throw std::domain_error("polynomial not invertible modulo m");
  return poly_mod(s, m);
}

namespace detail {
template <class K>
bool char_is_p(const K&) { return false; }
inline bool char_is_p(const Fq&) { return true; }
inline u64 char_of(const Fq& w) { return w.ctx->p; }
template <class K>
u64 char_of(const K&) { return 0; }
inline Fq coeff_pth_root(const Fq& a) { return pth_root(a); }
template <class K>
K coeff_pth_root(const K&) { throw std::domain_error("p-th roots only in characteristic p"); }
} // namespace detail

// separable polynomial with the same root set; cofactor is the scalar divided out.
// In characteristic p, P' = 0 means P is a p-th power: take coefficient p-th roots
// and recurse.
template <class K>
std::pair<UPoly<K>, K> squarefree_part(const UPoly<K>& p) {
  if (p.is_zero()) throw std::domain_error("squarefree part of zero polynomial");
  if (p.degree() == 0) return {UPoly<K>::constant(ring_one(p.wit)), p.c[0]};
  UPoly<K> dp = derivative(p);
  if (dp.is_zero()) {
    if (!detail::char_is_p(p.wit)) throw std::domain_error("zero derivative outside characteristic p");
    u64 ch = detail::char_of(p.wit);
    std::vector<K> root;
    for (size_t i = 0; i < p.c.size(); i += (size_t)ch) root.push_back(detail::coeff_pth_root(p.c[i]));
    return squarefree_part(UPoly<K>(p.wit, std::move(root)));
  }
  UPoly<K> g = poly_gcd(p, dp);
  UPoly<K> q = poly_div_exact(p, g); // same roots as p, possibly still inseparable factors
  K lc = q.lead();
  UPoly<K> m = make_monic(q);
  // residual multiplicities divisible by char p survive the gcd quotient
  UPoly<K> dm = derivative(m);
  if (!dm.is_zero()) {
    UPoly<K> g2 = poly_gcd(m, dm);
    if (g2.degree() > 0) {
      auto [part, co] = squarefree_part(m);
      return {part, lc * co};
    }
  } else if (m.degree() > 0) {
    auto [part, co] = squarefree_part(m);
    return {part, lc * co};
  }
  return {m, lc};
}

// resultant over a field via the Euclidean remainder sequence
template <class K>
K resultant(UPoly<K> a, UPoly<K> b) {
  K one = ring_one(a.wit);
  if (a.is_zero() || b.is_zero()) return ring_zero(a.wit);
  K acc = one;
  while (true) {
    if (b.degree() == 0) {
      K r = acc;
      K lb = b.c[0];
      for (int i = 0; i < a.degree(); ++i) r = r * lb;
      return r;
    }
    auto rem = poly_mod(a, b);
    if (rem.is_zero()) return ring_zero(a.wit);
    int da = a.degree(), db = b.degree(), dr = rem.degree();
    // res(a,b) = (-1)^{da*db} lc(b)^{da-dr} res(b,rem)
    K lb = b.lead();
    K f = one;
    for (int i = 0; i < da - dr; ++i) f = f * lb;
    if ((da & 1) && (db & 1)) f = ring_zero(a.wit) - f;
    acc = acc * f;
    a = std::move(b);
    b = std::move(rem);
  }
}

// discriminant of monic q: (-1)^{d(d-1)/2} res(q, q'); zero iff q inseparable
template <class K>
K poly_discriminant(const UPoly<K>& q) {
  if (q.is_zero() || !q.is_monic()) throw std::domain_error("discriminant requires a monic polynomial");
  if (q.degree() == 0) return ring_one(q.wit);
  K r = resultant(q, derivative(q));
  int d = q.degree();
  if (((d * (d - 1)) / 2) & 1) r = ring_zero(q.wit) - r;
  return r;
}

// Lagrange interpolation over a field: nodes pairwise distinct
template <class K>
UPoly<K> lagrange_interpolate(const std::vector<K>& nodes, const std::vector<K>& values) {
  if (nodes.size() != values.size() || nodes.empty())
    throw std::domain_error("interpolation needs matching nonempty node/value lists");
  K w = nodes[0];
  // Newton form for O(n^2) build
  size_t n = nodes.size();
  std::vector<K> dd = values; // divided differences
  for (size_t lev = 1; lev < n; ++lev)
    for (size_t i = n - 1; i >= lev; --i) {
      K den = nodes[i] - nodes[i - lev];
      if (ring_is_zero(den)) throw std::domain_error("repeated interpolation node");
      dd[i] = (dd[i] - dd[i - 1]) * ring_inv(den);
      if (i == lev) break;
    }
  UPoly<K> r = UPoly<K>::zero(w);
  for (size_t i = n; i-- > 0;) {
    // r = r*(T - nodes[i]) + dd[i]
    UPoly<K> lin(w, {ring_zero(w) - nodes[i], ring_one(w)});
    r = r * lin + UPoly<K>::constant(dd[i]);
  }
  return r;
}

// modular exponentiation with a multi-word exponent given as bits (LSB first)
template <class K>
UPoly<K> poly_powmod_bits(const UPoly<K>& base, const std::vector<bool>& bits, const UPoly<K>& m) {
  UPoly<K> r = UPoly<K>::constant(ring_one(base.wit));
  r = poly_mod(r, m);
  UPoly<K> b = poly_mod(base, m);
  for (size_t i = bits.size(); i-- > 0;) {
    r = poly_mod(r * r, m);
    if (bits[i]) r = poly_mod(r * b, m);
  }
  return r;
}

} // namespace geores
