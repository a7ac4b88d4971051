#pragma once
#include <map>
#include <stdexcept>
#include <vector>

#include "geores/ring.hpp"

namespace geores {

// Dense-coefficient multivariate polynomial: exponent-vector table with exact
// coefficients. The workhorse for q/rho/v coefficients and for test oracles.
template <class K>
struct MPoly {
  K wit;
  int nvars = 0;
  std::map<std::vector<int>, K> t; // exponent vector -> nonzero coefficient

  explicit MPoly(K witness, int nv = 0) : wit(std::move(witness)), nvars(nv) {}

  static MPoly zero(const K& w, int nv) { return MPoly(w, nv); }
  static MPoly constant(const K& v, int nv) {
    MPoly m(v, nv);
    if (!ring_is_zero(v)) m.t[std::vector<int>(nv, 0)] = v;
    return m;
  }
  static MPoly var(const K& w, int nv, int i, int power = 1) {
    MPoly m(w, nv);
    std::vector<int> e(nv, 0);
    e[i] = power;
    m.t[e] = ring_one(w);
    return m;
  }

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first == std::vector<int>(nvars, 0)); }
  K constant_value() const {
    if (t.empty()) return ring_zero(wit);
    auto it = t.find(std::vector<int>(nvars, 0));
    return it == t.end() ? ring_zero(wit) : it->second;
  }

  int total_degree() const { // -1 for zero
    int d = -1;
    for (auto& [e, c] : t) {
      int s = 0;
      for (int v : e) s += v;
      if (s > d) d = s;
    }
    return d;
  }
  int degree_in(int i) const {
    int d = -1;
    for (auto& [e, c] : t) d = std::max(d, e[i]);
    return d;
  }

  void add_term(const std::vector<int>& e, const K& c) {
    if (ring_is_zero(c)) return;
    auto it = t.find(e);
    if (it == t.end()) {
      t.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (ring_is_zero(it->second)) t.erase(it);
    }
  }

  K eval(const std::vector<K>& x) const {
    if ((int)x.size() != nvars) throw std::domain_error("evaluation arity mismatch");
    K r = ring_zero(wit);
    for (auto& [e, c] : t) {
      K m = c;
      for (int i = 0; i < nvars; ++i)
        for (int k = 0; k < e[i]; ++k) m = m * x[i];
      r = r + m;
    }
    return r;
  }
};

template <class K>
bool operator==(const MPoly<K>& a, const MPoly<K>& b) {
  if (a.nvars != b.nvars || a.t.size() != b.t.size()) return false;
  auto ia = a.t.begin(), ib = b.t.begin();
  for (; ia != a.t.end(); ++ia, ++ib)
    if (ia->first != ib->first || !ring_is_zero(ia->second - ib->second)) return false;
  return true;
}
template <class K>
bool operator!=(const MPoly<K>& a, const MPoly<K>& b) { return !(a == b); }

template <class K>
MPoly<K> operator+(const MPoly<K>& a, const MPoly<K>& b) {
  MPoly<K> r = a;
  for (auto& [e, c] : b.t) r.add_term(e, c);
  return r;
}
template <class K>
MPoly<K> operator-(const MPoly<K>& a, const MPoly<K>& b) {
  MPoly<K> r = a;
  for (auto& [e, c] : b.t) r.add_term(e, ring_zero(a.wit) - c);
  return r;
}
template <class K>
MPoly<K> operator-(const MPoly<K>& a) {
  MPoly<K> r(a.wit, a.nvars);
  for (auto& [e, c] : a.t) r.t[e] = ring_zero(a.wit) - c;
  return r;
}
template <class K>
MPoly<K> operator*(const MPoly<K>& a, const MPoly<K>& b) {
  MPoly<K> r(a.wit, a.nvars);
  std::vector<int> e(a.nvars);
  for (auto& [ea, ca] : a.t)
    for (auto& [eb, cb] : b.t) {
      for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}
template <class K>
MPoly<K> operator*(const MPoly<K>& a, const K& s) {
  MPoly<K> r(a.wit, a.nvars);
  for (auto& [e, c] : a.t) r.add_term(e, c * s);
  return r;
}

template <class K>
MPoly<K> mpoly_pow(const MPoly<K>& a, int n) {
  MPoly<K> r = MPoly<K>::constant(ring_one(a.wit), a.nvars);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

template <class K>
MPoly<K> mpoly_derivative(const MPoly<K>& a, int var) {
  MPoly<K> r(a.wit, a.nvars);
  for (auto& [e, c] : a.t) {
    if (e[var] == 0) continue;
    std::vector<int> e2 = e;
    e2[var] -= 1;
    r.add_term(e2, c * ring_from_int(a.wit, e[var]));
  }
  return r;
}

// substitute each variable by a polynomial (same nvars in the target space)
template <class K>
MPoly<K> mpoly_subst(const MPoly<K>& a, const std::vector<MPoly<K>>& images) {
  if ((int)images.size() != a.nvars) throw std::domain_error("substitution arity mismatch");
  int nv2 = images.empty() ? 0 : images[0].nvars;
  MPoly<K> r(a.wit, nv2);
  for (auto& [e, c] : a.t) {
    MPoly<K> m = MPoly<K>::constant(c, nv2);
    for (int i = 0; i < a.nvars; ++i)
      for (int k = 0; k < e[i]; ++k) m = m * images[i];
    r = r + m;
  }
  return r;
}

// specialize the first k variables to values; result lives in the remaining vars
template <class K>
MPoly<K> mpoly_specialize_prefix(const MPoly<K>& a, const std::vector<K>& vals) {
  int k = (int)vals.size();
  if (k > a.nvars) throw std::domain_error("too many specialization values");
  MPoly<K> r(a.wit, a.nvars - k);
  for (auto& [e, c] : a.t) {
    K m = c;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < e[i]; ++j) m = m * vals[i];
    std::vector<int> e2(e.begin() + k, e.end());
    r.add_term(e2, m);
  }
  return r;
}

// ring customization points so MPoly can serve as a coefficient ring
template <class K>
MPoly<K> ring_zero(const MPoly<K>& w) { return MPoly<K>::zero(w.wit, w.nvars); }
template <class K>
MPoly<K> ring_one(const MPoly<K>& w) { return MPoly<K>::constant(ring_one(w.wit), w.nvars); }
template <class K>
bool ring_is_zero(const MPoly<K>& a) { return a.is_zero(); }
template <class K>
MPoly<K> ring_from_int(const MPoly<K>& w, long long v) {
  return MPoly<K>::constant(ring_from_int(w.wit, v), w.nvars);
}
template <class K>
MPoly<K> ring_inv(const MPoly<K>& a) {
  if (!a.is_constant() || a.is_zero()) throw std::domain_error("polynomial inverse exists only for nonzero constants");
  return MPoly<K>::constant(ring_inv(a.constant_value()), a.nvars);
}

using FqPoly = MPoly<Fq>;

} // namespace geores
