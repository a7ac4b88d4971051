#pragma once
#include <stdexcept>
#include <vector>

#include "geores/ring.hpp"

namespace geores {

// First-order jet a + sum_i d_i * eps_i with eps_i * eps_j = 0: carries one
// value plus m simultaneous first-order perturbations.
template <class K>
struct Jet {
  K a;
  std::vector<K> d;

  explicit Jet(K val, size_t m = 0) : a(std::move(val)), d(m, ring_zero(a)) {}
  Jet(K val, std::vector<K> der) : a(std::move(val)), d(std::move(der)) {}
};

template <class K>
Jet<K> operator+(const Jet<K>& x, const Jet<K>& y) {
  Jet<K> r = x;
  r.a = r.a + y.a;
  for (size_t i = 0; i < r.d.size(); ++i) r.d[i] = r.d[i] + y.d[i];
  return r;
}
template <class K>
Jet<K> operator-(const Jet<K>& x, const Jet<K>& y) {
  Jet<K> r = x;
  r.a = r.a - y.a;
  for (size_t i = 0; i < r.d.size(); ++i) r.d[i] = r.d[i] - y.d[i];
  return r;
}
template <class K>
Jet<K> operator-(const Jet<K>& x) {
  Jet<K> r = x;
  r.a = ring_zero(x.a) - r.a;
  for (auto& v : r.d) v = ring_zero(x.a) - v;
  return r;
}
template <class K>
Jet<K> operator*(const Jet<K>& x, const Jet<K>& y) {
  Jet<K> r(x.a * y.a, x.d.size());
  for (size_t i = 0; i < r.d.size(); ++i) r.d[i] = x.a * y.d[i] + x.d[i] * y.a;
  return r;
}

template <class K>
Jet<K> ring_zero(const Jet<K>& w) { return Jet<K>(ring_zero(w.a), w.d.size()); }
template <class K>
Jet<K> ring_one(const Jet<K>& w) { return Jet<K>(ring_one(w.a), w.d.size()); }
template <class K>
bool ring_is_zero(const Jet<K>& x) {
  if (!ring_is_zero(x.a)) return false;
  for (auto& v : x.d) if (!ring_is_zero(v)) return false;
  return true;
}
template <class K>
Jet<K> ring_from_int(const Jet<K>& w, long long v) { return Jet<K>(ring_from_int(w.a, v), w.d.size()); }
template <class K>
Jet<K> ring_inv(const Jet<K>& x) {
  K ia = ring_inv(x.a);
  Jet<K> r(ia, x.d.size());
  K m = ring_zero(x.a) - ia * ia;
  for (size_t i = 0; i < r.d.size(); ++i) r.d[i] = m * x.d[i];
  return r;
}

} // namespace geores
