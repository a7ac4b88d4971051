#pragma once
#include <memory>
#include <stdexcept>

#include "geores/upoly.hpp"

namespace geores {

// Element of K[T]/(m) for a monic modulus m shared by reference.
template <class K>
struct ModPoly {
  std::shared_ptr<const UPoly<K>> mod;
  UPoly<K> rep;

  ModPoly(std::shared_ptr<const UPoly<K>> m, UPoly<K> r) : mod(std::move(m)), rep(poly_mod(std::move(r), *mod)) {}

  static std::shared_ptr<const UPoly<K>> make_modulus(UPoly<K> m) {
    if (!m.is_monic() || m.degree() < 1) throw std::domain_error("quotient modulus must be monic of degree >= 1");
    return std::make_shared<const UPoly<K>>(std::move(m));
  }
  static ModPoly from_constant(const std::shared_ptr<const UPoly<K>>& m, const K& v) {
    return ModPoly(m, UPoly<K>::constant(v));
  }
  static ModPoly generator(const std::shared_ptr<const UPoly<K>>& m) {
    return ModPoly(m, UPoly<K>::variable(m->wit));
  }
  bool is_zero() const { return rep.is_zero(); }
};

namespace quotdetail {
template <class K>
void check_mod(const ModPoly<K>& a, const ModPoly<K>& b) {
  if (a.mod != b.mod && !(*a.mod == *b.mod)) throw std::domain_error("quotient ring modulus mismatch");
}
} // namespace quotdetail

template <class K>
bool operator==(const ModPoly<K>& a, const ModPoly<K>& b) {
  quotdetail::check_mod(a, b);
  return (a.rep - b.rep).is_zero();
}
template <class K>
bool operator!=(const ModPoly<K>& a, const ModPoly<K>& b) { return !(a == b); }

template <class K>
ModPoly<K> operator+(const ModPoly<K>& a, const ModPoly<K>& b) {
  quotdetail::check_mod(a, b);
  return ModPoly<K>(a.mod, a.rep + b.rep);
}
template <class K>
ModPoly<K> operator-(const ModPoly<K>& a, const ModPoly<K>& b) {
  quotdetail::check_mod(a, b);
  return ModPoly<K>(a.mod, a.rep - b.rep);
}
template <class K>
ModPoly<K> operator-(const ModPoly<K>& a) {
  return ModPoly<K>(a.mod, -a.rep);
}
template <class K>
ModPoly<K> operator*(const ModPoly<K>& a, const ModPoly<K>& b) {
  quotdetail::check_mod(a, b);
  return ModPoly<K>(a.mod, a.rep * b.rep);
}

template <class K>
ModPoly<K> ring_zero(const ModPoly<K>& w) { return ModPoly<K>(w.mod, UPoly<K>::zero(w.rep.wit)); }
template <class K>
ModPoly<K> ring_one(const ModPoly<K>& w) { return ModPoly<K>(w.mod, UPoly<K>::constant(ring_one(w.rep.wit))); }
template <class K>
bool ring_is_zero(const ModPoly<K>& a) { return a.is_zero(); }
template <class K>
ModPoly<K> ring_from_int(const ModPoly<K>& w, long long v) {
  return ModPoly<K>(w.mod, UPoly<K>::constant(ring_from_int(w.rep.wit, v)));
}
template <class K>
ModPoly<K> ring_inv(const ModPoly<K>& a) {
  return ModPoly<K>(a.mod, poly_invmod(a.rep, *a.mod));
}

} // namespace geores
