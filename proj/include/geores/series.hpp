#pragma once
#include <memory>
#include <stdexcept>
#include <vector>

#include "geores/densepoly.hpp"
#include "geores/ring.hpp"

namespace geores {

// Monomial enumeration for r variables, total degree <= kappa, graded order.
// Within a degree stratum the order is lexicographic descending in e[0], then
// e[1], ... so ranks are computable in closed form from binomials.
struct SeriesLayout {
  int r, kappa;
  std::vector<std::vector<long long>> binom; // binom[n][k], n <= kappa + r
  std::vector<std::vector<int>> exps;        // index -> exponent vector

  SeriesLayout(int r_, int kappa_) : r(r_), kappa(kappa_) {
    int n = kappa + r + 1;
    binom.assign(n + 1, std::vector<long long>(r + 1, 0));
    for (int i = 0; i <= n; ++i) {
      binom[i][0] = 1;
      for (int k = 1; k <= r && k <= i; ++k)
        binom[i][k] = binom[i - 1][k - 1] + (i - 1 >= k ? binom[i - 1][k] : 0);
    }
    exps.reserve(size());
    std::vector<int> e(r, 0);
    for (int d = 0; d <= kappa; ++d) gen(e, 0, d);
  }

  void gen(std::vector<int>& e, int pos, int rem) {
    if (pos == r - 1) {
      e[pos] = rem;
      exps.push_back(e);
      return;
    }
    for (int v = rem; v >= 0; --v) {
      e[pos] = v;
      gen(e, pos + 1, rem - v);
    }
  }

  long long count_deg(int d) const { return binom[d + r - 1][r - 1]; } // monomials of exact degree d
  long long size_to_deg(int d) const { return binom[d + r][r]; }       // total degree <= d
  size_t size() const { return (size_t)size_to_deg(kappa); }

  size_t rank(const std::vector<int>& e) const {
    int d = 0;
    for (int v : e) d += v;
    long long idx = d > 0 ? size_to_deg(d - 1) : 0;
    // within the stratum: count monomials preceding e (higher lead exponents first)
    int rem = d;
    for (int pos = 0; pos < r - 1; ++pos) {
      for (int v = rem; v > e[pos]; --v) idx += binom[(rem - v) + (r - pos - 2)][r - pos - 2];
      rem -= e[pos];
    }
    return (size_t)idx;
  }
};

inline std::shared_ptr<const SeriesLayout> series_layout(int r, int kappa) {
  static std::vector<std::shared_ptr<const SeriesLayout>> cache;
  for (auto& l : cache)
    if (l->r == r && l->kappa == kappa) return l;
  auto l = std::make_shared<SeriesLayout>(r, kappa);
  cache.push_back(l);
  return l;
}

namespace seriesdetail {

// truncated product of dense univariate coefficient vectors (both length <= cap)
template <class K>
void mul_trunc_1d(const std::vector<K>& a, const std::vector<K>& b, std::vector<K>& out,
                  size_t cap, const K& wit) {
  out.assign(cap, ring_zero(wit));
  size_t na = std::min(a.size(), cap), nb = std::min(b.size(), cap);
  if (na * nb <= 4096) {
    for (size_t i = 0; i < na; ++i) {
      if (ring_is_zero(a[i])) continue;
      size_t jl = std::min(nb, cap - i);
      for (size_t j = 0; j < jl; ++j) out[i + j] = out[i + j] + a[i] * b[j];
    }
    return;
  }
  // Karatsuba, then truncate
  std::vector<K> full;
  struct Rec {
    const K& wit;
    std::vector<K> operator()(const K* a, size_t na, const K* b, size_t nb) {
      std::vector<K> r;
      if (na == 0 || nb == 0) return r;
      if (na < 32 || nb < 32) {
        r.assign(na + nb - 1, ring_zero(wit));
        for (size_t i = 0; i < na; ++i) {
          if (ring_is_zero(a[i])) continue;
          for (size_t j = 0; j < nb; ++j) r[i + j] = r[i + j] + a[i] * b[j];
        }
        return r;
      }
      size_t m = std::max(na, nb) / 2;
      size_t la = std::min(na, m), lb = std::min(nb, m);
      std::vector<K> z0 = (*this)(a, la, b, lb);
      std::vector<K> z2 = (*this)(a + la, na - la, b + lb, nb - lb);
      std::vector<K> sa(a, a + la), sb(b, b + lb);
      sa.resize(std::max(la, na - la), ring_zero(wit));
      sb.resize(std::max(lb, nb - lb), ring_zero(wit));
      for (size_t i = 0; i < na - la; ++i) sa[i] = sa[i] + a[la + i];
      for (size_t i = 0; i < nb - lb; ++i) sb[i] = sb[i] + b[lb + i];
      std::vector<K> z1 = (*this)(sa.data(), sa.size(), sb.data(), sb.size());
      // z1 -= z0 + z2
      for (size_t i = 0; i < z0.size(); ++i) z1[i] = z1[i] - z0[i];
      for (size_t i = 0; i < z2.size(); ++i) {
        if (i < z1.size()) z1[i] = z1[i] - z2[i];
      }
      r.assign(na + nb - 1, ring_zero(wit));
      for (size_t i = 0; i < z0.size(); ++i) r[i] = r[i] + z0[i];
      for (size_t i = 0; i < z1.size(); ++i)
        if (m + i < r.size()) r[m + i] = r[m + i] + z1[i];
      for (size_t i = 0; i < z2.size(); ++i)
        if (la + lb + i < r.size()) r[la + lb + i] = r[la + lb + i] + z2[i];
      return r;
    }
  } rec{wit};
  full = rec(a.data(), na, b.data(), nb);
  for (size_t i = 0; i < cap && i < full.size(); ++i) out[i] = full[i];
}

} // namespace seriesdetail

// Truncated multivariate power series: r variables, total degree cut at kappa.
template <class K>
struct TSeries {
  K wit;
  std::shared_ptr<const SeriesLayout> lay;
  std::vector<K> c; // dense by layout rank

  TSeries(K witness, int r, int kappa)
      : wit(std::move(witness)), lay(series_layout(r, kappa)), c(lay->size(), ring_zero(wit)) {}

  int vars() const { return lay->r; }
  int precision() const { return lay->kappa; }

  static TSeries constant(const K& v, int r, int kappa) {
    TSeries s(v, r, kappa);
    s.c[0] = v;
    return s;
  }
  static TSeries variable(const K& w, int r, int kappa, int i) {
    TSeries s(w, r, kappa);
    std::vector<int> e(r, 0);
    e[i] = 1;
    if (kappa >= 1) s.c[s.lay->rank(e)] = ring_one(w);
    return s;
  }

  K coeff(const std::vector<int>& e) const {
    int d = 0;
    for (int v : e) d += v;
    if (d > precision()) return ring_zero(wit);
    return c[lay->rank(e)];
  }
  void set_coeff(const std::vector<int>& e, const K& v) { c[lay->rank(e)] = v; }

  K constant_term() const { return c[0]; }
  bool is_zero() const {
    for (auto& v : c) if (!ring_is_zero(v)) return false;
    return true;
  }

  // zero all coefficients of total degree > d
  void truncate_to(int d) {
    if (d >= precision()) return;
    size_t keep = (size_t)lay->size_to_deg(std::max(d, 0));
    if (d < 0) keep = 0;
    for (size_t i = keep; i < c.size(); ++i) c[i] = ring_zero(wit);
  }
};

namespace seriesdetail {
template <class K>
void check_compat(const TSeries<K>& a, const TSeries<K>& b) {
  if (a.vars() != b.vars() || a.precision() != b.precision())
    throw std::domain_error("series variable count / precision mismatch");
}
} // namespace seriesdetail

template <class K>
bool operator==(const TSeries<K>& a, const TSeries<K>& b) {
  seriesdetail::check_compat(a, b);
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!ring_is_zero(a.c[i] - b.c[i])) return false;
  return true;
}
template <class K>
bool operator!=(const TSeries<K>& a, const TSeries<K>& b) { return !(a == b); }

template <class K>
TSeries<K> operator+(const TSeries<K>& a, const TSeries<K>& b) {
  seriesdetail::check_compat(a, b);
  TSeries<K> r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  return r;
}
template <class K>
TSeries<K> operator-(const TSeries<K>& a, const TSeries<K>& b) {
  seriesdetail::check_compat(a, b);
  TSeries<K> r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
  return r;
}
template <class K>
TSeries<K> operator-(const TSeries<K>& a) {
  TSeries<K> r = a;
  for (auto& v : r.c) v = ring_zero(a.wit) - v;
  return r;
}

template <class K>
TSeries<K> operator*(const TSeries<K>& a, const TSeries<K>& b) {
  seriesdetail::check_compat(a, b);
  TSeries<K> r(a.wit, a.vars(), a.precision());
  if (a.vars() == 1) {
    seriesdetail::mul_trunc_1d(a.c, b.c, r.c, (size_t)a.precision() + 1, a.wit);
    return r;
  }
  const auto& lay = *a.lay;
  std::vector<int> e(a.vars());
  std::vector<int> dega(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) {
    int d = 0;
    for (int v : lay.exps[i]) d += v;
    dega[i] = d;
  }
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (ring_is_zero(a.c[i])) continue;
    const auto& ea = lay.exps[i];
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (dega[i] + dega[j] > a.precision()) continue;
      if (ring_is_zero(b.c[j])) continue;
      const auto& eb = lay.exps[j];
      for (int v = 0; v < a.vars(); ++v) e[v] = ea[v] + eb[v];
      size_t k = lay.rank(e);
      r.c[k] = r.c[k] + a.c[i] * b.c[j];
    }
  }
  return r;
}

template <class K>
TSeries<K> operator*(const TSeries<K>& a, const K& s) {
  TSeries<K> r = a;
  for (auto& v : r.c) v = v * s;
  return r;
}

// Newton inversion with doubling precision; requires invertible constant term.
template <class K>
TSeries<K> series_invert(const TSeries<K>& a) {
  if (ring_is_zero(a.constant_term()))
    throw std::domain_error("series inversion at a zero constant term (expansion point on the denominator's zero set)");
  int kappa = a.precision();
  TSeries<K> y = TSeries<K>::constant(ring_inv(a.constant_term()), a.vars(), kappa);
  K two = ring_from_int(a.wit, 2);
  for (int m = 1;; m *= 2) {
    int prec = std::min(m, kappa);
    // y <- y*(2 - a*y) truncated at degree prec
    TSeries<K> t = a * y;
    TSeries<K> corr = TSeries<K>::constant(two, a.vars(), kappa) - t;
    y = y * corr;
    y.truncate_to(prec);
    if (prec == kappa) break;
  }
  return y;
}

// ring customization points (series as coefficient ring)
template <class K>
TSeries<K> ring_zero(const TSeries<K>& w) { return TSeries<K>(w.wit, w.vars(), w.precision()); }
template <class K>
TSeries<K> ring_one(const TSeries<K>& w) { return TSeries<K>::constant(ring_one(w.wit), w.vars(), w.precision()); }
template <class K>
bool ring_is_zero(const TSeries<K>& a) { return a.is_zero(); }
template <class K>
TSeries<K> ring_from_int(const TSeries<K>& w, long long v) {
  return TSeries<K>::constant(ring_from_int(w.wit, v), w.vars(), w.precision());
}
template <class K>
TSeries<K> ring_inv(const TSeries<K>& a) { return series_invert(a); }

// conversions to/from dense polynomials (same variable order)
template <class K>
TSeries<K> series_from_mpoly(const MPoly<K>& p, int kappa) {
  TSeries<K> s(p.wit, p.nvars, kappa);
  for (auto& [e, c] : p.t) {
    int d = 0;
    for (int v : e) d += v;
    if (d <= kappa) s.set_coeff(e, c);
  }
  return s;
}
template <class K>
MPoly<K> mpoly_from_series(const TSeries<K>& s) {
  MPoly<K> p(s.wit, s.vars());
  for (size_t i = 0; i < s.c.size(); ++i)
    if (!ring_is_zero(s.c[i])) p.t[s.lay->exps[i]] = s.c[i];
  return p;
}

} // namespace geores
