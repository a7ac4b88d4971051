#pragma once
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "geores/rng.hpp"

namespace geores {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add_mod(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul_mod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }
inline u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 inv_mod(u64 a, u64 p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod " + std::to_string(p));
  return pow_mod(a % p, p - 2, p);
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a % n, d, n);
    if (x <= 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

// --- dense F_p[x] helpers for context-internal arithmetic (coeff ascending) ---
namespace fpx {

inline void trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const std::vector<u64>& a) { return (int)a.size() - 1; }

inline std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

inline std::vector<u64> sub(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

// remainder of a by monic-after-scaling b
inline std::vector<u64> rem(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
  if (b.empty()) throw std::domain_error("fpx::rem by zero");
  u64 lcinv = inv_mod(b.back(), p);
  while (deg(a) >= deg(b)) {
    u64 c = mul_mod(a.back(), lcinv, p);
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = sub_mod(a[shift + i], mul_mod(c, b[i], p), p);
    trim(a);
  }
  return a;
}

inline std::vector<u64> gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
  trim(a); trim(b);
  while (!b.empty()) {
    auto r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 lcinv = inv_mod(a.back(), p);
    for (auto& c : a) c = mul_mod(c, lcinv, p);
  }
  return a;
}

inline std::vector<u64> mulrem(const std::vector<u64>& a, const std::vector<u64>& b,
                               const std::vector<u64>& m, u64 p) {
  return rem(mul(a, b, p), m, p);
}

// x^e mod m, e given in base-p digit form is unnecessary: e fits u64 chains below
inline std::vector<u64> powrem(std::vector<u64> base, u64 e, const std::vector<u64>& m, u64 p) {
  std::vector<u64> r{1};
  base = rem(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mulrem(r, base, m, p);
    base = mulrem(base, base, m, p);
    e >>= 1;
  }
  return r;
}

} // namespace fpx

struct FieldContext;
using Ctx = std::shared_ptr<const FieldContext>;

// F_{p^e}; elements are coefficient vectors mod the defining polynomial.
struct FieldContext {
  u64 p;
  int e;
  std::vector<u64> defining; // monic, degree e; {0,1} for e = 1

  FieldContext(u64 p_, int e_, std::vector<u64> def) : p(p_), e(e_), defining(std::move(def)) {
    if (!is_prime_u64(p)) throw std::domain_error("field characteristic not prime: " + std::to_string(p));
    if (e < 1 || (int)defining.size() != e + 1 || defining.back() != 1)
      throw std::domain_error("defining polynomial must be monic of degree e");
  }
};

inline bool irreducible_over_fp(const std::vector<u64>& f, u64 p) {
  int n = fpx::deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  // x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for prime l | n
  std::vector<u64> x{0, 1};
  std::vector<std::vector<u64>> frob(n + 1); // x after k Frobenius applications
  frob[0] = x;
  for (int k = 1; k <= n; ++k) frob[k] = fpx::powrem(frob[k - 1], p, f, p);
  if (fpx::sub(frob[n], x, p) != std::vector<u64>{}) return false;
  for (int l = 2; l <= n; ++l) {
    if (n % l) continue;
    bool lp = true;
    for (int q = 2; q * q <= l; ++q) if (l % q == 0) { lp = false; break; }
    if (!lp) continue;
    auto d = fpx::gcd(fpx::sub(frob[n / l], x, p), f, p);
    if (fpx::deg(d) != 0) return false;
  }
  return true;
}

inline Ctx make_prime_field(u64 p) {
  return std::make_shared<FieldContext>(p, 1, std::vector<u64>{0, 1});
}

// seeded random search for a monic irreducible of degree e (lazy extension construction)
inline Ctx make_extension(u64 p, int e, Rng rng = Rng(0x9ea123)) {
  if (e == 1) return make_prime_field(p);
  for (int tries = 0; tries < 20000; ++tries) {
    std::vector<u64> f(e + 1, 0);
    f[e] = 1;
    for (int i = 0; i < e; ++i) f[i] = rng.below(p);
    if (irreducible_over_fp(f, p)) return std::make_shared<FieldContext>(p, e, std::move(f));
  }
  throw std::runtime_error("no irreducible polynomial found (search budget exhausted)");
}

struct Fq {
  Ctx ctx;
  std::vector<u64> c; // length ctx->e

  Fq() = default;
  Fq(Ctx cx, std::vector<u64> cc) : ctx(std::move(cx)), c(std::move(cc)) {
    c.resize(ctx->e, 0);
    for (auto& v : c) v %= ctx->p;
  }

  static Fq zero(const Ctx& cx) { return Fq(cx, {}); }
  static Fq one(const Ctx& cx) { return Fq(cx, {1 % cx->p}); }
  static Fq from_int(const Ctx& cx, long long v) {
    long long m = (long long)(v % (long long)cx->p);
    if (m < 0) m += (long long)cx->p;
    return Fq(cx, {(u64)m});
  }

  bool is_zero() const {
    for (u64 v : c) if (v) return false;
    return true;
  }
  bool in_base_field() const {
    for (size_t i = 1; i < c.size(); ++i) if (c[i]) return false;
    return true;
  }
  u64 base_value() const {
    if (!in_base_field()) throw std::domain_error("element not in the base field");
    return c.empty() ? 0 : c[0];
  }
};

namespace detail {
// promote base-field (e = 1) values into the partner's context
inline void align(Fq& a, Fq& b) {
  if (a.ctx == b.ctx) return;
  if (a.ctx->p != b.ctx->p) throw std::domain_error("field characteristic mismatch");
  if (a.ctx->e == 1 && b.ctx->e >= 1) { a = Fq(b.ctx, {a.c.empty() ? 0 : a.c[0]}); return; }
  if (b.ctx->e == 1) { b = Fq(a.ctx, {b.c.empty() ? 0 : b.c[0]}); return; }
  throw std::domain_error("incompatible field extensions");
}
} // namespace detail

inline bool operator==(const Fq& a, const Fq& b) {
  Fq x = a, y = b;
  detail::align(x, y);
  return x.c == y.c;
}
inline bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

inline Fq operator+(const Fq& a, const Fq& b) {
  Fq x = a, y = b;
  detail::align(x, y);
  for (int i = 0; i < x.ctx->e; ++i) x.c[i] = add_mod(x.c[i], y.c[i], x.ctx->p);
  return x;
}
inline Fq operator-(const Fq& a, const Fq& b) {
  Fq x = a, y = b;
  detail::align(x, y);
  for (int i = 0; i < x.ctx->e; ++i) x.c[i] = sub_mod(x.c[i], y.c[i], x.ctx->p);
  return x;
}
inline Fq operator-(const Fq& a) {
  Fq x = a;
  for (auto& v : x.c) v = v ? x.ctx->p - v : 0;
  return x;
}
inline Fq operator*(const Fq& a, const Fq& b) {
  Fq x = a, y = b;
  detail::align(x, y);
  if (x.ctx->e == 1) return Fq(x.ctx, {mul_mod(x.c[0], y.c[0], x.ctx->p)});
  auto r = fpx::mulrem(x.c, y.c, x.ctx->defining, x.ctx->p);
  return Fq(x.ctx, std::move(r));
}

inline Fq inv(const Fq& a) {
  if (a.is_zero()) throw std::domain_error("inverse of zero field element");
  const u64 p = a.ctx->p;
  if (a.ctx->e == 1) return Fq(a.ctx, {inv_mod(a.c[0], p)});
  // extended Euclid in F_p[x] against the defining polynomial
  std::vector<u64> r0 = a.ctx->defining, r1 = a.c;
  fpx::trim(r1);
  std::vector<u64> t0, t1{1};
  while (!r1.empty()) {
    // divide r0 by r1
    std::vector<u64> q;
    std::vector<u64> rem = r0;
    u64 lcinv = inv_mod(r1.back(), p);
    while (fpx::deg(rem) >= fpx::deg(r1)) {
      u64 cc = mul_mod(rem.back(), lcinv, p);
      size_t shift = rem.size() - r1.size();
      if (q.size() < shift + 1) q.resize(shift + 1, 0);
      q[shift] = add_mod(q[shift], cc, p);
      for (size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = sub_mod(rem[shift + i], mul_mod(cc, r1[i], p), p);
      fpx::trim(rem);
    }
    std::vector<u64> t2 = fpx::sub(t0, fpx::mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (fpx::deg(r0) != 0) throw std::domain_error("element not invertible (context corrupt)");
  u64 s = inv_mod(r0[0], p);
  for (auto& v : t0) v = mul_mod(v, s, p);
  return Fq(a.ctx, std::move(t0));
}
inline Fq operator/(const Fq& a, const Fq& b) { return a * inv(b); }

inline Fq pow(Fq a, u64 n) {
  Fq r = Fq::one(a.ctx);
  while (n) {
    if (n & 1) r = r * a;
    a = a * a;
    n >>= 1;
  }
  return r;
}

// x -> x^p, an automorphism; iterate e-1 times for the unique p-th root
inline Fq frobenius(const Fq& a) { return pow(a, a.ctx->p); }
inline Fq pth_root(const Fq& a) {
  Fq r = a;
  for (int i = 0; i < a.ctx->e - 1; ++i) r = frobenius(r);
  return r;
}

inline Fq random_element(const Ctx& cx, Rng& rng) {
  std::vector<u64> c(cx->e);
  for (auto& v : c) v = rng.below(cx->p);
  return Fq(cx, std::move(c));
}

// canonical order: lexicographic on the coefficient vector, used to fix root order
inline bool canonical_less(const Fq& a, const Fq& b) {
  Fq x = a, y = b;
  detail::align(x, y);
  return x.c < y.c;
}

inline std::string to_string(const Fq& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a.c[i]);
  }
  return s + "]";
}

} // namespace geores
