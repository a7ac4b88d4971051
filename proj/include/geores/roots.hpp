#pragma once
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <vector>

#include "geores/upoly.hpp"

namespace geores {

using BigInt = boost::multiprecision::cpp_int;

inline std::vector<bool> bits_of(BigInt n) {
  std::vector<bool> b;
  while (n > 0) {
    b.push_back((n & 1) != 0);
    n >>= 1;
  }
  return b; // LSB first
}

struct RootSet {
  Ctx ctx;               // splitting context (possibly the input context)
  std::vector<Fq> roots; // with multiplicity, canonically ordered
};

namespace rootdetail {

// y -> y^n mod f for u64 n
inline UPoly<Fq> powmod_u64(UPoly<Fq> y, u64 n, const UPoly<Fq>& f) {
  UPoly<Fq> r = poly_mod(UPoly<Fq>::constant(ring_one(y.wit)), f);
  y = poly_mod(y, f);
  while (n) {
    if (n & 1) r = poly_mod(r * y, f);
    y = poly_mod(y * y, f);
    n >>= 1;
  }
  return r;
}

inline UPoly<Fq> powmod_big(UPoly<Fq> y, const BigInt& n, const UPoly<Fq>& f) {
  auto b = bits_of(n);
  UPoly<Fq> r = poly_mod(UPoly<Fq>::constant(ring_one(y.wit)), f);
  y = poly_mod(y, f);
  for (bool bit : b) { // LSB-first square-and-multiply
    if (bit) r = poly_mod(r * y, f);
    y = poly_mod(y * y, f);
  }
  return r;
}

// roots of squarefree g that lie inside g's own context, appended to out
inline void linear_roots_in_context(const UPoly<Fq>& g, std::vector<Fq>& out, Rng& rng) {
  const Ctx& cx = g.wit.ctx;
  BigInt q = 1;
  for (int i = 0; i < cx->e; ++i) q *= cx->p;
  if (q <= 16384) {
    // deterministic exhaustive scan
    std::vector<u64> idx(cx->e, 0);
    while (true) {
      Fq x(cx, idx);
      if (ring_is_zero(g.eval(x))) out.push_back(x);
      int k = 0;
      while (k < cx->e && ++idx[k] == cx->p) idx[k++] = 0;
      if (k == cx->e) break;
    }
    return;
  }
  // restrict to the product of linear factors: gcd(x^q - x, g)
  UPoly<Fq> xq = powmod_big(UPoly<Fq>::variable(g.wit), q, g);
  UPoly<Fq> lin = poly_gcd(xq - poly_mod(UPoly<Fq>::variable(g.wit), g), g);
  if (lin.degree() <= 0) return;
  if (cx->p == 2) throw std::domain_error("root finding over large characteristic-2 fields is unsupported");
  BigInt half = (q - 1) / 2;
  // equal-degree splitting into linear factors
  std::vector<UPoly<Fq>> stack{lin};
  while (!stack.empty()) {
    UPoly<Fq> h = stack.back();
    stack.pop_back();
    if (h.degree() == 1) {
      out.push_back(ring_zero(g.wit) - h.c[0] * ring_inv(h.c[1]));
      continue;
    }
    for (int tries = 0; tries < 200; ++tries) {
      std::vector<Fq> rc;
      for (int i = 0; i < h.degree(); ++i) rc.push_back(random_element(cx, rng));
      UPoly<Fq> r(g.wit, std::move(rc));
      if (r.is_zero()) continue;
      UPoly<Fq> s = powmod_big(r, half, h) - poly_mod(UPoly<Fq>::constant(ring_one(g.wit)), h);
      if (s.is_zero()) continue;
      UPoly<Fq> d = poly_gcd(s, h);
      if (d.degree() > 0 && d.degree() < h.degree()) {
        stack.push_back(d);
        stack.push_back(poly_div_exact(h, d));
        break;
      }
      if (tries == 199) throw std::runtime_error("equal-degree splitting budget exhausted");
    }
  }
}

// least common multiple of irreducible factor degrees of squarefree f
inline int splitting_degree(const UPoly<Fq>& f) {
  UPoly<Fq> rest = make_monic(f);
  UPoly<Fq> x = UPoly<Fq>::variable(f.wit);
  UPoly<Fq> h = poly_mod(x, rest);
  long long l = 1;
  int k = 0;
  while (rest.degree() > 0) {
    ++k;
    // h = h^(p^e) mod rest  (one ground-field Frobenius)
    std::vector<bool> pb = bits_of(BigInt(f.wit.ctx->p));
    for (int i = 0; i < f.wit.ctx->e; ++i) {
      UPoly<Fq> y = poly_mod(UPoly<Fq>::constant(ring_one(f.wit)), rest);
      UPoly<Fq> b = h;
      for (bool bit : pb) {
        if (bit) y = poly_mod(y * b, rest);
        b = poly_mod(b * b, rest);
      }
      h = y;
    }
    UPoly<Fq> g = poly_gcd(h - poly_mod(x, rest), rest);
    if (g.degree() > 0) {
      l = std::lcm(l, (long long)k);
      rest = poly_div_exact(rest, g);
      h = poly_mod(h, rest);
    }
    if (k > f.degree()) break;
  }
  return (int)l;
}

} // namespace rootdetail

// all roots of q in its splitting field, with multiplicity, canonically ordered.
// Extension construction is seeded; root order is canonical (lex on coefficients).
inline RootSet find_roots(const UPoly<Fq>& q, Rng rng = Rng(0x5eed)) {
  if (q.is_zero()) throw std::domain_error("root finding on the zero polynomial");
  Ctx cx = q.wit.ctx;
  if (q.degree() == 0) return {cx, {}};
  auto [sf, co] = squarefree_part(q);
  (void)co;
  int spl = rootdetail::splitting_degree(sf);
  Ctx target = cx;
  UPoly<Fq> qt = q;
  if (spl > 1) {
    int bige = cx->e * spl;
    target = make_extension(cx->p, bige, rng.fork(71));
    if (cx->e == 1) {
      std::vector<Fq> cc;
      for (auto& v : q.c) cc.push_back(Fq(target, {v.base_value()}));
      qt = UPoly<Fq>(Fq::zero(target), std::move(cc));
    } else {
      // embed: send the old generator to the canonical root of its defining polynomial
      std::vector<Fq> defc;
      for (u64 v : cx->defining) defc.push_back(Fq(target, {v}));
      UPoly<Fq> defpoly(Fq::zero(target), std::move(defc));
      std::vector<Fq> gens;
      Rng r2 = rng.fork(72);
      rootdetail::linear_roots_in_context(defpoly, gens, r2);
      if (gens.empty()) throw std::runtime_error("subfield embedding failed (no generator image)");
      std::sort(gens.begin(), gens.end(), canonical_less);
      Fq g = gens[0];
      auto embed = [&](const Fq& v) {
        Fq acc = Fq::zero(target);
        for (size_t i = v.c.size(); i-- > 0;) acc = acc * g + Fq(target, {v.c[i]});
        return acc;
      };
      std::vector<Fq> cc;
      for (auto& v : q.c) cc.push_back(embed(v));
      qt = UPoly<Fq>(Fq::zero(target), std::move(cc));
    }
  }
  // distinct roots of the squarefree part, in the target context
  auto [sft, co2] = squarefree_part(qt);
  (void)co2;
  std::vector<Fq> distinct;
  Rng r3 = rng.fork(73);
  rootdetail::linear_roots_in_context(sft, distinct, r3);
  std::sort(distinct.begin(), distinct.end(), canonical_less);
  // multiplicities by deflation
  std::vector<Fq> out;
  for (const Fq& root : distinct) {
    UPoly<Fq> lin(qt.wit, {ring_zero(qt.wit) - root, ring_one(qt.wit)});
    UPoly<Fq> rest = qt;
    int mult = 0;
    while (true) {
      auto [quo, rem] = poly_divrem(rest, lin);
      if (!rem.is_zero()) break;
      ++mult;
      rest = quo;
    }
    for (int i = 0; i < mult; ++i) out.push_back(root);
  }
  return {target, std::move(out)};
}

} // namespace geores
