#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geores/dual.hpp"
#include "geores/series.hpp"
#include "geores/upoly.hpp"

using namespace geores;

namespace {

TSeries<Fq> sconst(const Ctx& cx, long long v, int r, int k) {
  return TSeries<Fq>::constant(Fq::from_int(cx, v), r, k);
}

TSeries<Fq> random_series(const Ctx& cx, int r, int k, Rng& rng) {
  TSeries<Fq> s(Fq::zero(cx), r, k);
  for (auto& c : s.c) c = random_element(cx, rng);
  return s;
}

} // namespace

TEST_CASE("series arithmetic: expansion, absorbing zero, truncation") {
  Ctx f23 = make_prime_field(23);
  int r = 2, k = 2;
  auto one = sconst(f23, 1, r, k);
  auto x1 = TSeries<Fq>::variable(Fq::zero(f23), r, k, 0);
  auto x2 = TSeries<Fq>::variable(Fq::zero(f23), r, k, 1);
  auto s = one + x1 + x2;
  auto sq = s * s;
  CHECK(sq.coeff({0, 0}) == Fq::from_int(f23, 1));
  CHECK(sq.coeff({1, 0}) == Fq::from_int(f23, 2));
  CHECK(sq.coeff({0, 1}) == Fq::from_int(f23, 2));
  CHECK(sq.coeff({2, 0}) == Fq::from_int(f23, 1));
  CHECK(sq.coeff({1, 1}) == Fq::from_int(f23, 2));
  CHECK(sq.coeff({0, 2}) == Fq::from_int(f23, 1));

  auto z = TSeries<Fq>(Fq::zero(f23), r, k);
  CHECK((sq * z).is_zero());

  // (1+X)(1-X) at kappa=1 -> 1
  auto x = TSeries<Fq>::variable(Fq::zero(f23), 1, 1, 0);
  auto o = sconst(f23, 1, 1, 1);
  CHECK((o + x) * (o - x) == o);
}

TEST_CASE("series_invert: geometric series, constants, zero constant term") {
  Ctx f7 = make_prime_field(7);
  auto one = sconst(f7, 1, 1, 3);
  auto x = TSeries<Fq>::variable(Fq::zero(f7), 1, 3, 0);
  auto inv1 = series_invert(one - x);
  auto want = one + x + x * x + x * x * x;
  CHECK(inv1 == want);

  auto two = sconst(f7, 2, 1, 3);
  CHECK(series_invert(two) == sconst(f7, 4, 1, 3));

  CHECK_THROWS(series_invert(x));
}

TEST_CASE("series ring axioms and inverse round trips") {
  Ctx f101 = make_prime_field(101);
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    int r = 1 + (int)rng.below(3);
    int k = 1 + (int)rng.below(6);
    auto a = random_series(f101, r, k, rng);
    auto b = random_series(f101, r, k, rng);
    auto c = random_series(f101, r, k, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
  }
  for (int t = 0; t < 200; ++t) {
    int r = 1 + (int)rng.below(2);
    int k = 1 + (int)rng.below(5);
    auto a = random_series(f101, r, k, rng);
    if (a.constant_term().is_zero()) a.c[0] = Fq::one(f101);
    auto ia = series_invert(a);
    CHECK(a * ia == sconst(f101, 1, r, k));
  }
}

TEST_CASE("truncating a product twice equals truncating once") {
  Ctx f23 = make_prime_field(23);
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    int r = 1 + (int)rng.below(2);
    int k = 3 + (int)rng.below(4);
    auto a = random_series(f23, r, k, rng);
    auto b = random_series(f23, r, k, rng);
    auto ab = a * b;
    int k2 = 1 + (int)rng.below(k - 1);
    auto direct = ab;
    direct.truncate_to(k2);
    // recompute at the lower precision
    TSeries<Fq> a2(Fq::zero(f23), r, k2), b2(Fq::zero(f23), r, k2);
    for (size_t i = 0; i < a2.c.size(); ++i) { a2.c[i] = a.c[i]; b2.c[i] = b.c[i]; }
    auto low = a2 * b2;
    for (size_t i = 0; i < low.c.size(); ++i) CHECK(low.c[i] == direct.c[i]);
  }
}

TEST_CASE("monic division over a truncated series coefficient ring") {
  // (T^2 - X - 1) divided by (T - s) where s = 1 + X/2 - X^2/8 satisfies
  // s^2 = 1 + X up to degree 2: remainder must vanish
  int k = 2;
  TSeries<Rat> x = TSeries<Rat>::variable(Rat(0), 1, k, 0);
  TSeries<Rat> s(Rat(0), 1, k);
  s.set_coeff({0}, Rat(1));
  s.set_coeff({1}, Rat(1) / 2);
  s.set_coeff({2}, Rat(-1) / 8);
  auto one = TSeries<Rat>::constant(Rat(1), 1, k);
  using SP = UPoly<TSeries<Rat>>;
  TSeries<Rat> zero(Rat(0), 1, k);
  SP num(zero, {zero - x - one, zero, one});
  SP den(zero, {zero - s, one});
  auto [q, r] = poly_divrem(num, den);
  CHECK(r.is_zero());
  CHECK(q * den + r == num);
}

TEST_CASE("jets track first-order perturbations") {
  Ctx f23 = make_prime_field(23);
  Jet<Fq> x(Fq::from_int(f23, 5), {Fq::one(f23), Fq::zero(f23)});
  Jet<Fq> y(Fq::from_int(f23, 7), {Fq::zero(f23), Fq::one(f23)});
  auto p = x * x * y; // d/dx = 2xy = 70 = 1 mod 23, d/dy = x^2 = 2
  CHECK(p.a == Fq::from_int(f23, 5 * 5 * 7));
  CHECK(p.d[0] == Fq::from_int(f23, 70));
  CHECK(p.d[1] == Fq::from_int(f23, 25));
  auto iy = ring_inv(y);
  auto check = y * iy;
  CHECK(check.a == Fq::one(f23));
  CHECK(check.d[0].is_zero());
  CHECK(check.d[1].is_zero());
}
