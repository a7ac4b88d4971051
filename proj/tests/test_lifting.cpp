#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geores/lifting.hpp"

using namespace geores;

namespace {

std::vector<std::vector<Fq>> identity_change(const Ctx& cx, int n) {
  std::vector<std::vector<Fq>> m(n, std::vector<Fq>(n, Fq::zero(cx)));
  for (int i = 0; i < n; ++i) m[i][i] = Fq::one(cx);
  return m;
}

// X2^2 = X1 with X1 free
GeometricResolution parabola(const Ctx& cx) {
  GeometricResolution res;
  res.ctx = cx;
  res.n = 2;
  res.r = 1;
  res.mode = Mode::Affine;
  res.change = identity_change(cx, 2);
  res.lambda = {Fq::one(cx)};
  FqPoly w(Fq::zero(cx), 1);
  FqPoly y1 = FqPoly::var(Fq::zero(cx), 1, 0);
  res.q = UPoly<FqPoly>(w, {-y1, w, FqPoly::constant(Fq::one(cx), 1)});
  res.rho = poly_discriminant_ring(res.q);
  res.v = {UPoly<FqPoly>(w, {w, res.rho})};
  res.degree_budget = 16;
  return res;
}

Circuit parabola_eqs() {
  Circuit eqs = Circuit::inputs(2);
  eqs.outputs.push_back(eqs.sub(eqs.mul(1, 1), 0));
  return eqs;
}

// X1^2 + X2^2 = 1 with X1 free
GeometricResolution circle(const Ctx& cx) {
  GeometricResolution res;
  res.ctx = cx;
  res.n = 2;
  res.r = 1;
  res.mode = Mode::Affine;
  res.change = identity_change(cx, 2);
  res.lambda = {Fq::one(cx)};
  FqPoly w(Fq::zero(cx), 1);
  FqPoly y1 = FqPoly::var(Fq::zero(cx), 1, 0);
  FqPoly c0 = y1 * y1 - FqPoly::constant(Fq::one(cx), 1);
  res.q = UPoly<FqPoly>(w, {c0, w, FqPoly::constant(Fq::one(cx), 1)});
  res.rho = poly_discriminant_ring(res.q);
  res.v = {UPoly<FqPoly>(w, {w, res.rho})};
  res.degree_budget = 16;
  return res;
}

Circuit circle_eqs() {
  Circuit eqs = Circuit::inputs(2);
  eqs.outputs.push_back(eqs.sub(eqs.add(eqs.mul(0, 0), eqs.mul(1, 1)), eqs.constant(1)));
  return eqs;
}

TSeries<Fq> random_branch(const Ctx& cx, int kappa, Rng& rng) {
  TSeries<Fq> s(Fq::zero(cx), 1, kappa);
  for (auto& c : s.c) c = random_element(cx, rng);
  return s;
}

} // namespace

TEST_CASE("frozen Newton schedule") {
  CHECK(newton_step_count(1) == 2);
  CHECK(newton_step_count(2) == 5);
  CHECK(newton_step_count(3) == 8);
  CHECK(newton_step_count(4) == 8);
  CHECK(newton_step_count(8) == 11);
  CHECK(safe_precision(2) == 16);
  CHECK(safe_precision(3) == 54);
  CHECK(sharp_precision(3) == 10);
}

TEST_CASE("rational square root lifts to the binomial series") {
  // Y^2 = 1 + X around X = 0, branch through Y = 1
  Circuit eqs = Circuit::inputs(2);
  eqs.outputs.push_back(eqs.sub(eqs.mul(1, 1), eqs.add(eqs.constant(1), 0)));
  NewtonLog log;
  auto dep = newton_lift(eqs, std::vector<Rat>{Rat(0)}, std::vector<Rat>{Rat(1)}, 4, 5, &log);
  REQUIRE(dep.size() == 1);
  CHECK(log.converged);
  CHECK(log.precisions == std::vector<int>{2, 4, 4, 4, 4});
  CHECK(dep[0].coeff({0}) == Rat(1));
  CHECK(dep[0].coeff({1}) == Rat(1) / 2);
  CHECK(dep[0].coeff({2}) == Rat(-1) / 8);
  CHECK(dep[0].coeff({3}) == Rat(1) / 16);
  CHECK(dep[0].coeff({4}) == Rat(-5) / 128);

  // the other branch
  auto neg = newton_lift(eqs, std::vector<Rat>{Rat(0)}, std::vector<Rat>{Rat(-1)}, 3, 5);
  CHECK(neg[0].coeff({0}) == Rat(-1));
  CHECK(neg[0].coeff({1}) == Rat(-1) / 2);
}

TEST_CASE("lifting a two-dimensional dependent block") {
  // Y3 = Y1 + Y2^2... as equations in (free Y1, dep Y2, Y3):
  // Y2^2 - Y1 = 0 and Y3 - Y2 - 1 = 0 around Y1 = 4 (branch Y2 = 2)
  Ctx f101 = make_prime_field(101);
  Circuit eqs = Circuit::inputs(3);
  eqs.outputs.push_back(eqs.sub(eqs.mul(1, 1), 0));
  eqs.outputs.push_back(eqs.sub(eqs.sub(2, 1), eqs.constant(1)));
  auto dep = newton_lift(eqs, std::vector<Fq>{Fq::from_int(f101, 4)},
                         std::vector<Fq>{Fq::from_int(f101, 2), Fq::from_int(f101, 3)}, 3, 5);
  REQUIRE(dep.size() == 2);
  // Y2 = sqrt(4 + Z) = 2 sqrt(1 + Z/4) = 2 + Z/4 - Z^2/64 + ...
  CHECK(dep[0].coeff({0}) == Fq::from_int(f101, 2));
  CHECK(dep[0].coeff({1}) == inv(Fq::from_int(f101, 4)));
  CHECK(dep[0].coeff({2}) == -inv(Fq::from_int(f101, 64)));
  CHECK(dep[1] == dep[0] + TSeries<Fq>::constant(Fq::one(f101), 1, 3));
}

TEST_CASE("a singular branch Jacobian is refused") {
  Ctx f101 = make_prime_field(101);
  Circuit eqs = Circuit::inputs(2);
  eqs.outputs.push_back(eqs.sub(eqs.mul(1, 1), 0)); // Y2^2 = Y1, branch at Y2 = 0
  CHECK_THROWS_AS((void)newton_lift(eqs, std::vector<Fq>{Fq::zero(f101)},
                                    std::vector<Fq>{Fq::zero(f101)}, 3, 5),
                  LiftFailure);
}

TEST_CASE("recover_q vanishes on every branch") {
  Ctx f101 = make_prime_field(101);
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    int delta = 2 + (int)rng.below(2); // T-degree 2 or 3
    int kappa = 4;
    std::vector<TSeries<Fq>> u;
    while ((int)u.size() < delta) {
      auto b = random_branch(f101, kappa, rng);
      bool dup = false;
      for (auto& o : u) dup = dup || o.constant_term() == b.constant_term();
      if (!dup) u.push_back(b);
    }
    auto q = recover_q(u);
    CHECK(q.degree() == delta);
    CHECK(q.is_monic());
    for (auto& ul : u) CHECK(q.eval(ul).is_zero());
  }
}

TEST_CASE("recover_v interpolates rho-scaled coordinates") {
  Ctx f101 = make_prime_field(101);
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    int delta = 2 + (int)rng.below(3);
    int kappa = 3;
    std::vector<TSeries<Fq>> u, coords;
    while ((int)u.size() < delta) {
      auto b = random_branch(f101, kappa, rng);
      bool dup = false;
      for (auto& o : u) dup = dup || o.constant_term() == b.constant_term();
      if (!dup) u.push_back(b);
    }
    for (int l = 0; l < delta; ++l) coords.push_back(random_branch(f101, kappa, rng));
    auto q = recover_q(u);
    auto rho = poly_discriminant_ring(q);
    auto v = recover_v(u, coords, rho);
    CHECK(v.degree() < delta);
    for (int l = 0; l < delta; ++l) CHECK(v.eval(u[l]) == rho * coords[l]);
  }
}

TEST_CASE("jacobian_mu detects invertibility across the whole fiber") {
  Ctx f23 = make_prime_field(23);
  auto res = parabola(f23);
  Circuit eqs = parabola_eqs(); // identity change: Y coordinates equal X
  auto fib = specialize(res, {Fq::from_int(f23, 2)});
  Fq mu = jacobian_mu(eqs, fib);
  // Jacobian is 2 Y2; its norm on T^2 - 2 is -8, the charpoly constant term
  CHECK(mu == Fq::from_int(f23, 15));

  // f = (Y2 - 5)^2 has a double point: Jacobian 2(Y2 - 5) vanishes there
  Circuit dbl = Circuit::inputs(2);
  int d5 = dbl.sub(1, dbl.constant(5));
  dbl.outputs.push_back(dbl.mul(d5, d5));
  FiberResolution fb;
  fb.ctx = f23;
  fb.eta = {Fq::from_int(f23, 1)};
  fb.q = UPoly<Fq>(Fq::zero(f23), {Fq::from_int(f23, -5), Fq::one(f23)}); // T - 5
  fb.rho = Fq::one(f23);
  fb.v = {UPoly<Fq>::constant(Fq::from_int(f23, 5))};
  CHECK(jacobian_mu(dbl, fb).is_zero());
}

TEST_CASE("compress reproduces an exact certificate") {
  Ctx f23 = make_prime_field(23);
  auto res = parabola(f23);
  Circuit eqs = parabola_eqs();
  auto out = compress(res, eqs, Rng(17));
  CHECK(out.q.degree() == 2);
  CHECK(out.q.c[0] == res.q.c[0]);
  CHECK(out.q.c[1] == res.q.c[1]);
  CHECK(out.rho == res.rho);
  REQUIRE(out.v.size() == 1);
  CHECK(out.v[0].degree() == res.v[0].degree());
  CHECK(out.v[0].c[1] == res.v[0].c[1]);
  CHECK(validate(out, eqs, Rng(18)).ok);

  // sharp precision agrees here
  auto sharp = compress(res, eqs, Rng(19), true);
  CHECK(sharp.q.c[0] == res.q.c[0]);
  CHECK(sharp.rho == res.rho);
}

TEST_CASE("compress on the circle") {
  Ctx f101 = make_prime_field(101);
  auto res = circle(f101);
  Circuit eqs = circle_eqs();
  auto out = compress(res, eqs, Rng(23));
  CHECK(out.q.c[0] == res.q.c[0]);
  CHECK(out.rho == res.rho);
  CHECK(out.v[0].c[1] == res.v[0].c[1]);
  // idempotence
  auto again = compress(out, eqs, Rng(29));
  CHECK(again.q.c[0] == out.q.c[0]);
  CHECK(again.v[0].c[1] == out.v[0].c[1]);
}
