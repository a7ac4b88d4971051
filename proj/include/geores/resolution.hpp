#pragma once
#include <string>
#include <vector>

#include "geores/circuit.hpp"
#include "geores/densepoly.hpp"
#include "geores/matrix.hpp"
#include "geores/quotient.hpp"
#include "geores/roots.hpp"

namespace geores {

enum class Mode { Affine, Toric, Avoid };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Toric: return "toric";
    case Mode::Avoid: return "avoid";
    default: return "affine";
  }
}

// circuit constants inside a quotient ring
template <class K>
ModPoly<K> ring_embed(const ModPoly<K>& w, const Fq& v) {
  return ModPoly<K>::from_constant(w.mod, ring_embed(w.rep.wit, v));
}

// Univariate parametrization of a zero-dimensional fiber: after the linear
// change Y = change * X the first r coordinates are free, u = sum lambda_j Y_{r+j}
// is a primitive element with monic separable minimal polynomial q, and the
// dependent coordinates satisfy rho * Y_{r+j} = v_j(u) with rho = disc_T(q).
struct GeometricResolution {
  Ctx ctx;
  int n = 0; // ambient variables
  int r = 0; // free variables after the change
  Mode mode = Mode::Affine;
  std::vector<std::vector<Fq>> change; // Y = change * X
  std::vector<Fq> lambda;              // size n - r
  UPoly<FqPoly> q;                     // coefficients in the r free variables
  FqPoly rho;
  std::vector<UPoly<FqPoly>> v;        // size n - r, deg_T < deg_T q
  long long degree_budget = 0;         // bound on deg rho and v coefficients; 0 skips the check

  GeometricResolution()
      : q(FqPoly(Fq(), 0)), rho(Fq(), 0) {}

  int delta() const { return q.degree(); }
  FqPoly coeff_wit() const { return FqPoly(Fq::zero(ctx), r); }
};

// the same data with the free variables pinned to a fiber point
struct FiberResolution {
  Ctx ctx;
  std::vector<Fq> eta;
  UPoly<Fq> q;
  Fq rho;
  std::vector<UPoly<Fq>> v;

  FiberResolution() : q(Fq()), rho() {}
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
  void flag(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
  }
};

inline Matrix<Fq> change_matrix(const GeometricResolution& res) {
  Matrix<Fq> m(Fq::zero(res.ctx), res.n, res.n);
  if ((int)res.change.size() != res.n) throw std::domain_error("change matrix shape mismatch");
  for (int i = 0; i < res.n; ++i) {
    if ((int)res.change[i].size() != res.n) throw std::domain_error("change matrix shape mismatch");
    for (int j = 0; j < res.n; ++j) m.at(i, j) = res.change[i][j];
  }
  return m;
}

inline FiberResolution specialize(const GeometricResolution& res, const std::vector<Fq>& eta) {
  if ((int)eta.size() != res.r) throw std::domain_error("fiber point arity mismatch");
  FiberResolution fib;
  fib.ctx = res.ctx;
  fib.eta = eta;
  Fq rho = res.rho.eval(eta);
  if (rho.is_zero()) throw std::domain_error("fiber point lies on the discriminant locus");
  fib.rho = rho;
  std::vector<Fq> qc;
  for (auto& c : res.q.c) qc.push_back(c.eval(eta));
  fib.q = UPoly<Fq>(Fq::zero(res.ctx), std::move(qc));
  if (fib.q.degree() != res.q.degree()) throw std::domain_error("degree drop while specializing a monic polynomial");
  for (auto& vj : res.v) {
    std::vector<Fq> vc;
    for (auto& c : vj.c) vc.push_back(c.eval(eta));
    fib.v.emplace_back(Fq::zero(res.ctx), std::move(vc));
  }
  return fib;
}

namespace resdetail {

// run the exact fiber checks in F_p[T]/(q): separability, the parametrization
// identity for u, membership of every equation, mode side conditions
inline void check_fiber(const GeometricResolution& res, const FiberResolution& fib,
                        const Circuit& eqs, const Circuit* avoid, ValidationReport& rep,
                        const std::string& where) {
  Fq k0 = Fq::zero(res.ctx);
  if (!fib.q.is_monic() || fib.q.degree() < 1) {
    rep.flag(where + ": specialized q is not monic of positive degree");
    return;
  }
  Fq disc = poly_discriminant(fib.q);
  if (disc.is_zero()) {
    rep.flag(where + ": q is inseparable on this fiber");
    return;
  }
  if (!(disc == fib.rho)) rep.flag(where + ": rho does not equal disc_T(q) on this fiber");
  auto mod = ModPoly<Fq>::make_modulus(fib.q);
  auto T = ModPoly<Fq>::generator(mod);
  Fq ir = inv(fib.rho);
  int m = res.n - res.r;
  std::vector<ModPoly<Fq>> dep;
  for (int j = 0; j < m; ++j) dep.push_back(ModPoly<Fq>(mod, fib.v[j] * ir));
  // u = sum lambda_j Y_{r+j} must reduce to T
  ModPoly<Fq> u = ring_zero(T);
  for (int j = 0; j < m; ++j) u = u + dep[j] * ModPoly<Fq>::from_constant(mod, res.lambda[j]);
  if (!(u == T)) rep.flag(where + ": primitive element does not reduce to T");
  // back to the original coordinates
  Matrix<Fq> inv_change = matrix_inverse(change_matrix(res));
  std::vector<ModPoly<Fq>> y;
  for (int i = 0; i < res.r; ++i) y.push_back(ModPoly<Fq>::from_constant(mod, fib.eta[i]));
  for (int j = 0; j < m; ++j) y.push_back(dep[j]);
  std::vector<ModPoly<Fq>> x(res.n, ring_zero(T));
  for (int i = 0; i < res.n; ++i)
    for (int j = 0; j < res.n; ++j)
      x[i] = x[i] + y[j] * ModPoly<Fq>::from_constant(mod, inv_change.at(i, j));
  try {
    auto vals = evaluate_with_witness(eqs, x, ring_zero(T));
    for (size_t s = 0; s < vals.size(); ++s)
      if (!vals[s].is_zero())
        rep.flag(where + ": equation " + std::to_string(s) + " does not vanish on the parametrization");
  } catch (const CircuitError& e) {
    rep.flag(where + ": equation evaluation failed on the parametrization: " + e.what());
  }
  if (res.mode == Mode::Toric) {
    for (int i = 0; i < res.n; ++i) {
      // a coordinate is nonzero at every point iff it is a unit mod q
      if (poly_gcd(x[i].rep.is_zero() ? fib.q : x[i].rep, fib.q).degree() != 0 || x[i].rep.is_zero())
        rep.flag(where + ": coordinate " + std::to_string(i + 1) + " vanishes at a solution (toric mode)");
    }
  }
  if (res.mode == Mode::Avoid && avoid) {
    try {
      auto g = evaluate_with_witness(*avoid, x, ring_zero(T));
      for (auto& gi : g)
        if (gi.rep.is_zero() || poly_gcd(gi.rep, fib.q).degree() != 0)
          rep.flag(where + ": avoided hypersurface meets the solution set");
    } catch (const CircuitError& e) {
      rep.flag(where + ": avoided hypersurface evaluation failed: " + e.what());
    }
  }
  (void)k0;
}

} // namespace resdetail

inline ValidationReport validate(const GeometricResolution& res, const Circuit& eqs, Rng rng,
                                 const Circuit* avoid = nullptr, int fiber_samples = 20) {
  ValidationReport rep;
  if (res.n < 1 || res.r < 0 || res.r >= res.n + 1) rep.flag("inconsistent dimensions");
  if (eqs.arity != res.n) rep.flag("equation arity does not match the ambient dimension");
  int m = res.n - res.r;
  if ((int)res.lambda.size() != m) rep.flag("primitive form has the wrong arity");
  if ((int)res.v.size() != m) rep.flag("wrong number of parametrized coordinates");
  try {
    matrix_inverse(change_matrix(res));
  } catch (const std::domain_error&) {
    rep.flag("change of variables is singular");
  }
  if (!rep.ok) return rep;
  if (!res.q.is_monic() || res.q.degree() < 1) rep.flag("q is not monic in T of positive degree");
  if (res.rho.is_zero()) rep.flag("rho is zero");
  for (int j = 0; j < m; ++j)
    if (res.v[j].degree() >= res.q.degree()) rep.flag("v_" + std::to_string(j + 1) + " has T-degree >= deg q");
  if (!rep.ok) return rep;
  // rho is the T-discriminant of q as a polynomial in the free variables
  if (!(poly_discriminant_ring(res.q) == res.rho)) rep.flag("rho is not disc_T(q)");
  if (res.degree_budget > 0) {
    if (res.rho.total_degree() > res.degree_budget) rep.flag("deg rho exceeds the budget");
    for (int j = 0; j < m; ++j)
      for (auto& c : res.v[j].c)
        if (c.total_degree() > res.degree_budget)
          rep.flag("a coefficient of v_" + std::to_string(j + 1) + " exceeds the degree budget");
  }
  if (!rep.ok) return rep;
  if (res.r == 0) {
    resdetail::check_fiber(res, specialize(res, {}), eqs, avoid, rep, "fiber");
    return rep;
  }
  // sample fibers off the discriminant locus
  int tried = 0, used = 0;
  while (used < fiber_samples && tried < 50 * fiber_samples) {
    ++tried;
    std::vector<Fq> eta;
    for (int i = 0; i < res.r; ++i) eta.push_back(random_element(res.ctx, rng));
    if (res.rho.eval(eta).is_zero()) continue;
    resdetail::check_fiber(res, specialize(res, eta), eqs, avoid, rep, "fiber " + std::to_string(used));
    ++used;
    if (!rep.ok) return rep;
  }
  if (used < fiber_samples) rep.flag("could not sample enough fibers off the discriminant locus");
  return rep;
}

// all solutions over the splitting field of q at the given fiber (canonical order)
inline std::vector<std::vector<Fq>> enumerate_points(const GeometricResolution& res,
                                                     const std::vector<Fq>& eta, Rng rng) {
  FiberResolution fib = specialize(res, eta);
  RootSet rs = find_roots(fib.q, rng);
  Matrix<Fq> inv_change = matrix_inverse(change_matrix(res));
  int m = res.n - res.r;
  std::vector<std::vector<Fq>> pts;
  for (const Fq& th : rs.roots) {
    std::vector<Fq> y;
    for (int i = 0; i < res.r; ++i) y.push_back(fib.eta[i] + Fq::zero(th.ctx));
    for (int j = 0; j < m; ++j) {
      Fq val = Fq::zero(th.ctx);
      for (size_t k = fib.v[j].c.size(); k-- > 0;) val = val * th + fib.v[j].c[k];
      y.push_back(val / fib.rho);
    }
    std::vector<Fq> x;
    for (int i = 0; i < res.n; ++i) {
      Fq xi = Fq::zero(th.ctx);
      for (int j = 0; j < res.n; ++j) xi = xi + inv_change.at(i, j) * y[j];
      x.push_back(xi);
    }
    pts.push_back(std::move(x));
  }
  std::sort(pts.begin(), pts.end(), [](const std::vector<Fq>& a, const std::vector<Fq>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (canonical_less(a[i], b[i])) return true;
      if (canonical_less(b[i], a[i])) return false;
    }
    return false;
  });
  return pts;
}

} // namespace geores
