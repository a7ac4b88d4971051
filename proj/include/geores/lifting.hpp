#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geores/resolution.hpp"
#include "geores/series.hpp"
#include "geores/vandermonde.hpp"

namespace geores {

struct LiftFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// frozen iteration schedule: the step count depends only on the degree
inline int newton_step_count(long long dbar) {
  if (dbar < 1) throw std::domain_error("degree must be positive");
  int lg = 0;
  while ((1LL << lg) < dbar) ++lg;
  return 3 * lg + 2;
}
inline long long safe_precision(long long dbar) { return 2 * dbar * dbar * dbar; }
inline long long sharp_precision(long long dbar) { return dbar * dbar + 1; }

struct NewtonLog {
  std::vector<int> precisions; // working precision per step
  bool converged = false;
};

namespace liftdetail {

// layouts with the same variable count nest as prefixes, so changing the
// truncation order is a copy
template <class K>
TSeries<K> series_resize(const TSeries<K>& s, int kappa) {
  TSeries<K> r(s.wit, s.vars(), kappa);
  size_t n = std::min(r.c.size(), s.c.size());
  for (size_t i = 0; i < n; ++i) r.c[i] = s.c[i];
  return r;
}

// Gaussian elimination over a series ring: pivots must have invertible
// constant terms (the Jacobian is invertible at the fiber point)
template <class K>
std::vector<TSeries<K>> series_solve_linear(Matrix<TSeries<K>> m, std::vector<TSeries<K>> b) {
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!ring_is_zero(m.at(r, col).constant_term())) { piv = r; break; }
    if (piv < 0) throw LiftFailure("Jacobian is singular at the lifting fiber");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      std::swap(b[piv], b[col]);
    }
    TSeries<K> pinv = series_invert(m.at(col, col));
    for (int j = col; j < n; ++j) m.at(col, j) = m.at(col, j) * pinv;
    b[col] = b[col] * pinv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      TSeries<K> f = m.at(r, col);
      if (ring_is_zero(f)) continue;
      for (int j = col; j < n; ++j) m.at(r, j) = m.at(r, j) - f * m.at(col, j);
      b[r] = b[r] - f * b[col];
    }
  }
  return b;
}

// equations and dependent-block Jacobian at the current approximation
template <class K>
void eval_with_jacobian(const Circuit& eqs, const std::vector<K>& eta,
                        const std::vector<TSeries<K>>& dep, int kappa,
                        std::vector<TSeries<K>>& F, Matrix<TSeries<K>>& J) {
  int r = (int)eta.size(), m = (int)dep.size();
  K kwit = eta.empty() ? dep[0].wit : eta[0];
  TSeries<K> swit(kwit, r, kappa);
  using JS = Jet<TSeries<K>>;
  std::vector<JS> args;
  for (int i = 0; i < r; ++i) {
    TSeries<K> a = TSeries<K>::constant(eta[i], r, kappa) + TSeries<K>::variable(kwit, r, kappa, i);
    args.push_back(JS(a, (size_t)m));
  }
  for (int j = 0; j < m; ++j) {
    JS a(series_resize(dep[j], kappa), (size_t)m);
    a.d[j] = TSeries<K>::constant(ring_one(kwit), r, kappa);
    args.push_back(a);
  }
  JS wit(swit, (size_t)m);
  auto vals = evaluate_with_witness(eqs, args, wit);
  F.clear();
  J = Matrix<TSeries<K>>(swit, m, m);
  for (int i = 0; i < m; ++i) {
    F.push_back(vals[i].a);
    for (int j = 0; j < m; ++j) J.at(i, j) = vals[i].d[j];
  }
}

} // namespace liftdetail

// Lift the dependent coordinates of the branch through xi as power series in
// the free variables centered at eta, to truncation order kappa, using the
// fixed number of Newton steps with doubling working precision.
template <class K>
std::vector<TSeries<K>> newton_lift(const Circuit& eqs, const std::vector<K>& eta,
                                    const std::vector<K>& xi, int kappa, int steps,
                                    NewtonLog* log = nullptr) {
  int r = (int)eta.size(), m = (int)xi.size();
  if (eqs.arity != r + m) throw std::domain_error("equation arity must equal free plus dependent count");
  if ((int)eqs.outputs.size() != m) throw std::domain_error("need exactly one equation per dependent coordinate");
  if (m == 0) return {};
  std::vector<TSeries<K>> dep;
  for (int j = 0; j < m; ++j) dep.push_back(TSeries<K>::constant(xi[j], r, 0));
  for (int t = 1; t <= steps; ++t) {
    long long prec = std::min((long long)1 << std::min(t, 62), (long long)kappa);
    std::vector<TSeries<K>> F;
    Matrix<TSeries<K>> J(TSeries<K>(dep[0].wit, r, (int)prec));
    liftdetail::eval_with_jacobian(eqs, eta, dep, (int)prec, F, J);
    auto delta = liftdetail::series_solve_linear(J, F);
    for (int j = 0; j < m; ++j) dep[j] = liftdetail::series_resize(dep[j], (int)prec) - delta[j];
    if (log) log->precisions.push_back((int)prec);
  }
  for (int j = 0; j < m; ++j) dep[j] = liftdetail::series_resize(dep[j], kappa);
  // final residual check at full precision
  std::vector<TSeries<K>> F;
  Matrix<TSeries<K>> J(TSeries<K>(dep[0].wit, r, kappa));
  liftdetail::eval_with_jacobian(eqs, eta, dep, kappa, F, J);
  bool ok = true;
  for (auto& f : F) ok = ok && f.is_zero();
  if (log) log->converged = ok;
  if (!ok) throw LiftFailure("Newton iteration did not reach the requested precision");
  return dep;
}

// monic polynomial with the branch values of the primitive element as roots
template <class K>
UPoly<TSeries<K>> recover_q(const std::vector<TSeries<K>>& u) {
  if (u.empty()) throw std::domain_error("no branches");
  TSeries<K> one = ring_one(u[0]), zero = ring_zero(u[0]);
  UPoly<TSeries<K>> q(zero, {one});
  for (auto& ul : u) q = q * UPoly<TSeries<K>>(zero, {zero - ul, one});
  return q;
}

// v with v(u_l) = rho * coord_l on every branch (degree < number of branches)
template <class K>
UPoly<TSeries<K>> recover_v(const std::vector<TSeries<K>>& u, const std::vector<TSeries<K>>& coords,
                            const TSeries<K>& rho) {
  if (u.size() != coords.size()) throw std::domain_error("branch count mismatch");
  std::vector<TSeries<K>> rhs;
  for (auto& c : coords) rhs.push_back(rho * c);
  auto sol = vandermonde_solve(u, rhs, [](const TSeries<K>& s) { return series_invert(s); });
  return UPoly<TSeries<K>>(ring_zero(u[0]), std::move(sol));
}

// constant term of the characteristic polynomial of multiplication by the
// dependent-block Jacobian determinant on F_p[T]/(q): nonzero exactly when the
// Jacobian is invertible at every point of the fiber
inline Fq jacobian_mu(const Circuit& eqsY, const FiberResolution& fib) {
  int r = (int)fib.eta.size(), m = (int)fib.v.size();
  if (eqsY.arity != r + m) throw std::domain_error("equation arity mismatch");
  auto mod = ModPoly<Fq>::make_modulus(fib.q);
  Fq ir = inv(fib.rho);
  using JM = Jet<ModPoly<Fq>>;
  std::vector<JM> args;
  for (int i = 0; i < r; ++i) args.push_back(JM(ModPoly<Fq>::from_constant(mod, fib.eta[i]), (size_t)m));
  for (int j = 0; j < m; ++j) {
    JM a(ModPoly<Fq>(mod, fib.v[j] * ir), (size_t)m);
    a.d[j] = ModPoly<Fq>::from_constant(mod, Fq::one(fib.ctx));
    args.push_back(a);
  }
  JM wit(ModPoly<Fq>(mod, UPoly<Fq>::zero(Fq::zero(fib.ctx))), (size_t)m);
  auto vals = evaluate_with_witness(eqsY, args, wit);
  if ((int)vals.size() != m) throw std::domain_error("need exactly one equation per dependent coordinate");
  Matrix<ModPoly<Fq>> J(ring_zero(wit.a), m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) J.at(i, j) = vals[i].d[j];
  ModPoly<Fq> det = matrix_det(J);
  Matrix<Fq> mult = poly_at_matrix(det.rep, companion_matrix(fib.q));
  return berkowitz_charpoly(mult).get(0);
}

struct LiftingFiber {
  std::vector<Fq> eta;
  FiberResolution fib;
  Ctx ext;                          // splitting field of q at eta
  std::vector<std::vector<Fq>> xi;  // dependent Y coordinates per branch
  Fq mu;
};

// seeded search for a fiber where rho and the Jacobian norm are both nonzero
inline LiftingFiber choose_fiber(const GeometricResolution& res, const Circuit& eqsY, Rng rng) {
  int m = res.n - res.r;
  for (int tries = 0; tries < 400; ++tries) {
    std::vector<Fq> eta;
    for (int i = 0; i < res.r; ++i) eta.push_back(random_element(res.ctx, rng));
    if (res.rho.eval(eta).is_zero()) continue;
    FiberResolution fib = specialize(res, eta);
    Fq mu = jacobian_mu(eqsY, fib);
    if (mu.is_zero()) continue;
    RootSet rs = find_roots(fib.q, rng.fork(101));
    if ((int)rs.roots.size() != fib.q.degree()) continue; // repeated roots: bad fiber
    LiftingFiber lf;
    lf.eta = eta;
    lf.fib = fib;
    lf.ext = rs.ctx;
    lf.mu = mu;
    bool good = true;
    for (const Fq& z : rs.roots) {
      std::vector<Fq> dep;
      for (int j = 0; j < m; ++j) {
        Fq val = Fq::zero(rs.ctx);
        for (size_t k = fib.v[j].c.size(); k-- > 0;) val = val * z + fib.v[j].c[k];
        dep.push_back(val / fib.rho);
      }
      if (res.mode == Mode::Toric) {
        // every original coordinate must be a unit on the branch
        Matrix<Fq> inv_change = matrix_inverse(change_matrix(res));
        for (int i = 0; i < res.n && good; ++i) {
          Fq xi_val = Fq::zero(rs.ctx);
          for (int j = 0; j < res.r; ++j) xi_val = xi_val + inv_change.at(i, j) * eta[j];
          for (int j = 0; j < m; ++j) xi_val = xi_val + inv_change.at(i, res.r + j) * dep[j];
          if (xi_val.is_zero()) good = false;
        }
      }
      lf.xi.push_back(std::move(dep));
    }
    if (!good) continue;
    return lf;
  }
  throw LiftFailure("no usable lifting fiber found");
}

namespace liftdetail {

inline Fq embed_into(const Fq& v, const Ctx& ext) {
  return v + Fq::zero(ext);
}

// series in the shifted free variables -> polynomial in the original ones
inline FqPoly unshift(const TSeries<Fq>& s, const std::vector<Fq>& eta, const Ctx& base,
                      long long degree_cap) {
  FqPoly p(Fq::zero(base), (int)eta.size());
  for (size_t i = 0; i < s.c.size(); ++i) {
    if (ring_is_zero(s.c[i])) continue;
    int d = 0;
    for (int v : s.lay->exps[i]) d += v;
    if (d > degree_cap) throw LiftFailure("recovered coefficient exceeds its degree bound");
    if (!s.c[i].in_base_field()) throw LiftFailure("recovered coefficient leaves the base field");
    p.t[s.lay->exps[i]] = Fq::from_int(base, (long long)s.c[i].base_value());
  }
  std::vector<FqPoly> images;
  for (size_t i = 0; i < eta.size(); ++i)
    images.push_back(FqPoly::var(Fq::zero(base), (int)eta.size(), (int)i) -
                     FqPoly::constant(eta[i], (int)eta.size()));
  return mpoly_subst(p, images);
}

} // namespace liftdetail

// equations rewritten in the Y coordinates of a resolution's linear change
inline Circuit equations_in_y(const GeometricResolution& res, const Circuit& eqs) {
  return apply_linear_change(eqs, [&] {
    Matrix<Fq> inv_change = matrix_inverse(change_matrix(res));
    std::vector<std::vector<Fq>> rows(res.n, std::vector<Fq>(res.n, Fq::zero(res.ctx)));
    for (int i = 0; i < res.n; ++i)
      for (int j = 0; j < res.n; ++j) rows[i][j] = inv_change.at(i, j);
    return rows;
  }());
}

// Recover q, rho and the parametrizations of a resolution from branch data
// over one unramified fiber: Newton-lift every branch to precision kappa,
// read the symmetric functions off the lifted block, and undo the fiber
// shift. The skeleton supplies the frame (change, lambda, mode); its q and v
// are ignored. The result is validated before it is returned.
inline GeometricResolution lift_resolution(const GeometricResolution& skeleton, const Circuit& eqs,
                                           const LiftingFiber& lf, long long kappa, Rng rng,
                                           const Circuit* avoid = nullptr,
                                           std::vector<int>* step_counts = nullptr) {
  const GeometricResolution& res = skeleton;
  int m = res.n - res.r;
  long long dbar = (long long)lf.xi.size();
  int steps = newton_step_count(dbar);
  Circuit eqsY = equations_in_y(res, eqs);
  std::vector<Fq> eta_ext;
  for (auto& e : lf.eta) eta_ext.push_back(liftdetail::embed_into(e, lf.ext));
  std::vector<std::vector<TSeries<Fq>>> branches;
  for (auto& xi : lf.xi) {
    NewtonLog log;
    branches.push_back(newton_lift(eqsY, eta_ext, xi, (int)kappa, steps, &log));
    if ((int)log.precisions.size() != steps) throw LiftFailure("Newton step count mismatch");
    if (step_counts) step_counts->push_back((int)log.precisions.size());
  }
  std::vector<TSeries<Fq>> u;
  for (auto& br : branches) {
    TSeries<Fq> ul(Fq::zero(lf.ext), res.r, (int)kappa);
    for (int j = 0; j < m; ++j)
      ul = ul + br[j] * liftdetail::embed_into(res.lambda[j], lf.ext);
    u.push_back(ul);
  }
  auto qt = recover_q(u);
  auto rhot = poly_discriminant_ring(qt);
  GeometricResolution out = res;
  out.degree_budget = safe_precision(dbar);
  // q coefficients back to polynomials over the base field
  {
    std::vector<FqPoly> qc;
    for (auto& c : qt.c) qc.push_back(liftdetail::unshift(c, lf.eta, res.ctx, out.degree_budget));
    out.q = UPoly<FqPoly>(res.coeff_wit(), std::move(qc));
  }
  out.rho = poly_discriminant_ring(out.q);
  out.v.clear();
  for (int j = 0; j < m; ++j) {
    std::vector<TSeries<Fq>> coords;
    for (auto& br : branches) coords.push_back(br[j]);
    auto vt = recover_v(u, coords, rhot);
    std::vector<FqPoly> vc;
    for (auto& c : vt.c) vc.push_back(liftdetail::unshift(c, lf.eta, res.ctx, out.degree_budget));
    out.v.push_back(UPoly<FqPoly>(res.coeff_wit(), std::move(vc)));
    if (out.v.back().degree() >= out.q.degree()) throw LiftFailure("parametrization degree bound violated");
  }
  auto rep = validate(out, eqs, rng.fork(11), avoid);
  if (!rep.ok) {
    std::string msg = "lifting produced an invalid certificate";
    for (auto& is : rep.issues) msg += "; " + is;
    throw LiftFailure(msg);
  }
  return out;
}

// Recompute q, rho and the parametrizations to full certified precision by
// lifting every branch over a good fiber. r = 0 needs no compression. The
// sharp precision dbar^2 + 1 is opportunistic; on any failure the safe
// precision 2 dbar^3 is used instead.
inline GeometricResolution compress(const GeometricResolution& res, const Circuit& eqs, Rng rng,
                                    bool sharp = false, const Circuit* avoid = nullptr,
                                    std::vector<int>* step_counts = nullptr) {
  if (res.r == 0) return res;
  long long dbar = res.delta();
  if (sharp) {
    try {
      LiftingFiber lf = choose_fiber(res, equations_in_y(res, eqs), rng.fork(7));
      return lift_resolution(res, eqs, lf, sharp_precision(dbar), rng, avoid, step_counts);
    } catch (const LiftFailure&) {
      if (step_counts) step_counts->clear();
      // fall through to the safe precision
    }
  }
  Rng r2 = rng.fork(13);
  LiftingFiber lf = choose_fiber(res, equations_in_y(res, eqs), r2.fork(7));
  return lift_resolution(res, eqs, lf, safe_precision(dbar), r2, avoid, step_counts);
}

} // namespace geores
