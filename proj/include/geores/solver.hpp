#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geores/interp.hpp"
#include "geores/lifting.hpp"

namespace geores {

struct SolveError : std::runtime_error {
  std::string stage;
  bool retryable;
  SolveError(std::string st, const std::string& msg, bool retry)
      : std::runtime_error(st + ": " + msg), stage(std::move(st)), retryable(retry) {}
};

struct SolverConfig {
  u64 seed = 0;
  Mode mode = Mode::Affine;
  const Circuit* avoid = nullptr; // hypersurface to stay off (Mode::Avoid)
  int retries = 3;                // fresh global changes of variables on failure
  bool sharp = false;             // try the sharp lifting precision first
};

// per-level log: what was eliminated and which random choices were accepted
struct EliminationStep {
  int level = 0;                // equations f_1..f_level are resolved after this step
  int delta = 0;                // deg_T q after cleaning
  long long degree_ledger = 0;  // deg(f_level) * previous delta; delta must stay below it
  FqPoly a0;                    // constant term of the minimal polynomial of f_level
  std::vector<Fq> gamma;        // shear making a0 monic in the last free variable
  Fq alpha, mu;                 // accepted primitive form u' = alpha Ym + mu u
  int candidate_degree = 0;     // dimension of the candidate algebra before cleaning
  UPoly<Fq> h, h1;              // cleaning gcds at the chosen fiber
  EliminationStep() : a0(Fq(), 0), h(Fq()), h1(Fq()) {}
};

struct SolveResult {
  GeometricResolution res;
  std::vector<EliminationStep> log;
  SolveResult() = default;
};

// resolution of the full ambient space: no dependent variables yet
inline GeometricResolution trivial_resolution(const Ctx& ctx, int n, Mode mode,
                                              const std::vector<std::vector<Fq>>& change) {
  GeometricResolution res;
  res.ctx = ctx;
  res.n = n;
  res.r = n;
  res.mode = mode;
  res.change = change;
  FqPoly w(Fq::zero(ctx), n);
  res.q = UPoly<FqPoly>(w, {w, FqPoly::constant(Fq::one(ctx), n)}); // T
  res.rho = FqPoly::constant(Fq::one(ctx), n);
  return res;
}

namespace solvedetail {

inline Fq random_nonzero(const Ctx& cx, Rng& rng) {
  for (;;) {
    Fq v = random_element(cx, rng);
    if (!v.is_zero()) return v;
  }
}

inline UPoly<Fq> to_univariate(const FqPoly& p, const Fq& z) {
  if (p.nvars != 1) throw std::domain_error("expected a univariate polynomial");
  std::vector<Fq> c;
  if (!p.is_zero()) c.assign(p.degree_in(0) + 1, z);
  for (auto& [e, co] : p.t) c[e[0]] = co;
  return UPoly<Fq>(z, std::move(c));
}

// original coordinates as residues mod q on one fiber
inline std::vector<ModPoly<Fq>> fiber_coordinates(const GeometricResolution& res,
                                                  const FiberResolution& fib,
                                                  const std::shared_ptr<const UPoly<Fq>>& mod) {
  Matrix<Fq> ic = matrix_inverse(change_matrix(res));
  Fq ir = inv(fib.rho);
  int m = res.n - res.r;
  std::vector<ModPoly<Fq>> y;
  for (int i = 0; i < res.r; ++i) y.push_back(ModPoly<Fq>::from_constant(mod, fib.eta[i]));
  for (int j = 0; j < m; ++j) y.push_back(ModPoly<Fq>(mod, fib.v[j] * ir));
  std::vector<ModPoly<Fq>> x(res.n, ModPoly<Fq>::from_constant(mod, Fq::zero(res.ctx)));
  for (int i = 0; i < res.n; ++i)
    for (int j = 0; j < res.n; ++j)
      x[i] = x[i] + y[j] * ModPoly<Fq>::from_constant(mod, ic.at(i, j));
  return x;
}

// minimal polynomial of multiplication by g on a single fiber
inline UPoly<Fq> fiber_minpoly(const GeometricResolution& res, const FiberResolution& fib,
                               const Circuit& g) {
  auto mod = ModPoly<Fq>::make_modulus(fib.q);
  auto x = fiber_coordinates(res, fib, mod);
  auto z = evaluate_with_witness(g, x, ModPoly<Fq>::from_constant(mod, Fq::zero(res.ctx)))[0];
  auto chi = berkowitz_charpoly(poly_at_matrix(z.rep, companion_matrix(fib.q)));
  return squarefree_part(chi).first;
}

} // namespace solvedetail

// Minimal polynomial of the multiplication-by-g map on the solution algebra,
// with coefficients in the free variables. g is a one-output circuit in the
// original coordinates. The constant term vanishes identically iff g is a
// zero divisor on the solution set.
inline UPoly<FqPoly> homothety_minpoly(const GeometricResolution& res, const Circuit& g, Rng rng) {
  if ((int)g.outputs.size() != 1) throw std::domain_error("homothety needs a one-output circuit");
  if (g.arity != res.n) throw std::domain_error("homothety circuit arity mismatch");
  FqPoly w = res.coeff_wit();
  if (res.r == 0) {
    auto m = solvedetail::fiber_minpoly(res, specialize(res, {}), g);
    std::vector<FqPoly> c;
    for (auto& ci : m.c) c.push_back(FqPoly::constant(ci, 0));
    return UPoly<FqPoly>(w, std::move(c));
  }
  // generic degree of the minimal polynomial, by probing
  int dm = 0, found = 0;
  Rng prng = rng.fork(1);
  for (int t = 0; t < 400 && found < 5; ++t) {
    std::vector<Fq> eta;
    for (int i = 0; i < res.r; ++i) eta.push_back(random_element(res.ctx, prng));
    if (res.rho.eval(eta).is_zero()) continue;
    dm = std::max(dm, solvedetail::fiber_minpoly(res, specialize(res, eta), g).degree());
    ++found;
  }
  if (found == 0) throw SolveError("homothety", "no fibers off the discriminant locus", true);
  PointEvaluator eval = [&](const std::vector<Fq>& pt) -> std::optional<std::vector<Fq>> {
    if (res.rho.eval(pt).is_zero()) return std::nullopt;
    auto m = solvedetail::fiber_minpoly(res, specialize(res, pt), g);
    if (m.degree() != dm) return std::nullopt;
    return std::vector<Fq>(m.c.begin(), m.c.end() - 1);
  };
  long long gb;
  try {
    gb = std::max(1, circuit_degree_bounds(g)[0]);
  } catch (const std::domain_error&) {
    throw SolveError("homothety", "divisions must be removed before solving", false);
  }
  long long bound = std::max<long long>(dm, gb * res.delta());
  auto cs = interp_reconstruct(res.ctx, res.r, bound, dm, eval, rng.fork(2));
  cs.push_back(FqPoly::constant(Fq::one(res.ctx), res.r));
  return UPoly<FqPoly>(w, std::move(cs));
}

namespace solvedetail {

// shear the free block: Y_j <- Y_j + gamma_j Y_last for j < last
inline GeometricResolution shear_free(const GeometricResolution& res, const std::vector<Fq>& gamma) {
  bool trivial = true;
  for (auto& g : gamma) trivial = trivial && g.is_zero();
  if (trivial) return res;
  int r = res.r;
  Fq z = Fq::zero(res.ctx);
  std::vector<FqPoly> images;
  for (int j = 0; j < r; ++j) {
    FqPoly im = FqPoly::var(z, r, j);
    if (j + 1 < r && !gamma[j].is_zero())
      im = im + FqPoly::var(z, r, r - 1) * gamma[j];
    images.push_back(im);
  }
  GeometricResolution out = res;
  std::vector<FqPoly> qc;
  for (auto& c : res.q.c) qc.push_back(mpoly_subst(c, images));
  out.q = UPoly<FqPoly>(res.coeff_wit(), std::move(qc));
  out.rho = mpoly_subst(res.rho, images);
  out.v.clear();
  for (auto& vj : res.v) {
    std::vector<FqPoly> vc;
    for (auto& c : vj.c) vc.push_back(mpoly_subst(c, images));
    out.v.push_back(UPoly<FqPoly>(res.coeff_wit(), std::move(vc)));
  }
  // new frame: Y'_j = Y_j - gamma_j Y_last
  Matrix<Fq> S(z, res.n, res.n);
  for (int i = 0; i < res.n; ++i) S.at(i, i) = Fq::one(res.ctx);
  for (int j = 0; j + 1 < r; ++j) S.at(j, r - 1) = z - gamma[j];
  Matrix<Fq> nc = S * change_matrix(res);
  for (int i = 0; i < res.n; ++i)
    for (int j = 0; j < res.n; ++j) out.change[i][j] = nc.at(i, j);
  return out;
}

} // namespace solvedetail

struct NoetherStep {
  GeometricResolution res;   // sheared so a0 is monic in the last free variable
  FqPoly a0;
  std::vector<Fq> gamma;
  NoetherStep() : a0(Fq(), 0) {}
};

// Put the next equation in general position over the free variables: compute
// the constant term a0 of its minimal polynomial on the current solution set
// and shear the free block until a0 has a constant leading coefficient in the
// last free variable (then normalized to 1).
inline NoetherStep noether_step(const GeometricResolution& res, const Circuit& f_next, Rng rng) {
  UPoly<FqPoly> mp = homothety_minpoly(res, f_next, rng.fork(1));
  FqPoly a0 = mp.c[0];
  if (a0.is_zero())
    throw SolveError("noether", "the next equation is a zero divisor on the solution set", false);
  if (a0.total_degree() == 0)
    throw SolveError("noether", "the next equation has no zeros on the solution set", false);
  int r = res.r;
  int dtot = a0.total_degree();
  FqPoly top(Fq::zero(res.ctx), r);
  for (auto& [e, c] : a0.t) {
    int d = 0;
    for (int v : e) d += v;
    if (d == dtot) top.add_term(e, c);
  }
  std::vector<Fq> gamma(r - 1, Fq::zero(res.ctx));
  bool found = false;
  Rng grng = rng.fork(2);
  for (int t = 0; t < 200 && !found; ++t) {
    std::vector<Fq> g(r - 1, Fq::zero(res.ctx));
    if (t > 0)
      for (auto& gi : g) gi = random_element(res.ctx, grng);
    std::vector<Fq> pt = g;
    pt.push_back(Fq::one(res.ctx));
    if (!top.eval(pt).is_zero()) {
      gamma = g;
      found = true;
    }
  }
  if (!found) throw SolveError("noether", "no shear puts the fiber equation in general position", true);
  NoetherStep out;
  out.gamma = gamma;
  out.res = solvedetail::shear_free(res, gamma);
  FqPoly a0s = a0;
  if (r >= 2) {
    Fq z = Fq::zero(res.ctx);
    std::vector<FqPoly> images;
    for (int j = 0; j < r; ++j) {
      FqPoly im = FqPoly::var(z, r, j);
      if (j + 1 < r && !gamma[j].is_zero()) im = im + FqPoly::var(z, r, r - 1) * gamma[j];
      images.push_back(im);
    }
    a0s = mpoly_subst(a0, images);
  }
  // leading coefficient in the last free variable is the top form at the shear
  std::vector<int> lead(r, 0);
  lead[r - 1] = dtot;
  auto it = a0s.t.find(lead);
  if (it == a0s.t.end() || a0s.degree_in(r - 1) != dtot)
    throw SolveError("noether", "shear failed to reach general position", true);
  a0s = a0s * inv(it->second);
  out.a0 = a0s;
  return out;
}

namespace solvedetail {

// Candidate algebra at one fiber point eta of the shrunk free space:
// F[ym, t] / (abar(ym), qC(ym, t)) with abar monic squarefree and qC the old
// minimal polynomial specialized at (eta, ym). Elements are t-coefficient
// vectors of ym-polynomials reduced mod abar.
struct CAlg {
  UPoly<Fq> abar;
  std::vector<UPoly<Fq>> qc; // size delta + 1, qc[delta] = 1
  int delta = 0;
  int da = 0;
  Fq z;
  CAlg() : abar(Fq()) {}
  int dim() const { return delta * da; }
};

using CElem = std::vector<UPoly<Fq>>;

inline CElem c_from_raw(const CAlg& A, std::vector<UPoly<Fq>> raw) {
  UPoly<Fq> zero = UPoly<Fq>::zero(A.z);
  while ((int)raw.size() < A.delta) raw.push_back(zero);
  for (size_t k = raw.size(); k-- > (size_t)A.delta;) {
    UPoly<Fq> top = raw[k];
    raw[k] = zero;
    if (top.is_zero()) continue;
    for (int j = 0; j < A.delta; ++j)
      raw[k - A.delta + j] = raw[k - A.delta + j] - top * A.qc[j];
  }
  raw.resize(A.delta, zero);
  for (auto& c : raw) c = poly_mod(c, A.abar);
  return raw;
}

// multiplication matrix of an element on the monomial basis ym^a t^b
inline Matrix<Fq> c_matrix(const CAlg& A, const CElem& e) {
  int D = A.dim();
  Matrix<Fq> M(A.z, D, D);
  CElem tb = e;
  for (int b = 0; b < A.delta; ++b) {
    CElem cur = tb;
    for (int a = 0; a < A.da; ++a) {
      int col = b * A.da + a;
      for (int bb = 0; bb < A.delta; ++bb)
        for (int aa = 0; aa < (int)cur[bb].c.size(); ++aa)
          M.at(bb * A.da + aa, col) = cur[bb].c[aa];
      if (a + 1 < A.da)
        for (auto& c : cur) c = poly_mod(shift_up(c, 1), A.abar);
    }
    if (b + 1 < A.delta) {
      std::vector<UPoly<Fq>> raw(1, UPoly<Fq>::zero(A.z));
      raw.insert(raw.end(), tb.begin(), tb.end());
      tb = c_from_raw(A, std::move(raw));
    }
  }
  return M;
}

} // namespace solvedetail

// Outcome of the primitive + cleaning pipeline at one fiber point.
struct FiberOutcome {
  bool separating = false; // the primitive candidate separated all candidate points
  bool empty = false;      // no candidate point survived the equations and mode conditions
  int D = 0;               // dimension of the candidate algebra
  UPoly<Fq> qt, h, h1;     // candidate charpoly and the cleaning gcds
  FiberResolution fib;     // cleaned fiber parametrization (when separating and nonempty)
  FiberOutcome() : qt(Fq()), h(Fq()), h1(Fq()) {}
};

// One fiber of the elimination of the next equation: build the candidate
// algebra over eta from a0 and the current resolution, take the
// characteristic polynomial of u' = alpha Ym + mu u with first-order
// perturbations giving the new parametrizations, then keep only the candidate
// points satisfying every equation and the mode side conditions. Returns no
// value at unlucky fiber points (old discriminant meets a candidate root).
// eqsY must list the equations so far in the Y coordinates of res.
inline std::optional<FiberOutcome> primitive_cleaning_fiber(const GeometricResolution& res,
                                                            const FqPoly& a0,
                                                            const std::vector<Fq>& eta,
                                                            const Fq& alpha, const Fq& mu,
                                                            const Circuit& eqsY,
                                                            const Circuit* avoidY) {
  using namespace solvedetail;
  const Fq z = Fq::zero(res.ctx);
  int r_new = res.r - 1, delta = res.delta(), m_old = res.n - res.r;
  if ((int)eta.size() != r_new) throw std::domain_error("fiber point arity mismatch");
  auto spec1 = [&](const FqPoly& p) { return to_univariate(mpoly_specialize_prefix(p, eta), z); };
  UPoly<Fq> aspec = spec1(a0); // monic: a0 was normalized by the noether step
  auto [abar, aco] = squarefree_part(aspec);
  (void)aco;
  CAlg A;
  A.z = z;
  A.abar = abar;
  A.delta = delta;
  A.da = abar.degree();
  if (A.da < 1) return std::nullopt;
  for (auto& c : res.q.c) A.qc.push_back(poly_mod(spec1(c), abar));
  UPoly<Fq> rhoC = poly_mod(spec1(res.rho), abar);
  if (rhoC.is_zero() || poly_gcd(rhoC, abar).degree() != 0) return std::nullopt;
  UPoly<Fq> irho = poly_invmod(rhoC, abar);
  UPoly<Fq> zero = UPoly<Fq>::zero(z);
  // coordinates of the candidate algebra: ym, then the old dependents
  std::vector<CElem> w;
  {
    CElem ym(A.delta, zero);
    ym[0] = poly_mod(UPoly<Fq>::variable(z), abar);
    w.push_back(ym);
  }
  for (int j = 0; j < m_old; ++j) {
    CElem ej(A.delta, zero);
    for (size_t b = 0; b < res.v[j].c.size(); ++b)
      ej[b] = poly_mod(spec1(res.v[j].c[b]) * irho, abar);
    w.push_back(ej);
  }
  CElem tpow;
  {
    std::vector<UPoly<Fq>> raw = {zero, UPoly<Fq>::constant(Fq::one(res.ctx))};
    tpow = c_from_raw(A, std::move(raw));
  }
  CElem up(A.delta, zero);
  for (int b = 0; b < A.delta; ++b) up[b] = w[0][b] * alpha + tpow[b] * mu;
  int D = A.dim();
  Matrix<Fq> U = c_matrix(A, up);
  std::vector<Matrix<Fq>> W;
  for (auto& wj : w) W.push_back(c_matrix(A, wj));
  size_t meps = w.size();
  Matrix<Jet<Fq>> MJ(Jet<Fq>(z, meps), D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      std::vector<Fq> d;
      d.reserve(meps);
      for (auto& Wk : W) d.push_back(Wk.at(i, j));
      MJ.at(i, j) = Jet<Fq>(U.at(i, j), std::move(d));
    }
  UPoly<Jet<Fq>> chij = berkowitz_charpoly(MJ);
  FiberOutcome out;
  out.D = D;
  {
    std::vector<Fq> qc;
    for (auto& c : chij.c) qc.push_back(c.a);
    out.qt = UPoly<Fq>(z, std::move(qc));
  }
  auto [qs, qco] = squarefree_part(out.qt);
  (void)qco;
  if (qs.degree() != D) return out; // the candidate points are not separated
  out.separating = true;
  // first-order parts give the coordinates on the separated points
  UPoly<Fq> idq = poly_invmod(derivative(out.qt), out.qt);
  std::vector<UPoly<Fq>> vt;
  for (size_t k = 0; k < meps; ++k) {
    std::vector<Fq> pc;
    for (auto& c : chij.c) pc.push_back(z - c.d[k]);
    vt.push_back(poly_mod(UPoly<Fq>(z, std::move(pc)) * idq, out.qt));
  }
  // keep the candidate points satisfying every equation so far
  auto mod = ModPoly<Fq>::make_modulus(out.qt);
  std::vector<ModPoly<Fq>> args;
  for (int i = 0; i < r_new; ++i) args.push_back(ModPoly<Fq>::from_constant(mod, eta[i]));
  for (auto& vk : vt) args.push_back(ModPoly<Fq>(mod, vk));
  auto vals = evaluate_with_witness(eqsY, args, ModPoly<Fq>::from_constant(mod, z));
  UPoly<Fq> h = out.qt;
  for (auto& fv : vals)
    if (!fv.rep.is_zero()) h = poly_gcd(h, fv.rep);
  out.h = h;
  // mode side conditions: drop points where a coordinate (toric) or the
  // avoided hypersurface vanishes
  UPoly<Fq> h1 = UPoly<Fq>::constant(Fq::one(res.ctx));
  if (res.mode == Mode::Toric || (res.mode == Mode::Avoid && avoidY)) {
    ModPoly<Fq> G = ModPoly<Fq>::from_constant(mod, Fq::one(res.ctx));
    if (res.mode == Mode::Toric) {
      Matrix<Fq> ic = matrix_inverse(change_matrix(res));
      for (int i = 0; i < res.n; ++i) {
        ModPoly<Fq> xi = ModPoly<Fq>::from_constant(mod, z);
        for (int j = 0; j < res.n; ++j)
          xi = xi + args[j] * ModPoly<Fq>::from_constant(mod, ic.at(i, j));
        G = G * xi;
      }
    } else {
      auto gv = evaluate_with_witness(*avoidY, args, ModPoly<Fq>::from_constant(mod, z));
      for (auto& gi : gv) G = G * gi;
    }
    h1 = G.rep.is_zero() ? h : poly_gcd(h, G.rep);
  }
  out.h1 = h1;
  UPoly<Fq> qf = poly_div_exact(h, h1);
  if (qf.degree() == 0) {
    out.empty = true;
    return out;
  }
  out.fib.ctx = res.ctx;
  out.fib.eta = eta;
  out.fib.q = qf;
  out.fib.rho = poly_discriminant(qf); // qf divides the squarefree qt
  for (auto& vk : vt) out.fib.v.push_back(poly_mod(vk * out.fib.rho, qf));
  return out;
}

namespace solvedetail {

inline std::string empty_message(Mode mode) {
  switch (mode) {
    case Mode::Toric: return "the system has no solutions with all coordinates nonzero";
    case Mode::Avoid: return "the system has no solutions off the avoided hypersurface";
    default: return "the system has no solutions";
  }
}

} // namespace solvedetail

// One elimination level: intersect the current solution set with the next
// equation. eqs_upto lists all equations up to and including the new one, in
// the original coordinates. Produces the resolution one level down, fully
// recompressed and validated.
inline GeometricResolution extend_resolution(const GeometricResolution& res0,
                                             const Circuit& eqs_upto, const SolverConfig& cfg,
                                             Rng rng, EliminationStep& step) {
  const Ctx& cx = res0.ctx;
  int i1 = (int)eqs_upto.outputs.size();
  int r_old = res0.r, r_new = r_old - 1, m_old = res0.n - r_old;
  if (i1 != m_old + 1) throw std::domain_error("one new equation per level");
  Circuit f_next = eqs_upto;
  f_next.outputs = {eqs_upto.outputs.back()};
  long long d_next;
  try {
    d_next = std::max(1, circuit_degree_bounds(f_next)[0]);
  } catch (const std::domain_error&) {
    throw SolveError("input", "divisions must be removed before solving", false);
  }
  step.level = i1;
  step.degree_ledger = d_next * res0.delta();
  NoetherStep no = noether_step(res0, f_next, rng.fork(1));
  GeometricResolution res = no.res;
  step.a0 = no.a0;
  step.gamma = no.gamma;
  Circuit eqsY = equations_in_y(res, eqs_upto);
  Circuit avoidY;
  const Circuit* avoidp = cfg.mode == Mode::Avoid ? cfg.avoid : nullptr;
  if (avoidp) avoidY = equations_in_y(res, *avoidp);
  // Las Vegas search for a separating primitive form, checked on sample fibers
  Rng prng = rng.fork(2);
  Fq alpha, mu;
  bool accepted = false;
  std::optional<FiberOutcome> probe_keep; // the unique fiber when r_new = 0
  for (int cand = 0; cand < 8 && !accepted; ++cand) {
    Fq a = solvedetail::random_nonzero(cx, prng);
    Fq m_ = m_old > 0 ? solvedetail::random_nonzero(cx, prng) : Fq::zero(cx);
    int want = r_new == 0 ? 1 : 2;
    int good = 0;
    bool fail = false;
    Rng frng = prng.fork(100 + cand);
    for (int t = 0; t < 60 && good < want && !fail; ++t) {
      std::vector<Fq> eta;
      for (int i = 0; i < r_new; ++i) eta.push_back(random_element(cx, frng));
      auto oc = primitive_cleaning_fiber(res, no.a0, eta, a, m_, eqsY, avoidp ? &avoidY : nullptr);
      if (!oc) continue;
      if (!oc->separating) {
        fail = true;
        break;
      }
      ++good;
      if (r_new == 0) probe_keep = std::move(oc);
    }
    if (!fail && good == want) {
      alpha = a;
      mu = m_;
      accepted = true;
    }
  }
  if (!accepted) throw SolveError("primitive", "no separating primitive form found", true);
  step.alpha = alpha;
  step.mu = mu;
  std::vector<Fq> lambda_new = {alpha};
  for (auto& l : res.lambda) lambda_new.push_back(mu * l);

  if (r_new == 0) {
    FiberOutcome& oc = *probe_keep;
    step.candidate_degree = oc.D;
    step.h = oc.h;
    step.h1 = oc.h1;
    if (oc.empty) throw SolveError("cleaning", solvedetail::empty_message(cfg.mode), false);
    GeometricResolution out;
    out.ctx = cx;
    out.n = res.n;
    out.r = 0;
    out.mode = cfg.mode;
    out.change = res.change;
    out.lambda = lambda_new;
    FqPoly w0(Fq::zero(cx), 0);
    std::vector<FqPoly> qc;
    for (auto& c : oc.fib.q.c) qc.push_back(FqPoly::constant(c, 0));
    out.q = UPoly<FqPoly>(w0, std::move(qc));
    out.rho = FqPoly::constant(oc.fib.rho, 0);
    for (auto& vj : oc.fib.v) {
      std::vector<FqPoly> vc;
      for (auto& c : vj.c) vc.push_back(FqPoly::constant(c, 0));
      out.v.push_back(UPoly<FqPoly>(w0, std::move(vc)));
    }
    step.delta = out.delta();
    if (step.delta > step.degree_ledger)
      throw SolveError("verify", "eliminated degree exceeds the level ledger", true);
    auto rep = validate(out, eqs_upto, rng.fork(3), avoidp);
    if (!rep.ok) {
      std::string msg = "certificate check failed";
      for (auto& is : rep.issues) msg += "; " + is;
      throw SolveError("verify", msg, true);
    }
    return out;
  }

  // generic cleaned degree across sample fibers (degree can only drop at
  // unlucky fiber points)
  Rng srng = rng.fork(4);
  int delta_new = 0, seen = 0;
  std::vector<FiberOutcome> pool;
  for (int t = 0; t < 120 && seen < 5; ++t) {
    std::vector<Fq> eta;
    for (int i = 0; i < r_new; ++i) eta.push_back(random_element(cx, srng));
    auto oc = primitive_cleaning_fiber(res, no.a0, eta, alpha, mu, eqsY, avoidp ? &avoidY : nullptr);
    if (!oc || !oc->separating) continue;
    ++seen;
    if (oc->empty) continue;
    delta_new = std::max(delta_new, oc->fib.q.degree());
    pool.push_back(std::move(*oc));
  }
  if (seen == 0) throw SolveError("cleaning", "no usable fiber points found", true);
  if (delta_new == 0) throw SolveError("cleaning", solvedetail::empty_message(cfg.mode), false);
  // a lifting fiber achieving the generic degree, unramified with invertible
  // Jacobian on every branch
  LiftingFiber lf;
  bool have = false;
  auto try_fiber = [&](const FiberOutcome& oc) {
    if (oc.fib.q.degree() != delta_new) return false;
    Fq muj = jacobian_mu(eqsY, oc.fib);
    if (muj.is_zero()) return false;
    RootSet rs = find_roots(oc.fib.q, srng.fork(101));
    if ((int)rs.roots.size() != delta_new) return false;
    lf.eta = oc.fib.eta;
    lf.fib = oc.fib;
    lf.ext = rs.ctx;
    lf.mu = muj;
    lf.xi.clear();
    for (const Fq& zt : rs.roots) {
      std::vector<Fq> dep;
      for (auto& vj : oc.fib.v) {
        Fq val = Fq::zero(rs.ctx);
        for (size_t k = vj.c.size(); k-- > 0;) val = val * zt + vj.c[k];
        dep.push_back(val / oc.fib.rho);
      }
      lf.xi.push_back(std::move(dep));
    }
    step.candidate_degree = oc.D;
    step.h = oc.h;
    step.h1 = oc.h1;
    return true;
  };
  for (auto& oc : pool)
    if ((have = try_fiber(oc))) break;
  for (int t = 0; t < 200 && !have; ++t) {
    std::vector<Fq> eta;
    for (int i = 0; i < r_new; ++i) eta.push_back(random_element(cx, srng));
    auto oc = primitive_cleaning_fiber(res, no.a0, eta, alpha, mu, eqsY, avoidp ? &avoidY : nullptr);
    if (!oc || !oc->separating || oc->empty) continue;
    have = try_fiber(*oc);
  }
  if (!have) throw SolveError("lifting", "no unramified lifting fiber found", true);
  step.delta = delta_new;
  if (step.delta > step.degree_ledger)
    throw SolveError("verify", "eliminated degree exceeds the level ledger", true);
  GeometricResolution skel;
  skel.ctx = cx;
  skel.n = res.n;
  skel.r = r_new;
  skel.mode = cfg.mode;
  skel.change = res.change;
  skel.lambda = lambda_new;
  if (cfg.sharp) {
    try {
      return lift_resolution(skel, eqs_upto, lf, sharp_precision(delta_new), rng.fork(5), avoidp);
    } catch (const LiftFailure&) {
      // fall through to the safe precision
    }
  }
  return lift_resolution(skel, eqs_upto, lf, safe_precision(delta_new), rng.fork(6), avoidp);
}

namespace solvedetail {

inline Circuit prefix_outputs(const Circuit& c, int k) {
  Circuit r = c;
  r.outputs.assign(c.outputs.begin(), c.outputs.begin() + k);
  return r;
}

inline std::vector<std::vector<Fq>> random_change(const Ctx& cx, int n, Rng& rng) {
  for (int t = 0; t < 200; ++t) {
    Matrix<Fq> M(Fq::zero(cx), n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M.at(i, j) = random_element(cx, rng);
    if (matrix_det(M).is_zero()) continue;
    std::vector<std::vector<Fq>> rows(n, std::vector<Fq>(n, Fq::zero(cx)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i][j] = M.at(i, j);
    return rows;
  }
  throw SolveError("solve", "could not sample an invertible change of variables", false);
}

inline void reject_degenerate(const Circuit& system, const Ctx& ctx) {
  for (auto& g : system.gates)
    if (g.op == Gate::Div)
      throw SolveError("input", "divisions must be removed before solving", false);
  auto cmask = system.const_mask();
  for (int o : system.outputs)
    if (cmask[o]) throw SolveError("input", "an equation is constant", false);
  bool structural = false;
  std::vector<FqPoly> dense;
  try {
    dense = dense_expand(system, Fq::zero(ctx));
  } catch (const std::domain_error&) {
    structural = true; // too large to expand: compare gate structure only
  }
  int s = (int)system.outputs.size();
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      bool same = structural ? system.outputs[i] == system.outputs[j]
                             : (dense[i] - dense[j]).is_zero();
      if (same) throw SolveError("input", "two equations coincide", false);
    }
}

} // namespace solvedetail

// Geometric resolution of the zero-dimensional solution set of the system.
// More equations than variables are merged into n generic combinations first.
// On retryable failures (bad random choices) the whole elimination restarts
// with a fresh random change of variables, up to cfg.retries times.
inline SolveResult solve(const Circuit& system, const Ctx& ctx, SolverConfig cfg = SolverConfig{}) {
  int n = system.arity, s = (int)system.outputs.size();
  if (n < 1) throw SolveError("input", "the system has no variables", false);
  if (s < n) throw SolveError("input", "fewer equations than variables", false);
  solvedetail::reject_degenerate(system, ctx);
  if (cfg.mode == Mode::Avoid) {
    if (!cfg.avoid || cfg.avoid->arity != n)
      throw SolveError("input", "avoid mode needs a hypersurface circuit in the same variables", false);
    for (auto& g : cfg.avoid->gates)
      if (g.op == Gate::Div)
        throw SolveError("input", "divisions must be removed before solving", false);
  }
  Rng root(cfg.seed);
  Circuit eqsn = system;
  if (s > n) eqsn = generic_combinations(system, n, ctx, root.fork(3)).circuit;
  std::string last = "no attempt made";
  for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
    Rng arng = root.fork(1000 + attempt);
    std::vector<std::vector<Fq>> change;
    if (attempt == 0) {
      change.assign(n, std::vector<Fq>(n, Fq::zero(ctx)));
      for (int i = 0; i < n; ++i) change[i][i] = Fq::one(ctx);
    } else {
      Rng crng = arng.fork(1);
      change = solvedetail::random_change(ctx, n, crng);
    }
    SolveResult result;
    result.res = trivial_resolution(ctx, n, cfg.mode, change);
    try {
      for (int i = 0; i < n; ++i) {
        EliminationStep step;
        result.res = extend_resolution(result.res, solvedetail::prefix_outputs(eqsn, i + 1), cfg,
                                       arng.fork(10 + i), step);
        result.log.push_back(std::move(step));
      }
      return result;
    } catch (const SolveError& e) {
      if (!e.retryable) throw;
      last = e.what();
    } catch (const LiftFailure& e) {
      last = e.what();
    } catch (const InterpFailure& e) {
      last = e.what();
    }
  }
  throw SolveError("solve", "retry budget exhausted; last failure: " + last, false);
}

// Characteristic polynomial of the linear form sum alpha_i X_i on the
// solution algebra of a fully eliminated resolution (multiplicities count).
inline UPoly<Fq> eliminating_poly(const GeometricResolution& res, const std::vector<Fq>& alpha) {
  if (res.r != 0) throw std::domain_error("eliminating polynomial needs a fully eliminated resolution");
  if ((int)alpha.size() != res.n) throw std::domain_error("linear form arity mismatch");
  FiberResolution fib = specialize(res, {});
  auto mod = ModPoly<Fq>::make_modulus(fib.q);
  auto x = solvedetail::fiber_coordinates(res, fib, mod);
  ModPoly<Fq> zm = ModPoly<Fq>::from_constant(mod, Fq::zero(res.ctx));
  for (int i = 0; i < res.n; ++i) zm = zm + x[i] * ModPoly<Fq>::from_constant(mod, alpha[i]);
  return berkowitz_charpoly(poly_at_matrix(zm.rep, companion_matrix(fib.q)));
}

} // namespace geores
