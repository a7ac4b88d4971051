// Acceptance harness: one pass/fail line per criterion, nonzero exit when a
// gating criterion fails. Needs GEORES_CORPUS (fixture directory) and
// GEORES_CLI (binary path) in the environment; ctest sets both.
#include <chrono>
#include <iterator>
#include <sys/wait.h>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geores/io.hpp"
#include "geores/lifting.hpp"
#include "geores/solver.hpp"

using namespace geores;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int k, bool ok, const std::string& msg) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", k, msg.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string corpus_dir() {
  const char* d = std::getenv("GEORES_CORPUS");
  return d ? d : "tests/corpus";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Entry {
  const char* file;
  Mode mode;
  int degree; // expected deg q over the closure
};

const Entry CORPUS[] = {
    {"diag_f23.sys", Mode::Affine, 4},
    {"line_f23.sys", Mode::Affine, 1},
    {"hyperbola_f23.sys", Mode::Affine, 2},
    {"circle_f23.sys", Mode::Affine, 2},
    {"idem_f23.sys", Mode::Affine, 2},
    {"idem_f23.sys", Mode::Toric, 1},
    {"cascade_f23.sys", Mode::Affine, 2},
    {"avoid_diag_f23.sys", Mode::Avoid, 2},
    {"diag_f101.sys", Mode::Affine, 4},
    {"sum_f101.sys", Mode::Affine, 2},
    {"mixed_f101.sys", Mode::Affine, 4},
    {"toric_hyper_f101.sys", Mode::Toric, 2},
    {"cubic_f10007.sys", Mode::Affine, 3},
    {"pair_f10007.sys", Mode::Affine, 6},
    {"twist_f10007.sys", Mode::Affine, 6},
};

struct CorpusRun {
  Entry entry;
  SystemFile sf;
  GeometricResolution res;
  std::vector<std::vector<Fq>> points;
  double secs = 0;
  bool ok = false;
  std::string error;
};

// exhaustive base-field scan, the independent reference answer
std::vector<std::vector<u64>> brute_force(const SystemFile& sf, Mode mode) {
  int n = (int)sf.vars.size();
  u64 p = sf.ctx->p;
  double total = 1;
  for (int i = 0; i < n; ++i) total *= (double)p;
  if (total > 1e8) throw std::runtime_error("scan too large");
  std::vector<u64> idx(n, 0);
  std::vector<std::vector<u64>> sols;
  for (;;) {
    std::vector<Fq> pt;
    for (int i = 0; i < n; ++i) pt.push_back(Fq::from_int(sf.ctx, (long long)idx[i]));
    bool keep = true;
    if (mode == Mode::Toric)
      for (auto& v : pt) keep = keep && !v.is_zero();
    if (keep && mode == Mode::Avoid && sf.avoid)
      for (auto& v : evaluate(*sf.avoid, pt)) keep = keep && !v.is_zero();
    if (keep) {
      bool sat = true;
      for (auto& v : evaluate(sf.eqs, pt)) sat = sat && v.is_zero();
      if (sat) sols.push_back(idx);
    }
    int i = 0;
    while (i < n && ++idx[i] == p) idx[i++] = 0;
    if (i == n) break;
  }
  return sols;
}

std::vector<CorpusRun> run_corpus() {
  std::vector<CorpusRun> runs;
  for (const Entry& e : CORPUS) {
    CorpusRun cr;
    cr.entry = e;
    auto t0 = Clock::now();
    try {
      cr.sf = parse_system(slurp(corpus_dir() + "/" + e.file));
      SolverConfig cfg;
      cfg.seed = 1;
      cfg.mode = e.mode;
      if (e.mode == Mode::Avoid) {
        if (!cr.sf.avoid) throw std::runtime_error("missing avoid line");
        cfg.avoid = &*cr.sf.avoid;
      }
      SolveResult sr = solve(cr.sf.eqs, cr.sf.ctx, cfg);
      cr.res = sr.res;
      cr.points = enumerate_points(cr.res, {}, Rng(314).fork(1));
      cr.ok = true;
    } catch (const std::exception& ex) {
      cr.error = ex.what();
    }
    cr.secs = seconds_since(t0);
    runs.push_back(std::move(cr));
  }
  return runs;
}

void criterion_corpus(const std::vector<CorpusRun>& runs) {
  std::string bad;
  for (const CorpusRun& cr : runs) {
    std::string tag = std::string(cr.entry.file) + "[" + mode_name(cr.entry.mode) + "]";
    if (!cr.ok) {
      bad += tag + ": " + cr.error + "; ";
      continue;
    }
    if (cr.secs > 60) bad += tag + ": took too long; ";
    if (cr.res.delta() != cr.entry.degree) {
      bad += tag + ": deg q = " + std::to_string(cr.res.delta()) + " expected " +
             std::to_string(cr.entry.degree) + "; ";
      continue;
    }
    // every point (base field or extension) satisfies all equations exactly
    std::vector<std::vector<u64>> rational;
    for (auto& pt : cr.points) {
      for (auto& v : evaluate(cr.sf.eqs, pt))
        if (!v.is_zero()) bad += tag + ": point violates an equation; ";
      if (cr.entry.mode == Mode::Toric)
        for (auto& v : pt)
          if (v.is_zero()) bad += tag + ": toric point has a zero coordinate; ";
      if (cr.entry.mode == Mode::Avoid && cr.sf.avoid)
        for (auto& v : evaluate(*cr.sf.avoid, pt))
          if (v.is_zero()) bad += tag + ": point lies on the avoided hypersurface; ";
      bool base = true;
      for (auto& v : pt) base = base && v.in_base_field();
      if (base) {
        std::vector<u64> row;
        for (auto& v : pt) row.push_back(v.base_value());
        rational.push_back(std::move(row));
      }
    }
    // rational points match the exhaustive scan where the scan is feasible
    double total = 1;
    for (size_t i = 0; i < cr.sf.vars.size(); ++i) total *= (double)cr.sf.ctx->p;
    if (total <= 1e8) {
      auto oracle = brute_force(cr.sf, cr.entry.mode);
      std::sort(rational.begin(), rational.end());
      std::sort(oracle.begin(), oracle.end());
      if (rational != oracle) bad += tag + ": rational points differ from the scan; ";
    }
  }
  report(1, bad.empty(),
         bad.empty() ? std::to_string(std::size(CORPUS)) + " corpus runs match the oracle" : bad);
}

void criterion_diagonal(const std::vector<CorpusRun>& runs) {
  for (const CorpusRun& cr : runs) {
    if (std::string(cr.entry.file) != "diag_f23.sys") continue;
    bool ok = cr.ok && cr.res.delta() == 4 && cr.secs < 5 && cr.points.size() == 4;
    std::vector<std::vector<u64>> want = {{5, 7}, {5, 16}, {18, 7}, {18, 16}}, got;
    for (auto& pt : cr.points) {
      std::vector<u64> row;
      for (auto& v : pt) row.push_back(v.in_base_field() ? v.base_value() : (u64)-1);
      got.push_back(row);
    }
    std::sort(got.begin(), got.end());
    ok = ok && got == want;
    report(2, ok, "X1^2-2, X2^2-3 over F_23: deg q = 4, points {(5,7),(5,16),(18,7),(18,16)}");
    return;
  }
  report(2, false, "diagonal entry missing");
}

void criterion_toric(const std::vector<CorpusRun>& runs) {
  int aff = -1, tor = -1;
  for (const CorpusRun& cr : runs)
    if (std::string(cr.entry.file) == "idem_f23.sys" && cr.ok)
      (cr.entry.mode == Mode::Toric ? tor : aff) = cr.res.delta();
  bool ok = aff == 2 && tor == 1;
  report(3, ok, "X1^2-X1: affine deg " + std::to_string(aff) + ", toric deg " + std::to_string(tor));
}

// degree-d plane curve X2 = i*X1, i = 1..d, as a partial resolution with X1 free
struct PowerCurve {
  GeometricResolution res;
  Circuit eqs;
};

PowerCurve product_curve(const Ctx& cx, int d) {
  PowerCurve pc;
  GeometricResolution& res = pc.res;
  res.ctx = cx;
  res.n = 2;
  res.r = 1;
  res.change = {{Fq::one(cx), Fq::zero(cx)}, {Fq::zero(cx), Fq::one(cx)}};
  res.lambda = {Fq::one(cx)};
  FqPoly w(Fq::zero(cx), 1);
  FqPoly y1 = FqPoly::var(Fq::zero(cx), 1, 0);
  UPoly<FqPoly> q(w, {FqPoly::constant(Fq::one(cx), 1)});
  for (int i = 1; i <= d; ++i) {
    FqPoly root = y1 * FqPoly::constant(Fq::from_int(cx, i), 1);
    q = q * UPoly<FqPoly>(w, {-root, FqPoly::constant(Fq::one(cx), 1)});
  }
  res.q = q;
  res.rho = poly_discriminant_ring(res.q);
  res.v = {UPoly<FqPoly>(w, {w, res.rho})}; // rho * T
  res.degree_budget = 2LL * d * d * d;

  Circuit& c = pc.eqs;
  c = Circuit::inputs(2);
  int acc = -1;
  for (int i = 1; i <= d; ++i) {
    int factor = c.sub(1, c.scale(i, 1, 0)); // X2 - i X1
    acc = acc < 0 ? factor : c.mul(acc, factor);
  }
  c.outputs.push_back(acc);
  return pc;
}

void criterion_degree_bounds(const std::vector<CorpusRun>& runs) {
  std::string bad;
  for (const CorpusRun& cr : runs) {
    if (!cr.ok) continue;
    std::string tag = cr.entry.file;
    FiberResolution fib = specialize(cr.res, {});
    for (auto& vj : cr.res.v)
      if (vj.degree() >= cr.res.q.degree()) bad += tag + ": deg_T v >= deg_T q; ";
    auto qd = derivative(fib.q);
    if (poly_gcd(fib.q, qd).degree() != 0) bad += tag + ": q is not separable; ";
  }
  Ctx cx = make_prime_field(10007);
  for (int d : {2, 3, 4, 8}) {
    PowerCurve pc = product_curve(cx, d);
    std::string tag = "curve d=" + std::to_string(d);
    try {
      GeometricResolution out = compress(pc.res, pc.eqs, Rng(5000 + d));
      long long cap = 2LL * d * d * d;
      if (out.rho.total_degree() > cap) bad += tag + ": deg rho exceeds 2*d^3; ";
      for (auto& vj : out.v) {
        if (vj.degree() >= out.q.degree()) bad += tag + ": deg_T v >= deg_T q; ";
        for (auto& cc : vj.c)
          if (cc.total_degree() > cap) bad += tag + ": v coefficient exceeds 2*d^3; ";
      }
      if (!validate(out, pc.eqs, Rng(77 + d)).ok) bad += tag + ": invalid certificate; ";
    } catch (const std::exception& ex) {
      bad += tag + ": " + ex.what() + "; ";
    }
  }
  report(4, bad.empty(),
         bad.empty() ? "deg rho and v coefficients within 2*dbar^3; deg_T v < deg_T q; q separable"
                     : bad);
}

// random division-free circuit with bounded output degree
Circuit random_bounded_circuit(int n, int L, int max_deg, Rng& rng, const Ctx& cx) {
  Circuit c = Circuit::inputs(n);
  std::vector<int> deg(n, 1);
  long long muls = 0;
  while (muls < L && c.gates.size() < 300) {
    int a = (int)rng.below((u64)c.gates.size());
    int b = (int)rng.below((u64)c.gates.size());
    switch (rng.below(4)) {
      case 0: c.add(a, b); deg.push_back(std::max(deg[a], deg[b])); break;
      case 1: c.sub(a, b); deg.push_back(std::max(deg[a], deg[b])); break;
      case 2: c.scale_fq(random_element(cx, rng), a); deg.push_back(deg[a]); break;
      default:
        if (deg[a] + deg[b] > max_deg) continue;
        c.mul(a, b);
        deg.push_back(deg[a] + deg[b]);
        ++muls;
        break;
    }
  }
  c.outputs.push_back((int)c.gates.size() - 1);
  return c;
}

void criterion_homogenize() {
  Ctx cx = make_prime_field(101);
  Rng rng(0x40b0);
  std::string bad;
  int done = 0;
  while (done < 100) {
    int n = 1 + (int)rng.below(3);
    Circuit c = random_bounded_circuit(n, 1 + (int)rng.below(6), 8, rng, cx);
    long long L = measure(c).L;
    if (L < 1) continue;
    auto bounds = circuit_degree_bounds(c);
    long long d = 0;
    for (int b : bounds) d = std::max(d, (long long)b);
    if (d < 1) continue;
    Circuit h = homogenize(c, bounds, cx);
    long long hl = measure(h).L;
    if (hl > d * (d + 1) * (d + 1) * L) {
      bad += "case " + std::to_string(done) + ": " + std::to_string(hl) + " > d(d+1)^2 L; ";
    }
    ++done;
  }
  report(5, bad.empty(), bad.empty() ? "homogenize nonscalar size within d(d+1)^2 L on 100 circuits" : bad);
}

void criterion_newton_steps() {
  Ctx cx = make_prime_field(10007);
  std::string bad;
  for (int d : {2, 3, 4, 8}) {
    PowerCurve pc = product_curve(cx, d);
    std::vector<int> steps;
    try {
      compress(pc.res, pc.eqs, Rng(900 + d), false, nullptr, &steps);
    } catch (const std::exception& ex) {
      bad += "d=" + std::to_string(d) + ": " + ex.what() + "; ";
      continue;
    }
    int want = newton_step_count(d); // 3 ceil(log2 d) + 2
    if ((int)steps.size() != d) bad += "d=" + std::to_string(d) + ": wrong branch count; ";
    for (int s : steps)
      if (s != want)
        bad += "d=" + std::to_string(d) + ": " + std::to_string(s) + " steps, expected " +
               std::to_string(want) + "; ";
  }
  bool consts = newton_step_count(2) == 5 && newton_step_count(3) == 8 &&
                newton_step_count(4) == 8 && newton_step_count(8) == 11;
  if (!consts) bad += "step-count constants off; ";
  report(6, bad.empty(),
         bad.empty() ? "3*ceil(log2 dbar)+2 Newton steps per branch for dbar in {2,3,4,8}" : bad);
}

void criterion_recover_q() {
  Ctx cx = make_prime_field(10007);
  Rng rng(0xa11ce);
  auto t0 = Clock::now();
  std::string bad;
  int done = 0;
  while (done < 50) {
    int dt = 1 + (int)rng.below(3);
    // monic in T; coefficients of Y-degree <= 2
    std::vector<UPoly<Fq>> coeff;
    for (int i = 0; i < dt; ++i) {
      std::vector<Fq> cc;
      for (int j = 0; j <= 2; ++j) cc.push_back(random_element(cx, rng));
      coeff.push_back(UPoly<Fq>(Fq::zero(cx), std::move(cc)));
    }
    Fq eta = random_element(cx, rng);
    std::vector<Fq> spec;
    for (int i = 0; i < dt; ++i) spec.push_back(coeff[i].eval(eta));
    spec.push_back(Fq::one(cx));
    UPoly<Fq> qeta(Fq::zero(cx), std::move(spec));
    if (poly_discriminant(qeta).is_zero()) continue; // not separable here, redraw
    // circuit computing q(Y, T), Horner in T then in Y
    Circuit c = Circuit::inputs(2);
    int acc = c.constant(1);
    for (int i = dt - 1; i >= 0; --i) {
      acc = c.mul(acc, 1);
      int ci;
      if (coeff[i].c.empty()) {
        ci = c.constant(0);
      } else {
        ci = c.constant_fq(coeff[i].c.back());
        for (int j = (int)coeff[i].c.size() - 2; j >= 0; --j)
          ci = c.add(c.mul(ci, 0), c.constant_fq(coeff[i].c[j]));
      }
      acc = c.add(acc, ci);
    }
    c.outputs.push_back(acc);
    RootSet rs = find_roots(qeta, rng.fork(300 + done));
    if ((int)rs.roots.size() != dt) {
      bad += "case " + std::to_string(done) + ": root count off; ";
      ++done;
      continue;
    }
    long long kappa = safe_precision(dt);
    Fq eta_ext = eta + Fq::zero(rs.ctx);
    std::vector<std::vector<TSeries<Fq>>> br;
    try {
      for (const Fq& z : rs.roots)
        br.push_back(newton_lift(c, std::vector<Fq>{eta_ext}, std::vector<Fq>{z}, (int)kappa,
                                 newton_step_count(dt)));
    } catch (const std::exception& ex) {
      bad += "case " + std::to_string(done) + ": " + ex.what() + "; ";
      ++done;
      continue;
    }
    std::vector<TSeries<Fq>> u;
    for (auto& b : br) u.push_back(b[0]);
    auto qt = recover_q(u);
    // compare against q(eta + E, T) coefficient by coefficient
    UPoly<Fq> shift(Fq::zero(rs.ctx), {eta_ext, Fq::one(rs.ctx)});
    for (int i = 0; i < dt; ++i) {
      UPoly<Fq> want(Fq::zero(rs.ctx));
      for (size_t j = coeff[i].c.size(); j-- > 0;)
        want = want * shift + UPoly<Fq>(Fq::zero(rs.ctx), {coeff[i].c[j] + Fq::zero(rs.ctx)});
      for (int k = 0; k <= (int)kappa; ++k) {
        Fq w = k <= want.degree() ? want.c[k] : Fq::zero(rs.ctx);
        if (!(qt.c[i].coeff({k}) == w)) {
          bad += "case " + std::to_string(done) + ": coefficient mismatch; ";
          k = (int)kappa;
          i = dt;
        }
      }
    }
    ++done;
  }
  bool in_time = seconds_since(t0) < 10;
  if (!in_time) bad += "over the 10 s budget; ";
  report(7, bad.empty(), bad.empty() ? "recover_q exact on 50 random bivariate polynomials" : bad);
}

void criterion_gradient() {
  Ctx cx = make_prime_field(101);
  Rng rng(0x9add);
  std::string bad;
  int done = 0;
  while (done < 100) {
    int n = 1 + (int)rng.below(3);
    Circuit c = random_bounded_circuit(n, 1 + (int)rng.below(30), 9, rng, cx);
    if (measure(c).L > 30) continue;
    std::vector<MPoly<Fq>> dense;
    try {
      dense = dense_expand(c, Fq::zero(cx));
    } catch (const std::domain_error&) {
      continue;
    }
    Circuit g = gradient(c);
    for (int t = 0; t < 20; ++t) {
      std::vector<Fq> pt;
      for (int i = 0; i < n; ++i) pt.push_back(random_element(cx, rng));
      auto got = evaluate(g, pt);
      for (int i = 0; i < n; ++i)
        if (!(got[i] == mpoly_derivative(dense[0], i).eval(pt)))
          bad += "case " + std::to_string(done) + ": partial " + std::to_string(i) + " differs; ";
    }
    ++done;
  }
  report(8, bad.empty(), bad.empty() ? "gradient equals formal derivatives, 100 circuits x 20 points" : bad);
}

void criterion_divisions() {
  Ctx cx = make_prime_field(101);
  Rng rng(0xd177);
  std::string bad;
  int done = 0;
  while (done < 50) {
    int n = 1 + (int)rng.below(3);
    Circuit f = random_bounded_circuit(n, 1 + (int)rng.below(4), 6, rng, cx);
    // c computes (f*g)/g, a division that cancels
    Circuit c = f;
    c.outputs.clear();
    int fg = (int)c.gates.size() - 1;
    Circuit g = random_bounded_circuit(n, 1 + (int)rng.below(3), 4, rng, cx);
    std::vector<int> remap(g.gates.size());
    for (size_t i = 0; i < g.gates.size(); ++i) {
      Gate gg = g.gates[i];
      if (gg.op != Gate::Input) {
        if (gg.a >= 0 && g.gates[gg.a].op != Gate::Input) gg.a = remap[gg.a];
        else if (gg.a >= 0) gg.a = g.gates[gg.a].a; // input slot i maps to gate i
        if (gg.b >= 0 && g.gates[gg.b].op != Gate::Input) gg.b = remap[gg.b];
        else if (gg.b >= 0) gg.b = g.gates[gg.b].a;
      }
      if (gg.op == Gate::Input) {
        remap[i] = gg.a; // reuse the shared input gates
      } else {
        c.gates.push_back(gg);
        remap[i] = (int)c.gates.size() - 1;
      }
    }
    int gg_out = remap[g.outputs[0]];
    c.outputs.push_back(c.div(c.mul(fg, gg_out), gg_out));
    // center off the vanishing locus of the denominator
    std::vector<Fq> center;
    bool found = false;
    for (int t = 0; t < 200 && !found; ++t) {
      center.clear();
      for (int i = 0; i < n; ++i) center.push_back(random_element(cx, rng));
      try {
        evaluate(c, center);
        found = true;
      } catch (const CircuitError&) {
      }
    }
    if (!found) continue;
    int D = circuit_degree_bounds(f)[0];
    Circuit e = eliminate_divisions(c, center, std::max(D, 0));
    auto de = dense_expand(e, Fq::zero(cx));
    auto df = dense_expand(f, Fq::zero(cx));
    if (!(de[0] == df[0])) bad += "case " + std::to_string(done) + ": dense expansions differ; ";
    ++done;
  }
  report(9, bad.empty(), bad.empty() ? "division-free rewrites dense-equal the originals, 50 cases" : bad);
}

void criterion_pit() {
  Ctx cx = make_prime_field(10007);
  Rng rng(0x417);
  std::string bad;
  // structurally disguised zero circuits must always pass
  for (int t = 0; t < 50; ++t) {
    int n = 1 + (int)rng.below(3);
    Circuit c = Circuit::inputs(n);
    // (a+b)+c and a+(b+c) on random linear combinations, then subtracted
    int a = (int)rng.below((u64)n), b = (int)rng.below((u64)n), d = (int)rng.below((u64)n);
    int m1 = c.mul(a, b);
    int left = c.add(c.add(m1, d), a);
    int right = c.add(m1, c.add(d, a));
    c.outputs.push_back(c.mul(c.sub(left, right), (int)rng.below((u64)n)));
    CostProfile pr = measure(c);
    auto cts = make_cts(n, std::max<long long>(1, pr.L), std::max<long long>(1, pr.depth), cx,
                        rng.fork(1000 + t));
    if (!pit_is_zero(c, cts)) bad += "zero circuit rejected; ";
  }
  // seeded nonzero circuits: count identity-test misses (statistical, non-gating)
  int misses = 0, done = 0;
  long long omega = 0, sigma = 0;
  while (done < 1000) {
    int n = 1 + (int)rng.below(3);
    Circuit c = random_bounded_circuit(n, 1 + (int)rng.below(4), 8, rng, cx);
    auto dense = dense_expand(c, Fq::zero(cx));
    if (dense[0].is_zero()) continue;
    CostProfile pr = measure(c);
    long long L = std::max<long long>(1, pr.L), ell = std::max<long long>(1, pr.depth);
    if (cts_omega(ell) > (long long)cx->p) continue;
    auto cts = make_cts(n, L, ell, cx, rng.fork(5000 + done));
    omega = std::max(omega, cts.omega);
    sigma = std::max(sigma, cts.sigma);
    if (pit_is_zero(c, cts)) ++misses;
    ++done;
  }
  std::string note = "zero circuits accepted; " + std::to_string(1000 - misses) +
                     "/1000 nonzero circuits rejected (omega up to " + std::to_string(omega) +
                     ", sigma up to " + std::to_string(sigma) + ")";
  if (misses > 0)
    note += "; " + std::to_string(misses) + " misses logged against the omega^(-sigma/6) budget";
  report(10, bad.empty(), bad.empty() ? note : bad);
}

std::string run_capture(const std::string& cmd, int& code) {
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) {
    code = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  int st = pclose(p);
  code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

void criterion_determinism() {
  const char* bin = std::getenv("GEORES_CLI");
  if (!bin) {
    report(11, false, "GEORES_CLI is not set");
    return;
  }
  std::string bad;
  for (const Entry& e : CORPUS) {
    std::string cmd = std::string(bin) + " solve --mode " + mode_name(e.mode) + " --seed 11 " +
                      corpus_dir() + "/" + e.file;
    int c1, c2;
    std::string o1 = run_capture(cmd, c1);
    std::string o2 = run_capture(cmd, c2);
    if (c1 != 0 || c2 != 0)
      bad += std::string(e.file) + ": exit " + std::to_string(c1) + "/" + std::to_string(c2) + "; ";
    else if (o1 != o2)
      bad += std::string(e.file) + ": outputs differ between runs; ";
  }
  report(11, bad.empty(), bad.empty() ? "byte-identical JSON across seeded reruns of the corpus" : bad);
}

} // namespace

int main() {
  auto runs = run_corpus();
  criterion_corpus(runs);
  criterion_diagonal(runs);
  criterion_toric(runs);
  criterion_degree_bounds(runs);
  criterion_homogenize();
  criterion_newton_steps();
  criterion_recover_q();
  criterion_gradient();
  criterion_divisions();
  criterion_pit();
  criterion_determinism();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
