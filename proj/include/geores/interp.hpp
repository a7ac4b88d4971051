#pragma once
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "geores/densepoly.hpp"
#include "geores/matrix.hpp"
#include "geores/roots.hpp"
#include "geores/series.hpp"

namespace geores {

// Pointwise reconstruction of polynomials in the free variables. A pipeline
// step (characteristic polynomial, gcd quotient, ...) is run at specialized
// fiber points and the polynomial coefficients are recovered from the scalar
// results. The evaluator returns no value at unlucky points (discriminant
// vanishing, degree drop); those are skipped. Results are verified at fresh
// points; a single bound escalation is attempted before giving up.
using PointEvaluator = std::function<std::optional<std::vector<Fq>>(const std::vector<Fq>&)>;

struct InterpFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace interpdetail {

// sampling context: large enough extension that distinct points exist
inline Ctx sampling_context(const Ctx& base, u64 needed, Rng& rng) {
  u64 cap = 1;
  for (int i = 0; i < base->e; ++i) cap *= base->p;
  if (cap >= needed + 16) return base;
  if (base->e != 1) throw InterpFailure("sampling set too small over an extension field");
  int e = base->e;
  while (cap < needed + 16 && e < 12) {
    ++e;
    cap *= base->p;
  }
  if (cap < needed + 16) throw InterpFailure("cannot build a sampling set of the required size");
  return make_extension(base->p, e, rng);
}

inline std::vector<Fq> random_point(const Ctx& cx, int r, Rng& rng) {
  std::vector<Fq> pt;
  for (int i = 0; i < r; ++i) pt.push_back(random_element(cx, rng));
  return pt;
}

inline FqPoly to_base(const FqPoly& p, const Ctx& base) {
  FqPoly r(Fq::zero(base), p.nvars);
  for (auto& [e, c] : p.t) {
    if (!c.in_base_field()) throw InterpFailure("reconstructed coefficient leaves the base field");
    r.t[e] = Fq::from_int(base, (long long)c.base_value());
  }
  return r;
}

} // namespace interpdetail

// reconstruct `outputs` polynomials of total degree <= bound in r variables
inline std::vector<FqPoly> interp_reconstruct(const Ctx& base, int r, long long bound, int outputs,
                                              const PointEvaluator& eval, Rng rng,
                                              bool allow_escalation = true) {
  if (r == 0) {
    auto got = eval({});
    if (!got) throw InterpFailure("the unique fiber of a zero-dimensional base is unlucky");
    if ((int)got->size() != outputs) throw InterpFailure("evaluator output arity mismatch");
    std::vector<FqPoly> res;
    for (auto& v : *got) res.push_back(FqPoly::constant(v, 0));
    return res;
  }
  long long nodes_needed;
  std::shared_ptr<const SeriesLayout> lay;
  if (r == 1) {
    nodes_needed = bound + 1;
  } else {
    lay = series_layout(r, (int)bound);
    nodes_needed = (long long)lay->size();
  }
  Ctx cx = interpdetail::sampling_context(base, (u64)nodes_needed, rng);
  long long budget = 40 * nodes_needed + 400;
  std::vector<FqPoly> res;
  // a fresh point set is drawn again if the sample matrix happens to be singular
  for (int round = 0;; ++round) {
    std::vector<std::vector<Fq>> pts;
    std::vector<std::vector<Fq>> vals; // per point
    auto seen = [&](const std::vector<Fq>& pt) {
      for (auto& q : pts) {
        bool same = true;
        for (int i = 0; i < r; ++i) same = same && q[i] == pt[i];
        if (same) return true;
      }
      return false;
    };
    while ((long long)pts.size() < nodes_needed) {
      if (--budget < 0) throw InterpFailure("too many unlucky specialization points");
      auto pt = interpdetail::random_point(cx, r, rng);
      if (seen(pt)) continue;
      auto got = eval(pt);
      if (!got) continue;
      if ((int)got->size() != outputs) throw InterpFailure("evaluator output arity mismatch");
      pts.push_back(pt);
      vals.push_back(std::move(*got));
    }
    res.clear();
    if (r == 1) {
      std::vector<Fq> nodes;
      for (auto& p : pts) nodes.push_back(p[0]);
      for (int o = 0; o < outputs; ++o) {
        std::vector<Fq> ys;
        for (auto& v : vals) ys.push_back(v[o]);
        UPoly<Fq> f = lagrange_interpolate(nodes, ys);
        FqPoly m(Fq::zero(cx), 1);
        for (size_t k = 0; k < f.c.size(); ++k)
          if (!f.c[k].is_zero()) m.t[{(int)k}] = f.c[k];
        res.push_back(std::move(m));
      }
      break;
    }
    // dense solve on the monomial basis of total degree <= bound
    int N = (int)nodes_needed;
    Matrix<Fq> M(Fq::zero(cx), N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        Fq mv = Fq::one(cx);
        for (int k = 0; k < r; ++k)
          for (int t = 0; t < lay->exps[j][k]; ++t) mv = mv * pts[i][k];
        M.at(i, j) = mv;
      }
    bool singular = false;
    for (int o = 0; o < outputs && !singular; ++o) {
      std::vector<Fq> b;
      for (auto& v : vals) b.push_back(v[o]);
      std::vector<Fq> coef;
      try {
        coef = solve_linear(M, b);
      } catch (const std::domain_error&) {
        singular = true;
        break;
      }
      FqPoly m(Fq::zero(cx), r);
      for (int j = 0; j < N; ++j)
        if (!coef[j].is_zero()) m.t[lay->exps[j]] = coef[j];
      res.push_back(std::move(m));
    }
    if (!singular) break;
    if (round >= 4) throw InterpFailure("singular sample matrix during reconstruction");
  }
  // verification at fresh points
  int verified = 0;
  long long vbudget = 400;
  while (verified < 8) {
    if (--vbudget < 0) throw InterpFailure("too many unlucky verification points");
    auto pt = interpdetail::random_point(cx, r, rng);
    auto got = eval(pt);
    if (!got) continue;
    for (int o = 0; o < outputs; ++o) {
      if (!(res[o].eval(pt) == (*got)[o])) {
        if (allow_escalation)
          return interp_reconstruct(base, r, 2 * bound, outputs, eval, rng.fork(0xe5ca1a7e), false);
        throw InterpFailure("reconstruction disagrees with the pipeline after bound escalation");
      }
    }
    ++verified;
  }
  std::vector<FqPoly> out;
  for (auto& m : res) out.push_back(cx == base ? m : interpdetail::to_base(m, base));
  return out;
}

} // namespace geores
