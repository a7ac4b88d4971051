#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "geores/densepoly.hpp"
#include "geores/dual.hpp"
#include "geores/series.hpp"

namespace geores {

// Straight-line program: DAG of arithmetic gates in topological order.
// Constants are either small exact rationals (num/den) or field elements.
struct Gate {
  enum Op { Input, Const, Add, Sub, Mul, Div, Scale } op = Const;
  int a = -1, b = -1; // operand gate indices; for Input, a = input slot
  long long num = 0, den = 1;
  bool has_fq = false;
  Fq fqval;
};

struct CircuitError : std::runtime_error {
  int gate;
  CircuitError(const std::string& msg, int g) : std::runtime_error(msg + " (gate " + std::to_string(g) + ")"), gate(g) {}
};

struct Circuit {
  int arity = 0;
  std::vector<Gate> gates;
  std::vector<int> outputs;

  int input(int slot) {
    Gate g;
    g.op = Gate::Input;
    g.a = slot;
    gates.push_back(g);
    return (int)gates.size() - 1;
  }
  int constant(long long num, long long den = 1) {
    Gate g;
    g.op = Gate::Const;
    g.num = num;
    g.den = den;
    gates.push_back(g);
    return (int)gates.size() - 1;
  }
  int constant_fq(const Fq& v) {
    Gate g;
    g.op = Gate::Const;
    g.has_fq = true;
    g.fqval = v;
    gates.push_back(g);
    return (int)gates.size() - 1;
  }
  int binary(Gate::Op op, int l, int r) {
    check_ref(l);
    check_ref(r);
    Gate g;
    g.op = op;
    g.a = l;
    g.b = r;
    gates.push_back(g);
    return (int)gates.size() - 1;
  }
  int add(int l, int r) { return binary(Gate::Add, l, r); }
  int sub(int l, int r) { return binary(Gate::Sub, l, r); }
  int mul(int l, int r) { return binary(Gate::Mul, l, r); }
  int div(int l, int r) { return binary(Gate::Div, l, r); }
  int scale(long long num, long long den, int l) {
    check_ref(l);
    Gate g;
    g.op = Gate::Scale;
    g.a = l;
    g.num = num;
    g.den = den;
    gates.push_back(g);
    return (int)gates.size() - 1;
  }
  int scale_fq(const Fq& v, int l) {
    check_ref(l);
    Gate g;
    g.op = Gate::Scale;
    g.a = l;
    g.has_fq = true;
    g.fqval = v;
    gates.push_back(g);
    return (int)gates.size() - 1;
  }

  void check_ref(int i) const {
    if (i < 0 || i >= (int)gates.size()) throw std::domain_error("gate reference out of range");
  }

  static Circuit inputs(int n) {
    Circuit c;
    c.arity = n;
    for (int i = 0; i < n; ++i) c.input(i);
    return c;
  }

  // gate is constant iff its value cannot depend on the inputs
  std::vector<bool> const_mask() const {
    std::vector<bool> k(gates.size(), false);
    for (size_t i = 0; i < gates.size(); ++i) {
      const Gate& g = gates[i];
      switch (g.op) {
        case Gate::Input: k[i] = false; break;
        case Gate::Const: k[i] = true; break;
        case Gate::Scale: k[i] = k[g.a]; break;
        default: k[i] = k[g.a] && k[g.b]; break;
      }
    }
    return k;
  }
};

// constant embeddings into evaluation rings
inline Fq ring_embed(const Fq& wit, const Fq& v) {
  Fq x = v, w = wit;
  detail::align(x, w);
  return x;
}
inline Rat ring_embed(const Rat&, const Fq&) {
  throw std::domain_error("field constant in a rational evaluation");
}
template <class K>
MPoly<K> ring_embed(const MPoly<K>& w, const Fq& v) {
  return MPoly<K>::constant(ring_embed(w.wit, v), w.nvars);
}
template <class K>
TSeries<K> ring_embed(const TSeries<K>& w, const Fq& v) {
  return TSeries<K>::constant(ring_embed(w.wit, v), w.vars(), w.precision());
}
template <class K>
Jet<K> ring_embed(const Jet<K>& w, const Fq& v) {
  return Jet<K>(ring_embed(w.a, v), w.d.size());
}

template <class R>
R gate_constant(const R& wit, const Gate& g) {
  if (g.has_fq) return ring_embed(wit, g.fqval);
  R r = ring_from_int(wit, g.num);
  if (g.den != 1) r = r * ring_inv(ring_from_int(wit, g.den));
  return r;
}

struct CostProfile {
  long long L = 0; // nonscalar size
  long long depth = 0;
};

template <class R>
std::vector<R> evaluate_with_witness(const Circuit& c, const std::vector<R>& args, const R& wit);

// ring-generic gate-by-gate evaluation
template <class R>
std::vector<R> evaluate(const Circuit& c, const std::vector<R>& args) {
  if (args.empty()) throw std::domain_error("evaluation needs at least one argument as a ring witness");
  return evaluate_with_witness(c, args, args[0]);
}

// evaluation with an explicit witness (allows arity-0 circuits)
template <class R>
std::vector<R> evaluate_with_witness(const Circuit& c, const std::vector<R>& args, const R& wit) {
  if ((int)args.size() != c.arity) throw std::domain_error("circuit arity mismatch");
  std::vector<R> v;
  v.reserve(c.gates.size());
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.op) {
      case Gate::Input: v.push_back(args[g.a]); break;
      case Gate::Const: v.push_back(gate_constant(wit, g)); break;
      case Gate::Add: v.push_back(v[g.a] + v[g.b]); break;
      case Gate::Sub: v.push_back(v[g.a] - v[g.b]); break;
      case Gate::Mul: v.push_back(v[g.a] * v[g.b]); break;
      case Gate::Div: {
        if (ring_is_zero(v[g.b])) throw CircuitError("division by zero during evaluation", (int)i);
        try {
          v.push_back(v[g.a] * ring_inv(v[g.b]));
        } catch (const std::domain_error&) {
          throw CircuitError("division by a non-invertible value", (int)i);
        }
        break;
      }
      case Gate::Scale: v.push_back(v[g.a] * gate_constant(wit, g)); break;
    }
  }
  std::vector<R> out;
  for (int o : c.outputs) out.push_back(v[o]);
  return out;
}

inline std::vector<TSeries<Fq>> series_eval_circuit(const Circuit& c, const std::vector<TSeries<Fq>>& args) {
  return evaluate(c, args);
}

// nonscalar size and depth: only mul/div between nonconstants count
inline CostProfile measure(const Circuit& c) {
  auto k = c.const_mask();
  CostProfile p;
  std::vector<long long> d(c.gates.size(), 0);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.op) {
      case Gate::Input:
      case Gate::Const: d[i] = 0; break;
      case Gate::Scale: d[i] = d[g.a]; break;
      default: {
        bool nonscalar = (g.op == Gate::Mul || g.op == Gate::Div) && !k[g.a] && !k[g.b];
        d[i] = std::max(d[g.a], d[g.b]) + (nonscalar ? 1 : 0);
        if (nonscalar) ++p.L;
        break;
      }
    }
    p.depth = std::max(p.depth, d[i]);
  }
  return p;
}

// syntactic per-output degree bounds (division-free circuits)
inline std::vector<int> circuit_degree_bounds(const Circuit& c) {
  std::vector<int> d(c.gates.size(), 0);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.op) {
      case Gate::Input: d[i] = 1; break;
      case Gate::Const: d[i] = 0; break;
      case Gate::Add:
      case Gate::Sub: d[i] = std::max(d[g.a], d[g.b]); break;
      case Gate::Mul: d[i] = d[g.a] + d[g.b]; break;
      case Gate::Scale: d[i] = d[g.a]; break;
      case Gate::Div: throw CircuitError("no syntactic degree bound across a division", (int)i);
    }
  }
  std::vector<int> out;
  for (int o : c.outputs) out.push_back(d[o]);
  return out;
}

// dense polynomial expansion; the oracle for circuit transformations
template <class K>
std::vector<MPoly<K>> dense_expand(const Circuit& c, const K& wit, size_t term_guard = 1000000) {
  std::vector<MPoly<K>> v;
  MPoly<K> w = MPoly<K>::zero(wit, c.arity);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.op) {
      case Gate::Input: v.push_back(MPoly<K>::var(wit, c.arity, g.a)); break;
      case Gate::Const: v.push_back(gate_constant(w, g)); break;
      case Gate::Add: v.push_back(v[g.a] + v[g.b]); break;
      case Gate::Sub: v.push_back(v[g.a] - v[g.b]); break;
      case Gate::Mul: v.push_back(v[g.a] * v[g.b]); break;
      case Gate::Div: {
        if (!v[g.b].is_constant()) throw CircuitError("dense expansion requires a division-free circuit", (int)i);
        if (v[g.b].is_zero()) throw CircuitError("division by zero constant", (int)i);
        v.push_back(v[g.a] * ring_inv(v[g.b].constant_value()));
        break;
      }
      case Gate::Scale: v.push_back(v[g.a] * gate_constant(w, g)); break;
    }
    if (v.back().t.size() > term_guard) throw CircuitError("dense expansion exceeds the term guard", (int)i);
  }
  std::vector<MPoly<K>> out;
  for (int o : c.outputs) out.push_back(v[o]);
  return out;
}

// compose with a linear change of inputs: result computes f(M * x) at zero
// nonscalar cost (scale/add gates only)
inline Circuit apply_linear_change(const Circuit& c, const std::vector<std::vector<Fq>>& m) {
  if ((int)m.size() != c.arity) throw std::domain_error("linear change shape mismatch");
  int n = m.empty() ? c.arity : (int)m[0].size();
  Circuit r = Circuit::inputs(n);
  std::vector<int> slot(c.arity, -1);
  for (int i = 0; i < c.arity; ++i) {
    int acc = -1;
    for (int j = 0; j < n; ++j) {
      if (m[i][j].is_zero()) continue;
      int term = r.scale_fq(m[i][j], j);
      acc = acc < 0 ? term : r.add(acc, term);
    }
    if (acc < 0) acc = r.constant(0);
    slot[i] = acc;
  }
  std::vector<int> remap(c.gates.size(), -1);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    Gate h = g;
    if (g.op == Gate::Input) {
      remap[i] = slot[g.a];
      continue;
    }
    if (g.op != Gate::Const) h.a = remap[g.a];
    if (g.op == Gate::Add || g.op == Gate::Sub || g.op == Gate::Mul || g.op == Gate::Div) h.b = remap[g.b];
    r.gates.push_back(h);
    remap[i] = (int)r.gates.size() - 1;
  }
  for (int o : c.outputs) r.outputs.push_back(remap[o]);
  return r;
}

namespace circuitdetail {

// component bookkeeping for degree-graded transformations: each component is
// absent, a known constant, or a gate id in the target circuit
struct Comp {
  enum Kind { Absent, Known, GateRef } kind = Absent;
  Fq val;
  int gate = -1;
};

inline Comp comp_const(const Fq& v) {
  Comp c;
  if (v.is_zero()) return c;
  c.kind = Comp::Known;
  c.val = v;
  return c;
}

inline int materialize(Circuit& out, const Comp& c) {
  if (c.kind == Comp::GateRef) return c.gate;
  if (c.kind == Comp::Known) return out.constant_fq(c.val);
  return out.constant(0);
}

inline Comp comp_add(Circuit& out, const Comp& x, const Comp& y, bool subtract) {
  if (y.kind == Comp::Absent) return x;
  if (x.kind == Comp::Absent) {
    if (y.kind == Comp::Known) return comp_const(subtract ? -y.val : y.val);
    Comp r;
    r.kind = Comp::GateRef;
    r.gate = subtract ? out.sub(out.constant(0), y.gate) : y.gate;
    return r;
  }
  if (x.kind == Comp::Known && y.kind == Comp::Known)
    return comp_const(subtract ? x.val - y.val : x.val + y.val);
  Comp r;
  r.kind = Comp::GateRef;
  int xg = materialize(out, x), yg = materialize(out, y);
  r.gate = subtract ? out.sub(xg, yg) : out.add(xg, yg);
  return r;
}

inline Comp comp_mul(Circuit& out, const Comp& x, const Comp& y) {
  if (x.kind == Comp::Absent || y.kind == Comp::Absent) return Comp{};
  if (x.kind == Comp::Known && y.kind == Comp::Known) return comp_const(x.val * y.val);
  if (x.kind == Comp::Known) {
    Comp r;
    r.kind = Comp::GateRef;
    r.gate = out.scale_fq(x.val, y.gate);
    return r;
  }
  if (y.kind == Comp::Known) {
    Comp r;
    r.kind = Comp::GateRef;
    r.gate = out.scale_fq(y.val, x.gate);
    return r;
  }
  Comp r;
  r.kind = Comp::GateRef;
  r.gate = out.mul(x.gate, y.gate);
  return r;
}

} // namespace circuitdetail

// Homogenization: output j computes X0^{D_j} f_j(X1/X0, ..., Xn/X0) on inputs
// X0..Xn. Implemented by carrying the homogeneous components of every gate in
// the original variables and assembling X0 powers only at the outputs, which
// keeps the nonscalar size within d(d+1)^2 L.
inline Circuit homogenize(const Circuit& c, const std::vector<int>& degrees, const Ctx& ctx) {
  using circuitdetail::Comp;
  if (degrees.size() != c.outputs.size()) throw std::domain_error("one degree bound per output required");
  int dmax = 0;
  for (int d : degrees) {
    if (d < 0) throw std::domain_error("negative degree bound");
    dmax = std::max(dmax, d);
  }
  Circuit out = Circuit::inputs(c.arity + 1); // input 0 is X0
  std::vector<std::vector<Comp>> comp(c.gates.size(), std::vector<Comp>(dmax + 1));
  // over[i]: gate i may carry content of degree above dmax
  std::vector<bool> over(c.gates.size(), false);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    auto& me = comp[i];
    switch (g.op) {
      case Gate::Input: {
        if (dmax >= 1) {
          me[1].kind = Comp::GateRef;
          me[1].gate = g.a + 1;
        } else {
          over[i] = true;
        }
        break;
      }
      case Gate::Const: {
        Fq v = gate_constant(Fq::zero(ctx), g);
        me[0] = circuitdetail::comp_const(v);
        break;
      }
      case Gate::Add:
      case Gate::Sub: {
        for (int k = 0; k <= dmax; ++k)
          me[k] = circuitdetail::comp_add(out, comp[g.a][k], comp[g.b][k], g.op == Gate::Sub);
        over[i] = over[g.a] || over[g.b];
        break;
      }
      case Gate::Mul: {
        for (int k = 0; k <= dmax; ++k) {
          Comp acc;
          for (int j = 0; j <= k; ++j)
            acc = circuitdetail::comp_add(out, acc, circuitdetail::comp_mul(out, comp[g.a][j], comp[g.b][k - j]), false);
          me[k] = acc;
        }
        over[i] = over[g.a] || over[g.b];
        for (int j = 0; j <= dmax && !over[i]; ++j)
          for (int k = dmax + 1 - j; k <= dmax; ++k)
            if (comp[g.a][j].kind != Comp::Absent && comp[g.b][k].kind != Comp::Absent) {
              over[i] = true;
              break;
            }
        break;
      }
      case Gate::Scale: {
        Fq v = gate_constant(Fq::zero(ctx), g);
        Comp s = circuitdetail::comp_const(v);
        for (int k = 0; k <= dmax; ++k) me[k] = circuitdetail::comp_mul(out, comp[g.a][k], s);
        over[i] = over[g.a] && !v.is_zero();
        break;
      }
      case Gate::Div:
        throw CircuitError("homogenization requires a division-free circuit", (int)i);
    }
  }
  // shared X0 powers, built on demand
  std::vector<int> x0pow(dmax + 1, -1);
  x0pow[0] = -2; // marker: power zero means no multiplication
  if (dmax >= 1) x0pow[1] = 0; // input gate 0 is X0
  auto get_pow = [&](int k) {
    for (int j = 2; j <= k; ++j)
      if (x0pow[j] < 0) x0pow[j] = out.mul(x0pow[j - 1], x0pow[1]);
    return x0pow[k];
  };
  for (size_t oi = 0; oi < c.outputs.size(); ++oi) {
    int D = degrees[oi];
    const auto& oc = comp[c.outputs[oi]];
    // degree components above the declared bound must be absent
    if (over[c.outputs[oi]])
      throw CircuitError("declared output degree bound violated", c.outputs[oi]);
    for (int k = D + 1; k <= dmax; ++k)
      if (oc[k].kind != Comp::Absent)
        throw CircuitError("declared output degree bound violated", c.outputs[oi]);
    Comp acc;
    for (int k = 0; k <= D; ++k) {
      if (oc[k].kind == Comp::Absent) continue;
      Comp term = oc[k];
      if (D - k > 0) {
        int pw = get_pow(D - k);
        Comp p;
        p.kind = Comp::GateRef;
        p.gate = pw;
        term = circuitdetail::comp_mul(out, term, p);
      }
      acc = circuitdetail::comp_add(out, acc, term, false);
    }
    out.outputs.push_back(circuitdetail::materialize(out, acc));
  }
  return out;
}

// reverse-mode gradient of a single-output circuit
inline Circuit gradient(const Circuit& c) {
  if (c.outputs.size() != 1) throw std::domain_error("gradient needs a single-output circuit");
  Circuit out;
  out.arity = c.arity;
  out.gates = c.gates;
  std::vector<int> adj(c.gates.size(), -1); // -1: zero adjoint so far
  auto accum = [&](int gate, int term) {
    if (term < 0) return;
    adj[gate] = adj[gate] < 0 ? term : out.add(adj[gate], term);
  };
  adj[c.outputs[0]] = out.constant(1);
  for (size_t ii = c.gates.size(); ii-- > 0;) {
    int i = (int)ii;
    if (adj[i] < 0) continue;
    const Gate& g = c.gates[i];
    switch (g.op) {
      case Gate::Input:
      case Gate::Const: break;
      case Gate::Add:
        accum(g.a, adj[i]);
        accum(g.b, adj[i]);
        break;
      case Gate::Sub:
        accum(g.a, adj[i]);
        accum(g.b, out.sub(out.constant(0), adj[i]));
        break;
      case Gate::Mul:
        accum(g.a, out.mul(adj[i], g.b));
        accum(g.b, out.mul(adj[i], g.a));
        break;
      case Gate::Div: {
        int da = out.div(adj[i], g.b);
        accum(g.a, da);
        accum(g.b, out.sub(out.constant(0), out.mul(da, i)));
        break;
      }
      case Gate::Scale: {
        Gate h = g;
        h.a = adj[i];
        out.gates.push_back(h);
        accum(g.a, (int)out.gates.size() - 1);
        break;
      }
    }
  }
  std::vector<int> inslot(c.arity, -1);
  for (size_t i = 0; i < c.gates.size(); ++i)
    if (c.gates[i].op == Gate::Input) inslot[c.gates[i].a] = (int)i;
  for (int s = 0; s < c.arity; ++s) {
    int g = inslot[s] >= 0 ? adj[inslot[s]] : -1;
    out.outputs.push_back(g >= 0 ? g : out.constant(0));
  }
  return out;
}

// Division elimination by truncated expansion around `center`: carries the
// graded components of f(center + X) to degree `target_degree`, inverts
// denominators by the triangular recursion, and shifts back at the inputs.
inline Circuit eliminate_divisions(const Circuit& c, const std::vector<Fq>& center, int target_degree) {
  using circuitdetail::Comp;
  if ((int)center.size() != c.arity) throw std::domain_error("center arity mismatch");
  if (target_degree < 0) throw std::domain_error("negative target degree");
  bool any_div = false;
  for (auto& g : c.gates) any_div = any_div || g.op == Gate::Div;
  if (!any_div) return c; // idempotence on division-free inputs
  Ctx ctx = center.empty() ? Ctx() : center[0].ctx;
  if (!ctx) throw std::domain_error("division elimination needs field-valued center coordinates");
  int D = target_degree;
  Circuit out = Circuit::inputs(c.arity);
  // shifted inputs: s_i = X_i - center_i (free gates)
  std::vector<int> shifted(c.arity);
  for (int i = 0; i < c.arity; ++i) shifted[i] = out.sub(i, out.constant_fq(center[i]));
  // comp[i][k]: degree-k graded component (in the shifted variables) of gate i
  std::vector<std::vector<Comp>> comp(c.gates.size(), std::vector<Comp>(D + 1));
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    auto& me = comp[i];
    switch (g.op) {
      case Gate::Input: {
        me[0] = circuitdetail::comp_const(center[g.a]);
        if (D >= 1) {
          me[1].kind = Comp::GateRef;
          me[1].gate = shifted[g.a];
        }
        break;
      }
      case Gate::Const:
        me[0] = circuitdetail::comp_const(gate_constant(Fq::zero(ctx), g));
        break;
      case Gate::Add:
      case Gate::Sub:
        for (int k = 0; k <= D; ++k)
          me[k] = circuitdetail::comp_add(out, comp[g.a][k], comp[g.b][k], g.op == Gate::Sub);
        break;
      case Gate::Mul:
        for (int k = 0; k <= D; ++k) {
          Comp acc;
          for (int j = 0; j <= k; ++j)
            acc = circuitdetail::comp_add(out, acc, circuitdetail::comp_mul(out, comp[g.a][j], comp[g.b][k - j]), false);
          me[k] = acc;
        }
        break;
      case Gate::Scale: {
        Comp s = circuitdetail::comp_const(gate_constant(Fq::zero(ctx), g));
        for (int k = 0; k <= D; ++k) me[k] = circuitdetail::comp_mul(out, comp[g.a][k], s);
        break;
      }
      case Gate::Div: {
        const auto& den = comp[g.b];
        if (den[0].kind != Comp::Known)
          throw CircuitError("denominator vanishes at the expansion center", (int)i);
        Fq d0 = den[0].val;
        // h = 1/den: h_0 = 1/d0, h_k = -h_0 * sum_{j=1..k} den_j h_{k-j}
        std::vector<Comp> h(D + 1);
        Fq h0 = inv(d0);
        h[0] = circuitdetail::comp_const(h0);
        Comp mh0 = circuitdetail::comp_const(Fq::zero(ctx) - h0);
        for (int k = 1; k <= D; ++k) {
          Comp acc;
          for (int j = 1; j <= k; ++j)
            acc = circuitdetail::comp_add(out, acc, circuitdetail::comp_mul(out, den[j], h[k - j]), false);
          h[k] = circuitdetail::comp_mul(out, mh0, acc);
        }
        for (int k = 0; k <= D; ++k) {
          Comp acc;
          for (int j = 0; j <= k; ++j)
            acc = circuitdetail::comp_add(out, acc, circuitdetail::comp_mul(out, comp[g.a][j], h[k - j]), false);
          me[k] = acc;
        }
        break;
      }
    }
  }
  for (int o : c.outputs) {
    Comp acc;
    for (int k = 0; k <= D; ++k) acc = circuitdetail::comp_add(out, acc, comp[o][k], false);
    out.outputs.push_back(circuitdetail::materialize(out, acc));
  }
  return out;
}

// correct test sequence for the circuit class (n variables, size L, depth ell)
struct CorrectTestSequence {
  long long omega = 0, sigma = 0;
  std::vector<std::vector<Fq>> points;
};

inline long long cts_omega(long long ell) {
  return ((1LL << (ell + 1)) - 2) * ((1LL << ell) + 1) * ((1LL << ell) + 1);
}
inline long long cts_sigma(long long ell, long long L) { return 6 * (ell * L) * (ell * L); }

inline CorrectTestSequence make_cts(int n, long long L, long long ell, const Ctx& ctx, Rng rng) {
  CorrectTestSequence cts;
  cts.omega = cts_omega(ell);
  cts.sigma = cts_sigma(ell, L);
  if ((long long)ctx->p < cts.omega)
    throw std::domain_error("field too small for the test-sequence sample set (need at least " +
                            std::to_string(cts.omega) + " elements)");
  for (long long s = 0; s < cts.sigma; ++s) {
    std::vector<Fq> pt;
    for (int i = 0; i < n; ++i) pt.push_back(Fq::from_int(ctx, (long long)rng.below((u64)cts.omega)));
    cts.points.push_back(std::move(pt));
  }
  return cts;
}

inline bool pit_is_zero(const Circuit& c, const CorrectTestSequence& cts) {
  for (const auto& pt : cts.points) {
    auto v = evaluate(c, pt);
    for (const auto& x : v)
      if (!x.is_zero()) return false;
  }
  return true;
}

// n seeded random F_p-linear combinations of the s outputs; zero nonscalar cost
struct GenericCombination {
  Circuit circuit;
  std::vector<std::vector<Fq>> coeffs; // n x s, logged for reproducibility
};

inline GenericCombination generic_combinations(const Circuit& c, int n, const Ctx& ctx, Rng rng) {
  int s = (int)c.outputs.size();
  if (s < n) throw std::domain_error("fewer equations than requested combinations");
  GenericCombination r;
  r.circuit = c;
  r.circuit.outputs.clear();
  for (int i = 0; i < n; ++i) {
    std::vector<Fq> row;
    int acc = -1;
    for (int j = 0; j < s; ++j) row.push_back(random_element(ctx, rng));
    // retry rows that are identically zero; downstream needs nonzero combinations
    bool allz = true;
    for (auto& v : row) allz = allz && v.is_zero();
    if (allz) { row[i % s] = Fq::one(ctx); }
    for (int j = 0; j < s; ++j) {
      if (row[j].is_zero()) continue;
      int t = r.circuit.scale_fq(row[j], c.outputs[j]);
      acc = acc < 0 ? t : r.circuit.add(acc, t);
    }
    if (acc < 0) acc = r.circuit.constant(0);
    r.circuit.outputs.push_back(acc);
    r.coeffs.push_back(std::move(row));
  }
  return r;
}

} // namespace geores
