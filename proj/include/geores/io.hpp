#pragma once
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "geores/circuit.hpp"
#include "geores/resolution.hpp"
#include "geores/solver.hpp"

namespace geores {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
        line(l), col(c) {}
};

// One parsed input file: field, named variables, the equation circuit (one
// output per equation) and optionally a hypersurface to avoid.
struct SystemFile {
  Ctx ctx;
  std::vector<std::string> vars;
  Circuit eqs;
  std::optional<Circuit> avoid;
  std::vector<int> degrees; // per-equation total-degree bound, -1 if unknown
};

namespace iodetail {

struct Cursor {
  const std::string& s;
  int line;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  int col() const { return (int)i + 1; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line, col(), msg); }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i;
    return true;
  }
  long long integer() {
    skip_ws();
    size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    size_t k = j;
    while (k < s.size() && isdigit((unsigned char)s[k])) ++k;
    if (k == j) fail("expected an integer");
    long long v;
    try {
      v = std::stoll(s.substr(i, k - i));
    } catch (const std::out_of_range&) {
      fail("integer literal out of range");
    }
    i = k;
    return v;
  }
  std::string ident() {
    skip_ws();
    size_t k = i;
    while (k < s.size() && (isalnum((unsigned char)s[k]) || s[k] == '_')) ++k;
    if (k == i) fail("expected an identifier");
    std::string r = s.substr(i, k - i);
    i = k;
    if (isdigit((unsigned char)r[0])) fail("identifier starts with a digit");
    return r;
  }
};

inline int var_index(const std::vector<std::string>& vars, const std::string& name, Cursor& cur) {
  for (size_t j = 0; j < vars.size(); ++j)
    if (vars[j] == name) return (int)j;
  cur.fail("undeclared identifier '" + name + "'");
}

// term := [int] ('*'? factor)* ; factor := ident ('^' int)?
// returns the gate index and the term's total degree
inline std::pair<int, int> parse_term(Cursor& cur, Circuit& c, const std::vector<std::string>& vars,
                                      const std::vector<int>& var_gate) {
  long long coeff = 1;
  int gate = -1, deg = 0;
  bool first = true;
  for (;;) {
    char ch = cur.peek();
    if (first && (isdigit((unsigned char)ch))) {
      coeff = cur.integer();
    } else if (isalpha((unsigned char)ch) || ch == '_') {
      std::string name = cur.ident();
      int vi = var_index(vars, name, cur);
      long long pw = 1;
      if (cur.eat('^')) {
        pw = cur.integer();
        if (pw < 1) cur.fail("exponent must be positive");
        if (pw > 64) cur.fail("exponent too large");
      }
      for (long long k = 0; k < pw; ++k)
        gate = gate < 0 ? var_gate[vi] : c.mul(gate, var_gate[vi]);
      deg += (int)pw;
    } else {
      if (first) cur.fail("expected a term");
      break;
    }
    first = false;
    if (!cur.eat('*')) {
      char nx = cur.peek();
      if (!(isalpha((unsigned char)nx) || nx == '_')) break;
    }
  }
  if (gate < 0) return {c.constant(coeff), deg};
  if (coeff != 1) gate = c.scale(coeff, 1, gate);
  return {gate, deg};
}

inline std::pair<int, int> parse_expr(Cursor& cur, Circuit& c, const std::vector<std::string>& vars,
                                      const std::vector<int>& var_gate) {
  bool neg = false;
  if (cur.eat('-')) neg = true;
  else cur.eat('+');
  auto [gate, deg] = parse_term(cur, c, vars, var_gate);
  if (neg) gate = c.scale(-1, 1, gate);
  while (!cur.done()) {
    bool sub;
    if (cur.eat('+')) sub = false;
    else if (cur.eat('-')) sub = true;
    else cur.fail("expected '+' or '-'");
    auto [g2, d2] = parse_term(cur, c, vars, var_gate);
    gate = sub ? c.sub(gate, g2) : c.add(gate, g2);
    deg = std::max(deg, d2);
  }
  return {gate, deg};
}

} // namespace iodetail

inline SystemFile parse_system(const std::string& text) {
  SystemFile sf;
  std::vector<int> var_gate;
  // SLP state
  bool slp = false, sparse = false;
  std::vector<std::string> gate_names;
  std::vector<int> name_gate;
  std::vector<int> out_gates, avoid_gates, declared_deg;
  auto lookup = [&](const std::string& name, iodetail::Cursor& cur) {
    for (size_t j = 0; j < gate_names.size(); ++j)
      if (gate_names[j] == name) return name_gate[j];
    cur.fail("undeclared identifier '" + name + "'");
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t')) raw.pop_back();
    iodetail::Cursor cur{raw, lineno};
    if (cur.done()) continue;
    std::string head = cur.ident();
    if (head == "field") {
      long long p = cur.integer();
      if (p < 2) cur.fail("field modulus must be at least 2");
      try {
        sf.ctx = make_prime_field((u64)p);
      } catch (const std::domain_error&) {
        cur.fail("field modulus " + std::to_string(p) + " is not prime");
      }
    } else if (head == "vars" || head == "inputs") {
      if (!sf.vars.empty()) cur.fail("variables declared twice");
      slp = (head == "inputs");
      sparse = (head == "vars");
      while (!cur.done()) sf.vars.push_back(cur.ident());
      if (sf.vars.empty()) cur.fail("no variables declared");
      sf.eqs.arity = (int)sf.vars.size();
      for (size_t j = 0; j < sf.vars.size(); ++j) {
        int g = sf.eqs.input((int)j);
        var_gate.push_back(g);
        gate_names.push_back(sf.vars[j]);
        name_gate.push_back(g);
      }
    } else if (head == "eq" || (head == "avoid" && sparse)) {
      if (!sparse) cur.fail(slp ? "'eq' lines do not belong to the gate-list grammar"
                                : "declare variables with 'vars' first");
      auto [g, d] = iodetail::parse_expr(cur, sf.eqs, sf.vars, var_gate);
      if (head == "eq") {
        sf.eqs.outputs.push_back(g);
        sf.degrees.push_back(d);
      } else {
        avoid_gates.push_back(g);
      }
    } else if (head == "out" || head == "avoid" || head == "deg") {
      if (!slp) cur.fail("declare inputs with 'inputs' first");
      if (head == "deg") {
        while (!cur.done()) declared_deg.push_back((int)cur.integer());
      } else {
        auto& dst = head == "out" ? out_gates : avoid_gates;
        while (!cur.done()) dst.push_back(lookup(cur.ident(), cur));
      }
    } else {
      // SLP assignment: name = op args
      if (sparse) cur.fail("unknown directive '" + head + "'");
      if (sf.vars.empty()) cur.fail("declare inputs with 'inputs' first");
      slp = true;
      if (!cur.eat('=')) cur.fail("expected '=' after gate name");
      for (auto& nm : gate_names)
        if (nm == head) cur.fail("gate '" + head + "' defined twice");
      std::string op = cur.ident();
      int g;
      if (op == "const") {
        g = sf.eqs.constant(cur.integer());
      } else if (op == "scale") {
        long long k = cur.integer();
        g = sf.eqs.scale(k, 1, lookup(cur.ident(), cur));
      } else if (op == "add" || op == "sub" || op == "mul" || op == "div") {
        int a = lookup(cur.ident(), cur);
        int b = lookup(cur.ident(), cur);
        g = op == "add" ? sf.eqs.add(a, b)
          : op == "sub" ? sf.eqs.sub(a, b)
          : op == "mul" ? sf.eqs.mul(a, b)
                        : sf.eqs.div(a, b);
      } else {
        cur.fail("unknown gate operation '" + op + "'");
      }
      if (!cur.done()) cur.fail("trailing input after gate definition");
      gate_names.push_back(head);
      name_gate.push_back(g);
    }
  }
  if (!sf.ctx) throw ParseError(lineno, 1, "missing 'field' declaration");
  if (sf.vars.empty()) throw ParseError(lineno, 1, "missing variable declaration");
  if (slp) {
    if (out_gates.empty()) throw ParseError(lineno, 1, "missing 'out' declaration");
    sf.eqs.outputs = out_gates;
    if (!declared_deg.empty()) {
      if (declared_deg.size() != out_gates.size())
        throw ParseError(lineno, 1, "'deg' count does not match the outputs");
      sf.degrees = declared_deg;
    } else {
      try {
        sf.degrees = circuit_degree_bounds(sf.eqs);
      } catch (const std::domain_error&) {
        sf.degrees.assign(out_gates.size(), -1);
      }
    }
  }
  if (sf.eqs.outputs.empty()) throw ParseError(lineno, 1, "no equations");
  if (!avoid_gates.empty()) {
    Circuit av = sf.eqs;
    av.outputs = avoid_gates;
    sf.avoid = std::move(av);
  }
  return sf;
}

// ---- JSON: canonical representatives as decimal strings ----

namespace iodetail {

inline json fq_json(const Fq& v) {
  if (v.ctx->e == 1) return std::to_string(v.c.empty() ? 0 : v.c[0]);
  json a = json::array();
  for (int i = 0; i < v.ctx->e; ++i) a.push_back(std::to_string(i < (int)v.c.size() ? v.c[i] : 0));
  return a;
}

inline Fq fq_from_json(const Ctx& cx, const json& j) {
  std::vector<u64> c;
  if (j.is_string()) {
    c.push_back(std::stoull(j.get<std::string>()));
  } else {
    for (auto& e : j) c.push_back(std::stoull(e.get<std::string>()));
  }
  return Fq(cx, std::move(c));
}

// multivariate polynomial as [[exponents, coefficient], ...] in map order
inline json mpoly_json(const FqPoly& m) {
  json a = json::array();
  for (auto& [e, c] : m.t) a.push_back(json::array({json(e), fq_json(c)}));
  return a;
}

inline FqPoly mpoly_from_json(const Ctx& cx, int nvars, const json& j) {
  FqPoly m(Fq::zero(cx), nvars);
  for (auto& term : j) {
    std::vector<int> e = term[0].get<std::vector<int>>();
    m.t[e] = fq_from_json(cx, term[1]);
  }
  return m;
}

inline json rpoly_json(const UPoly<FqPoly>& f) {
  json a = json::array();
  for (auto& c : f.c) a.push_back(mpoly_json(c));
  return a;
}

inline UPoly<FqPoly> rpoly_from_json(const Ctx& cx, int nvars, const json& j) {
  std::vector<FqPoly> c;
  for (auto& e : j) c.push_back(mpoly_from_json(cx, nvars, e));
  return UPoly<FqPoly>(FqPoly(Fq::zero(cx), nvars), std::move(c));
}

} // namespace iodetail

inline json resolution_json(const GeometricResolution& res, u64 seed,
                            const std::vector<EliminationStep>* log = nullptr) {
  json j;
  j["field"] = std::to_string(res.ctx->p);
  j["mode"] = mode_name(res.mode);
  j["n"] = res.n;
  j["free"] = res.r;
  j["degree"] = res.delta();
  json ch = json::array();
  for (auto& row : res.change) {
    json r = json::array();
    for (auto& v : row) r.push_back(iodetail::fq_json(v));
    ch.push_back(r);
  }
  j["change"] = ch;
  json lam = json::array();
  for (auto& v : res.lambda) lam.push_back(iodetail::fq_json(v));
  j["lambda"] = lam;
  j["q"] = iodetail::rpoly_json(res.q);
  j["rho"] = iodetail::mpoly_json(res.rho);
  json vv = json::array();
  for (auto& f : res.v) vv.push_back(iodetail::rpoly_json(f));
  j["v"] = vv;
  j["degree_budget"] = res.degree_budget;
  if (log) {
    json steps = json::array();
    for (auto& st : *log) {
      json s;
      s["level"] = st.level;
      s["degree"] = st.delta;
      s["ledger"] = st.degree_ledger;
      s["alpha"] = iodetail::fq_json(st.alpha);
      s["mu"] = iodetail::fq_json(st.mu);
      json g = json::array();
      for (auto& x : st.gamma) g.push_back(iodetail::fq_json(x));
      s["gamma"] = g;
      s["candidate_degree"] = st.candidate_degree;
      steps.push_back(s);
    }
    j["steps"] = steps;
  }
  j["seed"] = std::to_string(seed);
  return j;
}

inline GeometricResolution resolution_from_json(const json& j) {
  GeometricResolution res;
  res.ctx = make_prime_field(std::stoull(j.at("field").get<std::string>()));
  std::string m = j.at("mode").get<std::string>();
  res.mode = m == "toric" ? Mode::Toric : m == "avoid" ? Mode::Avoid : Mode::Affine;
  res.n = j.at("n").get<int>();
  res.r = j.at("free").get<int>();
  for (auto& row : j.at("change")) {
    std::vector<Fq> r;
    for (auto& v : row) r.push_back(iodetail::fq_from_json(res.ctx, v));
    res.change.push_back(std::move(r));
  }
  for (auto& v : j.at("lambda")) res.lambda.push_back(iodetail::fq_from_json(res.ctx, v));
  res.q = iodetail::rpoly_from_json(res.ctx, res.r, j.at("q"));
  res.rho = iodetail::mpoly_from_json(res.ctx, res.r, j.at("rho"));
  for (auto& f : j.at("v")) res.v.push_back(iodetail::rpoly_from_json(res.ctx, res.r, f));
  res.degree_budget = j.at("degree_budget").get<long long>();
  return res;
}

} // namespace geores
