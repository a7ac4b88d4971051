// Command-line front end: parse a system file, solve / verify / brute-force
// enumerate / report cost bounds, with machine-readable JSON on stdout.
//
// Exit codes: 0 success, 2 parse error, 3 hypothesis violation,
// 4 field too small, 5 internal certificate failure.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geores/io.hpp"
#include "geores/lifting.hpp"
#include "geores/solver.hpp"

using namespace geores;

namespace {

constexpr int EXIT_PARSE = 2, EXIT_HYPOTHESIS = 3, EXIT_FIELD = 4, EXIT_CERT = 5;

[[noreturn]] void die(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(code);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(EXIT_PARSE, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Args {
  std::string mode = "affine";
  std::string precision = "safe";
  std::string eliminate;
  u64 seed = 0;
  int ext = 1;
  std::vector<std::string> files;
};

Args parse_args(int argc, char** argv, int from) {
  Args a;
  if (const char* env = std::getenv("GEORES_SEED")) a.seed = std::strtoull(env, nullptr, 10);
  for (int i = from; i < argc; ++i) {
    std::string s = argv[i];
    auto need = [&](const char* flag) -> std::string {
      if (i + 1 >= argc) die(EXIT_PARSE, std::string("missing value for ") + flag);
      return argv[++i];
    };
    if (s == "--mode") a.mode = need("--mode");
    else if (s == "--seed") a.seed = std::strtoull(need("--seed").c_str(), nullptr, 10);
    else if (s == "--precision") a.precision = need("--precision");
    else if (s == "--eliminate") a.eliminate = need("--eliminate");
    else if (s == "--ext") a.ext = std::atoi(need("--ext").c_str());
    else if (!s.empty() && s[0] == '-') die(EXIT_PARSE, "unknown flag '" + s + "'");
    else a.files.push_back(s);
  }
  return a;
}

Mode mode_of(const std::string& s) {
  if (s == "affine") return Mode::Affine;
  if (s == "toric") return Mode::Toric;
  if (s == "avoid") return Mode::Avoid;
  die(EXIT_PARSE, "unknown mode '" + s + "'");
}

SystemFile load_system(const std::string& path) {
  try {
    return parse_system(slurp(path));
  } catch (const ParseError& e) {
    die(EXIT_PARSE, path + ": " + e.what());
  }
}

json point_json(const std::vector<Fq>& pt) {
  json a = json::array();
  for (auto& v : pt) a.push_back(iodetail::fq_json(v));
  return a;
}

// probabilistic-identity-test screen; needs a sample set of omega base-field
// elements, the documented size for the measured nonscalar depth
void screen_system(const SystemFile& sf, Rng rng) {
  CostProfile prof = measure(sf.eqs);
  long long L = std::max<long long>(1, prof.L);
  long long ell = std::max<long long>(1, prof.depth);
  CorrectTestSequence cts;
  try {
    cts = make_cts((int)sf.vars.size(), L, ell, sf.ctx, rng);
  } catch (const std::domain_error& e) {
    die(EXIT_FIELD, e.what());
  }
  for (size_t o = 0; o < sf.eqs.outputs.size(); ++o) {
    Circuit one = sf.eqs;
    one.outputs = {sf.eqs.outputs[o]};
    bool zero;
    try {
      zero = pit_is_zero(one, cts);
    } catch (const CircuitError& e) {
      die(EXIT_HYPOTHESIS, std::string("equation ") + std::to_string(o + 1) +
                               " cannot be evaluated: " + e.what());
    }
    if (zero)
      die(EXIT_HYPOTHESIS,
          "equation " + std::to_string(o + 1) + " is identically zero (not a regular sequence)");
  }
}

int cmd_solve(const Args& a) {
  if (a.files.size() != 1) die(EXIT_PARSE, "solve needs exactly one system file");
  SystemFile sf = load_system(a.files[0]);
  SolverConfig cfg;
  cfg.seed = a.seed;
  cfg.mode = mode_of(a.mode);
  if (a.precision == "sharp") cfg.sharp = true;
  else if (a.precision != "safe") die(EXIT_PARSE, "unknown precision '" + a.precision + "'");
  if (cfg.mode == Mode::Avoid) {
    if (!sf.avoid) die(EXIT_PARSE, "avoid mode needs an 'avoid' line in the system file");
    cfg.avoid = &*sf.avoid;
  }
  screen_system(sf, Rng(a.seed).fork(0x5c12ee));
  SolveResult sr;
  try {
    sr = solve(sf.eqs, sf.ctx, cfg);
  } catch (const SolveError& e) {
    die(e.stage == "solve" ? EXIT_CERT : EXIT_HYPOTHESIS, e.what());
  } catch (const LiftFailure& e) {
    die(EXIT_CERT, e.what());
  } catch (const InterpFailure& e) {
    std::string w = e.what();
    die(w.find("sampling set") != std::string::npos ? EXIT_FIELD : EXIT_CERT, w);
  }
  json j = resolution_json(sr.res, a.seed, &sr.log);
  j["variables"] = sf.vars;
  auto pts = enumerate_points(sr.res, {}, Rng(a.seed).fork(0xf00d));
  json jp = json::array();
  for (auto& pt : pts) jp.push_back(point_json(pt));
  j["points"] = jp;
  if (!a.eliminate.empty()) {
    std::vector<Fq> alpha;
    std::stringstream ss(a.eliminate);
    std::string tok;
    while (std::getline(ss, tok, ','))
      alpha.push_back(Fq::from_int(sf.ctx, std::strtoll(tok.c_str(), nullptr, 10)));
    if (alpha.size() != sf.vars.size()) die(EXIT_PARSE, "--eliminate needs one value per variable");
    UPoly<Fq> ep = eliminating_poly(sr.res, alpha);
    json je = json::array();
    for (auto& c : ep.c) je.push_back(iodetail::fq_json(c));
    j["eliminating"] = je;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const Args& a) {
  if (a.files.size() != 2) die(EXIT_PARSE, "verify needs a resolution JSON and a system file");
  GeometricResolution res;
  try {
    res = resolution_from_json(json::parse(slurp(a.files[0])));
  } catch (const std::exception& e) {
    die(EXIT_PARSE, a.files[0] + ": " + e.what());
  }
  SystemFile sf = load_system(a.files[1]);
  const Circuit* avoid = nullptr;
  if (res.mode == Mode::Avoid) {
    if (!sf.avoid) die(EXIT_PARSE, "resolution is in avoid mode but the file has no 'avoid' line");
    avoid = &*sf.avoid;
  }
  ValidationReport rep = validate(res, sf.eqs, Rng(a.seed).fork(0x7e11), avoid);
  json j;
  j["ok"] = rep.ok;
  j["issues"] = rep.issues;
  std::cout << j.dump(2) << "\n";
  return rep.ok ? 0 : EXIT_CERT;
}

int cmd_oracle(const Args& a) {
  if (a.files.size() != 1) die(EXIT_PARSE, "oracle needs exactly one system file");
  SystemFile sf = load_system(a.files[0]);
  int n = (int)sf.vars.size();
  if (a.ext < 1) die(EXIT_PARSE, "--ext must be positive");
  long double total = 1;
  for (int i = 0; i < a.ext * n; ++i) total *= (long double)sf.ctx->p;
  if (total > 1e8L) die(EXIT_PARSE, "oracle scan too large (p^(e*n) exceeds 10^8)");
  Ctx cx = a.ext == 1 ? sf.ctx : make_extension(sf.ctx->p, a.ext, Rng(a.seed).fork(0xace));
  Mode mode = mode_of(a.mode);
  u64 card = 1;
  for (int i = 0; i < a.ext; ++i) card *= sf.ctx->p;
  std::vector<u64> idx(n, 0);
  std::vector<std::vector<Fq>> pts;
  for (;;) {
    std::vector<Fq> pt;
    for (int i = 0; i < n; ++i) {
      u64 v = idx[i];
      std::vector<u64> cc;
      while (v) {
        cc.push_back(v % sf.ctx->p);
        v /= sf.ctx->p;
      }
      pt.push_back(Fq(cx, std::move(cc)));
    }
    bool keep = true;
    if (mode == Mode::Toric)
      for (auto& v : pt) keep = keep && !v.is_zero();
    if (keep && mode == Mode::Avoid) {
      if (!sf.avoid) die(EXIT_PARSE, "avoid mode needs an 'avoid' line in the system file");
      for (auto& v : evaluate(*sf.avoid, pt)) keep = keep && !v.is_zero();
    }
    if (keep) {
      bool sat = true;
      try {
        for (auto& v : evaluate(sf.eqs, pt)) sat = sat && v.is_zero();
      } catch (const CircuitError&) {
        sat = false; // a division undefined at this point: not a solution witness
      }
      if (sat) pts.push_back(std::move(pt));
    }
    int i = 0;
    while (i < n && ++idx[i] == card) idx[i++] = 0;
    if (i == n) break;
  }
  std::sort(pts.begin(), pts.end(), [](const std::vector<Fq>& x, const std::vector<Fq>& y) {
    for (size_t i = 0; i < x.size(); ++i) {
      if (canonical_less(x[i], y[i])) return true;
      if (canonical_less(y[i], x[i])) return false;
    }
    return false;
  });
  json j;
  j["field"] = std::to_string(sf.ctx->p);
  j["ext"] = a.ext;
  j["count"] = (long long)pts.size();
  json jp = json::array();
  for (auto& pt : pts) jp.push_back(point_json(pt));
  j["points"] = jp;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_bench(const Args& a) {
  if (a.files.size() != 1) die(EXIT_PARSE, "bench needs exactly one system file");
  SystemFile sf = load_system(a.files[0]);
  int n = (int)sf.vars.size();
  CostProfile prof = measure(sf.eqs);
  int dmax = 0;
  for (int d : sf.degrees) dmax = std::max(dmax, d);
  json j;
  j["n"] = n;
  j["equations"] = (long long)sf.eqs.outputs.size();
  j["degree_bound"] = dmax;
  j["nonscalar_size"] = prof.L;
  j["nonscalar_depth"] = prof.depth;
  json stages = json::array();
  auto stage = [&](const char* name, long long measured, long long bound) {
    json s;
    s["stage"] = name;
    s["measured"] = measured;
    s["bound"] = bound;
    s["within"] = measured <= bound;
    stages.push_back(s);
  };
  if (dmax >= 0) {
    try {
      Circuit h = homogenize(sf.eqs, sf.degrees, sf.ctx);
      stage("homogenize", measure(h).L,
            (long long)dmax * (dmax + 1) * (dmax + 1) * std::max<long long>(1, prof.L));
    } catch (const std::domain_error&) {
    }
  }
  long long gl = 0;
  bool ok = true;
  for (size_t o = 0; o < sf.eqs.outputs.size() && ok; ++o) {
    Circuit one = sf.eqs;
    one.outputs = {sf.eqs.outputs[o]};
    try {
      gl = std::max(gl, measure(gradient(one)).L);
    } catch (const std::domain_error&) {
      ok = false;
    }
  }
  if (ok) stage("gradient", gl, 5 * std::max<long long>(1, prof.L) + n);
  long long ell = std::max<long long>(1, prof.depth);
  stage("identity_test_samples", cts_omega(ell), cts_omega(ell));
  j["stages"] = stages;
  j["sigma"] = cts_sigma(ell, std::max<long long>(1, prof.L));
  std::cout << j.dump(2) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: geores <solve|verify|oracle|bench> [flags] <file...>\n"
                 "  solve  --mode affine|toric|avoid --seed N --precision safe|sharp"
                 " --eliminate a1,...,an <system>\n"
                 "  verify <resolution.json> <system>\n"
                 "  oracle --ext e [--mode m] <system>\n"
                 "  bench  <system>\n";
    return EXIT_PARSE;
  }
  std::string cmd = argv[1];
  Args a = parse_args(argc, argv, 2);
  try {
    if (cmd == "solve") return cmd_solve(a);
    if (cmd == "verify") return cmd_verify(a);
    if (cmd == "oracle") return cmd_oracle(a);
    if (cmd == "bench") return cmd_bench(a);
  } catch (const std::exception& e) {
    die(EXIT_CERT, e.what());
  }
  die(EXIT_PARSE, "unknown command '" + cmd + "'");
}
