#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "io.hpp"
#include "json.hpp"
#include "suites.hpp"
#include "wed/decompose.hpp"
#include "wed/selfed.hpp"

using namespace wed;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

json cost_json(Cost c, Cost den) {
  if (is_inf(c)) return "INF";
  return {{"num", c}, {"den", den}};
}

json pillar_json(const PillarStats& s) {
  return {{"lcp", s.lcp}, {"lcs", s.lcs}, {"access", s.access}, {"length", s.length},
          {"extract", s.extract}, {"total", s.total()}};
}

struct Outcome {
  Cost cost = kInf;
  std::optional<Alignment> alignment;
  PillarStats ops;
  std::int64_t depth = 0;
};

// Threshold k is in whole units; -1 asks for the exact distance.
Outcome run_algo(const std::string& algo, const SymbolString& X, const SymbolString& Y, const WeightFn& w,
                 std::int64_t k, bool want_alignment) {
  Outcome out;
  const Cost cap = k < 0 ? kInf : w.units(k);
  if (algo == "quad") {
    DPResult r = wed_quadratic(X, Y, w, want_alignment);
    if (r.cost <= cap) out.cost = r.cost, out.alignment = std::move(r.alignment);
    return out;
  }
  if (algo == "band") {
    if (k < 0) throw io::InputError("--algo band needs --k");
    DPResult r = wed_banded(X, Y, w, cap, want_alignment);
    out.cost = r.cost;
    out.alignment = std::move(r.alignment);
    return out;
  }
  SolverConfig cfg;
  if (algo == "main") cfg.engine = Engine::Standard;
  else if (algo == "pillar") cfg.engine = Engine::Pillar;
  else throw io::InputError("unknown algorithm " + algo);
  PillarIndex ix({X, Y}, backend_for(cfg.engine));
  const View vx(ix, ix.whole(0)), vy(ix, ix.whole(1));
  WedResult r = k < 0 ? wed_auto(vx, vy, w, cfg, want_alignment) : weighted_ed(vx, vy, cap, w, cfg, want_alignment);
  out.cost = r.cost;
  out.alignment = std::move(r.alignment);
  out.ops = ix.stats;
  out.depth = r.stats.max_depth;
  return out;
}

int cmd_dist(const std::string& xf, const std::string& yf, const std::string& wf, std::int64_t k,
             const std::string& algo, bool want_alignment, bool raw) {
  const WeightFn w = io::read_weights(wf);
  const SymbolString X = io::read_string(xf, raw), Y = io::read_string(yf, raw);
  io::check_symbols(X, w, "x");
  io::check_symbols(Y, w, "y");
  if (!is_normalized(w)) throw io::InputError("weights are not normalized");
  const auto t0 = Clock::now();
  const Outcome o = run_algo(algo, X, Y, w, k, want_alignment);
  const double secs = since(t0);
  json rep{{"algorithm", algo}, {"cost", cost_json(o.cost, w.denominator())}, {"seconds", secs},
           {"pillar_ops", pillar_json(o.ops)}, {"depth", o.depth}};
  if (k >= 0) rep["k"] = k;
  if (want_alignment && o.alignment) rep["cigar"] = to_cigar(X, Y, *o.alignment);
  std::cout << rep.dump() << "\n";
  return is_inf(o.cost) ? 1 : 0;
}

int cmd_selfed(const std::string& xf, std::int64_t k, bool want_alignment, bool raw) {
  const SymbolString X = io::read_string(xf, raw);
  PillarIndex ix({X});
  const View v(ix, ix.whole(0));
  const std::int64_t bound = k < 0 ? 2 * v.size() : k;
  const BoundedResult r = selfed_bounded(v, bound, want_alignment);
  json rep{{"n", X.size()}, {"k", bound}};
  rep["selfed"] = r.within() ? json(r.dist) : json("INF");
  if (want_alignment && r.alignment) rep["cigar"] = to_cigar(X, X, *r.alignment);
  std::cout << rep.dump() << "\n";
  return r.within() ? 0 : 1;
}

int cmd_decompose(const std::string& xf, std::int64_t k, std::int64_t ell, const std::string& engine, bool raw) {
  const SymbolString X = io::read_string(xf, raw);
  PillarIndex ix({X});
  const View v(ix, ix.whole(0));
  std::int64_t bound = k;
  if (bound < 0) {
    for (bound = 1; !selfed_bounded(v, bound, false).within(); bound *= 2) {}
  }
  PhraseDecomposition d;
  if (engine == "pillar") d = decompose_pillar(v, bound);
  else if (engine == "std") d = decompose_std(v, bound, ell < 1 ? std::max<std::int64_t>(1, bound) : ell);
  else throw io::InputError("unknown engine " + engine);
  json fresh = json::array();
  for (std::int64_t i = 0; i < d.phrases(); ++i)
    if (d.fresh[i]) fresh.push_back(i);
  std::cout << json{{"engine", engine}, {"k", bound}, {"boundaries", d.x}, {"fresh", fresh}, {"source", d.source}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_gen_hard(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t tau, Cost E, std::uint64_t seed,
                 std::int64_t dummies, bool combined, const std::string& dir) {
  suites::Rng rng(seed);
  const GadgetParams g = suites::random_params(rng, p, q, r, tau, E);
  const BatchInstance b = gen_three_matrix_gadget(g, dummies);
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path root(dir);
  json meta{{"p", p}, {"q", q}, {"r", r}, {"tau", tau}, {"E", E}, {"seed", seed},
            {"A", suites::matrix_json(g.A)}, {"B", suites::matrix_json(g.B)}, {"C", suites::matrix_json(g.C)},
            {"min_triangle", min_triangle(g.A, g.B, g.C)}};
  if (combined) {
    const CombinedInstance c = combine_batch(b);
    io::dump((root / "X.txt").string(), io::format_string(c.X));
    io::dump((root / "Y.txt").string(), io::format_string(c.Y));
    io::dump((root / "weights.json").string(), io::weights_json(c.w).dump() + "\n");
    meta["k"] = {{"num", c.k}, {"den", c.w.denominator()}};
  } else {
    fs::create_directories(root / "batch");
    for (std::size_t t = 0; t < b.X.size(); ++t)
      io::dump((root / "batch" / (std::to_string(t) + ".txt")).string(), io::format_string(b.X[t]));
    io::dump((root / "Y.txt").string(), io::format_string(b.Y));
    io::dump((root / "weights.json").string(), io::weights_json(b.w).dump() + "\n");
    meta["k"] = {{"num", b.k}, {"den", b.w.denominator()}};
    meta["labels"] = b.label;
  }
  io::dump((root / "k.json").string(), meta["k"].dump() + "\n");
  io::dump((root / "meta.json").string(), meta.dump() + "\n");
  std::cout << meta.dump() << "\n";
  return 0;
}

int cmd_verify(const suites::VerifyOptions& o, const std::string& suite) {
  std::vector<suites::Summary> all;
  if (suite == "core" || suite == "all") all.push_back(suites::verify_core(o));
  if (suite == "hardgen" || suite == "all") all.push_back(suites::verify_hardgen(o));
  if (all.empty()) throw io::InputError("unknown suite " + suite);
  int rc = 0;
  for (const auto& s : all) {
    std::cout << s.suite << ": " << (s.failures ? "fail" : "pass") << " (" << s.cases << " cases)\n";
    if (s.repro) {
      std::cerr << "repro " << s.repro->dump() << "\n";
      rc = 1;
    }
  }
  return rc;
}

int cmd_bench(const std::vector<std::int64_t>& ns, const std::vector<std::int64_t>& ks,
              const std::vector<std::string>& algos, std::int64_t reps, std::uint64_t seed) {
  std::cout << "algo,n,k,cost_num,cost_den,seconds,pillar_ops,depth\n";
  for (std::int64_t n : ns)
    for (std::int64_t k : ks) {
      const suites::Instance in = suites::planted(seed * 1000003 + n * 131 + k, n, k / 2);
      for (const auto& algo : algos)
        for (std::int64_t rep = 0; rep < reps; ++rep) {
          const auto t0 = Clock::now();
          const Outcome o = run_algo(algo, in.X, in.Y, in.w, k, false);
          const double secs = since(t0);
          std::cout << algo << ',' << n << ',' << k << ',' << (is_inf(o.cost) ? std::string("INF") : std::to_string(o.cost))
                    << ',' << in.w.denominator() << ',' << secs << ',' << o.ops.total() << ',' << o.depth << "\n";
        }
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted edit distance tools"};
  app.require_subcommand(1);
  int rc = 0;

  std::string xf, yf, wf, algo = "main";
  std::int64_t k = -1;
  bool want_alignment = false, raw = false;
  auto* dist = app.add_subcommand("dist", "weighted edit distance of two strings");
  dist->add_option("--x", xf)->required();
  dist->add_option("--y", yf)->required();
  dist->add_option("--weights", wf)->required();
  dist->add_option("--k", k, "threshold in whole units");
  dist->add_option("--algo", algo)->check(CLI::IsMember({"quad", "band", "main", "pillar"}));
  dist->add_flag("--alignment", want_alignment);
  dist->add_flag("--raw", raw, "read bytes instead of symbol ids");
  dist->callback([&] { rc = cmd_dist(xf, yf, wf, k, algo, want_alignment, raw); });

  auto* self = app.add_subcommand("selfed", "self-edit distance of a string");
  self->add_option("--x", xf)->required();
  self->add_option("--k", k);
  self->add_flag("--alignment", want_alignment);
  self->add_flag("--raw", raw);
  self->callback([&] { rc = cmd_selfed(xf, k, want_alignment, raw); });

  std::int64_t ell = 0;
  std::string engine = "pillar";
  auto* dec = app.add_subcommand("decompose", "phrase decomposition of a string");
  dec->add_option("--x", xf)->required();
  dec->add_option("--k", k, "defaults to the next power of two above selfed");
  dec->add_option("--ell", ell);
  dec->add_option("--engine", engine)->check(CLI::IsMember({"pillar", "std"}));
  dec->add_flag("--raw", raw);
  dec->callback([&] { rc = cmd_decompose(xf, k, ell, engine, raw); });

  std::int64_t p = 2, q = 2, r = 2, tau = 1, dummies = 0;
  Cost E = 1;
  std::uint64_t seed = 1;
  bool combined = false;
  std::string out = "hard";
  auto* gen = app.add_subcommand("gen-hard", "batched hard instance from random matrices");
  gen->add_option("--p", p)->check(CLI::PositiveNumber);
  gen->add_option("--q", q)->check(CLI::PositiveNumber);
  gen->add_option("--r", r)->check(CLI::PositiveNumber);
  gen->add_option("--tau", tau)->check(CLI::PositiveNumber);
  gen->add_option("--E", E)->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed);
  gen->add_option("--dummies", dummies);
  gen->add_flag("--combined", combined);
  gen->add_option("--out", out);
  gen->callback([&] { rc = cmd_gen_hard(p, q, r, tau, E, seed, dummies, combined, out); });

  suites::VerifyOptions vo;
  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "differential checks against the oracles");
  ver->add_option("--cases", vo.cases)->check(CLI::PositiveNumber);
  ver->add_option("--max-n", vo.max_n)->check(CLI::NonNegativeNumber);
  ver->add_option("--seed", vo.seed);
  ver->add_option("--suite", suite)->check(CLI::IsMember({"core", "hardgen", "all"}));
  ver->add_flag("--inject-fault", vo.inject_fault)->group("");
  ver->callback([&] { rc = cmd_verify(vo, suite); });

  std::vector<std::int64_t> ns, ks;
  std::vector<std::string> algos;
  std::int64_t reps = 1;
  auto* bench = app.add_subcommand("bench", "timings on planted-edit instances as CSV");
  bench->add_option("--n", ns)->required()->delimiter(',');
  bench->add_option("--k", ks)->required()->delimiter(',');
  bench->add_option("--algo", algos)->required()->delimiter(',')->check(
      CLI::IsMember({"quad", "band", "main", "pillar"}));
  bench->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed);
  bench->callback([&] { rc = cmd_bench(ns, ks, algos, reps, seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
