#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "io.hpp"
#include "suites.hpp"

using namespace wed;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation cli(const std::string& args) {
  Invocation r;
  const std::string cmd = std::string(WEDCLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p)) r.out.append(buf, got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("wedcli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                       "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) const {
    io::dump((dir / name).string(), text);
    return (dir / name).string();
  }
};

const char* kWeights = R"({"alphabet_size":3,"denominator":2,"sub":[[0,3,2],[3,0,2],[2,2,0]],"ins":[2,2,3],"del":[2,2,3]})";

}  // namespace

TEST(Io, WeightsRoundTrip) {
  const WeightFn w = io::parse_weights(kWeights);
  EXPECT_EQ(w.alphabet_size(), 3u);
  EXPECT_EQ(w.denominator(), 2);
  EXPECT_EQ(w.sub(0, 1), 3);
  EXPECT_EQ(w.ins(2), 3);
  EXPECT_EQ(w.del(0), 2);
  const WeightFn back = io::parse_weights(io::weights_json(w).dump());
  for (Sym a = 0; a <= 3; ++a)
    for (Sym b = 0; b <= 3; ++b) EXPECT_EQ(back(a, b), w(a, b));
}

TEST(Io, MinusOneIsInfinite) {
  const WeightFn w = io::parse_weights(R"({"alphabet_size":1,"denominator":1,"sub":[[0]],"ins":[-1],"del":[1]})");
  EXPECT_TRUE(is_inf(w.ins(0)));
  EXPECT_EQ(io::weights_json(w)["ins"][0], -1);
}

TEST(Io, MalformedWeightsAreRejected) {
  EXPECT_THROW(io::parse_weights("{"), io::InputError);
  EXPECT_THROW(io::parse_weights(R"({"alphabet_size":2,"denominator":1,"sub":[[0,1]],"ins":[1,1],"del":[1,1]})"),
               io::InputError);
  EXPECT_THROW(io::parse_weights(R"({"alphabet_size":1,"denominator":0,"sub":[[0]],"ins":[1],"del":[1]})"),
               io::InputError);
  EXPECT_THROW(io::parse_weights(R"({"alphabet_size":1,"denominator":1,"sub":[[0]],"ins":[-3],"del":[1]})"),
               io::InputError);
}

TEST(Io, Strings) {
  EXPECT_EQ(io::parse_string(" 3 1\n4\t1 ", false), (SymbolString{3, 1, 4, 1}));
  EXPECT_EQ(io::parse_string("ab", true), (SymbolString{'a', 'b'}));
  EXPECT_THROW(io::parse_string("1 x", false), io::InputError);
  EXPECT_THROW(io::parse_string("-2", false), io::InputError);
  EXPECT_EQ(io::parse_string(io::format_string({5, 0, 7}), false), (SymbolString{5, 0, 7}));
}

TEST(Verify, SuitesPass) {
  suites::VerifyOptions o;
  o.cases = 150;
  o.max_n = 64;
  o.seed = 7;
  EXPECT_EQ(suites::verify_core(o).failures, 0);
  EXPECT_EQ(suites::verify_hardgen(o).failures, 0);
}

TEST(Verify, InjectedFaultYieldsMinimizedRepro) {
  suites::VerifyOptions o;
  o.cases = 20;
  o.inject_fault = true;
  const auto s = suites::verify_core(o);
  ASSERT_EQ(s.failures, 1);
  ASSERT_TRUE(s.repro.has_value());
  // a one-unit bump fails on every instance, so shrinking reaches empty strings
  EXPECT_TRUE((*s.repro)["X"].empty());
  EXPECT_TRUE((*s.repro)["Y"].empty());
}

TEST(Cli, IdenticalFilesCostZero) {
  Scratch s;
  const auto w = s.put("w.json", kWeights), x = s.put("x.txt", "0 1 2 2 1 0\n");
  const Invocation r = cli("dist --x " + x + " --y " + x + " --weights " + w + " --algo quad");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["cost"]["num"], 0);
}

TEST(Cli, AlgorithmsAgreeAndCigarRechecks) {
  Scratch s;
  suites::Rng rng(3);
  const auto w = s.put("w.json", kWeights);
  const WeightFn wf = io::parse_weights(kWeights);
  for (int it = 0; it < 5; ++it) {
    const SymbolString X = suites::random_string(rng, 60, 3), Y = suites::edit(rng, X, 4, 3);
    const auto x = s.put("x.txt", io::format_string(X)), y = s.put("y.txt", io::format_string(Y));
    json first;
    for (const char* algo : {"quad", "band", "main", "pillar"}) {
      const Invocation r = cli(std::string("dist --alignment --k 20 --algo ") + algo + " --x " + x + " --y " + y + " --weights " + w);
      ASSERT_EQ(r.code, 0) << algo;
      const json j = json::parse(r.out);
      if (first.is_null()) first = j["cost"];
      EXPECT_EQ(j["cost"], first) << algo;
      const Alignment a = from_ops(parse_cigar(j["cigar"].get<std::string>()), {0, 0}, X, Y);
      EXPECT_EQ(alignment_cost(X, Y, a, wf), j["cost"]["num"].get<Cost>()) << algo;
    }
  }
}

TEST(Cli, ExitCodes) {
  Scratch s;
  const auto w = s.put("w.json", kWeights), x = s.put("x.txt", "0 1 2 0 1 2"), y = s.put("y.txt", "2 2 2 1 1 1");
  EXPECT_EQ(cli("dist --k 1 --x " + x + " --y " + y + " --weights " + w).code, 1);
  EXPECT_EQ(cli("dist --algo band --x " + x + " --y " + y + " --weights " + w).code, 2);
  EXPECT_EQ(cli("dist --x " + s.put("bad.txt", "0 9") + " --y " + y + " --weights " + w).code, 2);
  EXPECT_EQ(cli("dist --x " + x + " --y " + y + " --weights " + s.put("bad.json", "[]")).code, 2);
  EXPECT_EQ(cli("dist --x " + x).code, 2);
}

TEST(Cli, BenchCsv) {
  const Invocation one = cli("bench --n 500 --k 8 --algo main");
  ASSERT_EQ(one.code, 0);
  std::istringstream in(one.out);
  std::string header, row, extra;
  std::getline(in, header);
  EXPECT_EQ(header, "algo,n,k,cost_num,cost_den,seconds,pillar_ops,depth");
  EXPECT_TRUE(std::getline(in, row));
  EXPECT_FALSE(std::getline(in, extra));

  const Invocation many = cli("bench --n 3000 --k 16 --algo band,main,pillar --reps 2");
  std::istringstream lines(many.out);
  std::getline(lines, header);
  std::set<std::string> costs;
  while (std::getline(lines, row)) {
    std::vector<std::string> f;
    std::stringstream ss(row);
    for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
    ASSERT_EQ(f.size(), 8u);
    costs.insert(f[3] + "/" + f[4]);
  }
  EXPECT_EQ(costs.size(), 1u);
}

TEST(Cli, GenHardWritesFiles) {
  Scratch s;
  const std::string out = (s.dir / "h").string();
  ASSERT_EQ(cli("gen-hard --p 2 --q 2 --r 2 --seed 5 --out " + out).code, 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "weights.json"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "Y.txt"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "batch" / "3.txt"));
  const WeightFn w = io::read_weights((fs::path(out) / "weights.json").string());
  EXPECT_TRUE(is_normalized(w));
  const std::string again = (s.dir / "h2").string();
  ASSERT_EQ(cli("gen-hard --p 2 --q 2 --r 2 --seed 5 --out " + again).code, 0);
  EXPECT_EQ(io::slurp((fs::path(out) / "Y.txt").string()), io::slurp((fs::path(again) / "Y.txt").string()));

  const std::string comb = (s.dir / "c").string();
  ASSERT_EQ(cli("gen-hard --p 1 --q 2 --r 3 --combined --out " + comb).code, 0);
  EXPECT_TRUE(fs::exists(fs::path(comb) / "X.txt"));
}

TEST(Cli, SelfedAndDecompose) {
  Scratch s;
  const auto x = s.put("x.txt", "abcabcabcabcabd");
  const Invocation r = cli("selfed --raw --x " + x);
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["selfed"].get<std::int64_t>(), selfed_brute(io::read_string(x, true)));
  const Invocation d = cli("decompose --raw --x " + x);
  ASSERT_EQ(d.code, 0);
  const json dj = json::parse(d.out);
  EXPECT_EQ(dj["boundaries"].front(), 0);
  EXPECT_EQ(dj["boundaries"].back(), 15);
}
