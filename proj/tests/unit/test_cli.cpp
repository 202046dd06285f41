#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "besselw/cli.hpp"
#include "besselw/parallel.hpp"
#include "test_support.hpp"

using namespace besselw;
using besselw::test::Q;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "besselw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "besselw_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<int> random_subset(std::mt19937& rng, int lo, int hi, int max_size) {
  std::uniform_int_distribution<int> pick(lo, hi);
  std::uniform_int_distribution<int> size(0, max_size);
  std::vector<int> out;
  const int k = size(rng);
  for (int i = 0; i < k; ++i) {
    const int v = pick(rng);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

OracleSummary random_oracle(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-20, 1);
  OracleSummary o;
  o.grid = Grid(-4, 14, 64 + static_cast<int>(rng() % 9000));
  for (int n = 0; n < 3; ++n) {
    LevelReport l;
    l.n = n;
    l.predicted = Rational(-static_cast<int>(rng() % 50), 4);
    l.predicted.canonicalize();
    l.threshold = rng() % 2;
    l.coarse = u(rng);
    l.fine = u(rng);
    l.extrapolated = u(rng);
    l.error = std::fabs(u(rng)) * 1e-7;
    l.nodes = n;
    l.ok = rng() % 2;
    o.levels.push_back(l);
  }
  if (rng() % 2) o.extras.push_back(u(rng));
  o.deleted_absent = rng() % 2;
  o.max_abs_err = 1.0 / (1 + rng() % 1000);
  o.passed = rng() % 2;
  if (rng() % 2) o.messages.push_back("level 4 sits at the zero-energy threshold");
  return o;
}

}  // namespace

TEST(ParseHelpers, IndexLists) {
  EXPECT_EQ(cli::parse_index_list("6,7"), (std::vector<int>{6, 7}));
  EXPECT_EQ(cli::parse_index_list(""), std::vector<int>{});
  EXPECT_THROW(cli::parse_index_list("6,x"), parse_error);
  EXPECT_THROW(cli::parse_index_list("6.5"), parse_error);
}

TEST(ParseHelpers, PairRuns) {
  EXPECT_EQ(cli::parse_pair_runs("1:2"), (std::vector<int>{1, 2}));
  EXPECT_EQ(cli::parse_pair_runs("1:2,5:6"), (std::vector<int>{1, 2, 5, 6}));
  EXPECT_EQ(cli::parse_pair_runs("1:4"), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_THROW(cli::parse_pair_runs("2"), parse_error);
  EXPECT_THROW(cli::parse_pair_runs("3:1"), parse_error);
}

TEST(Potential, UndeformedDocument) {
  const auto r = run_cli({"potential", "--a", "3"});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  const ModelDocument d = parse_document(r.out);
  std::vector<Rational> energies;
  for (const auto& l : d.spectrum) energies.push_back(l.energy);
  EXPECT_EQ(energies, (std::vector<Rational>{Q("-25/4"), Q("-9/4"), Q("-1/4")}));
  EXPECT_TRUE(d.certificate.ok);
}

TEST(Potential, SampleBlockAndJsonFile) {
  const fs::path path = scratch("a1v2.json");
  const auto r = run_cli({"potential", "--a", "1", "--virtuals", "2", "--json", path.string()});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  EXPECT_TRUE(r.out.empty());
  const ModelDocument d = parse_document(slurp(path));
  ASSERT_FALSE(d.samples.empty());
  EXPECT_EQ(d.samples[0].y, 1);
  EXPECT_EQ(d.samples[0].value, Q("-3/25"));
  const auto j = json::parse(slurp(path));
  EXPECT_EQ(j["samples"][0]["V"], "-3/25");
}

TEST(Potential, InadmissibleExitsTwoWithCertificate) {
  const auto r = run_cli({"potential", "--a", "3", "--virtuals", "4"});
  EXPECT_EQ(r.code, cli::inadmissible);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["certificate"]["ok"].get<bool>());
  bool bound_failed = false;
  for (const auto& c : j["certificate"]["bound_check"])
    if (c["index"] == 4 && !c["ok"].get<bool>()) bound_failed = true;
  EXPECT_TRUE(bound_failed);
  EXPECT_EQ(r.err.find("certificate"), std::string::npos);
}

TEST(ExitCodes, UsageAndThreshold) {
  EXPECT_EQ(run_cli({"potential", "--a", "4.5"}).code, cli::usage);
  EXPECT_EQ(run_cli({"potential", "--a", "3", "--virtuals", "x"}).code, cli::usage);
  EXPECT_EQ(run_cli({"potential"}).code, cli::usage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::usage);
  EXPECT_EQ(run_cli({}).code, cli::usage);
  EXPECT_EQ(run_cli({"verify", "--which", "nonsense"}).code, cli::usage);
  EXPECT_EQ(run_cli({"potential", "--a", "9/2"}).code, cli::inadmissible);
  EXPECT_EQ(run_cli({"potential", "--a", "9/2", "--allow-threshold"}).code, cli::pass);
}

TEST(ExitCodes, StderrNeverCarriesTheReport) {
  for (const auto& args : std::vector<std::vector<std::string>>{{"potential", "--a", "3", "--virtuals", "4"},
                                                               {"catalog", "--a", "3", "--max-index", "8"},
                                                               {"verify", "--which", "equivalence", "--a", "3", "--minus", "1,2"},
                                                               {"potential", "--a", "4.5"}}) {
    const auto r = run_cli(args);
    std::stringstream ss(r.err);
    std::string line;
    while (std::getline(ss, line)) EXPECT_EQ(line.rfind("besselw: ", 0), 0u) << line;
    EXPECT_EQ(r.err.find('"'), std::string::npos) << r.err;
    EXPECT_FALSE(json::accept(r.err)) << r.err;
  }
}

TEST(Verify, EquivalenceHandCase) {
  const auto r = run_cli({"verify", "--which", "equivalence", "--a", "3", "--minus", "1,2"});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["dual"]["sign"], "+");
  EXPECT_EQ(j["dual"]["indexes"], json::array({2}));
  EXPECT_EQ(j["dual_a"], "0");
  EXPECT_EQ(j["lhs_monic"], json::array({"1/3", "-1", "1"}));
}

TEST(Verify, IdentitiesPass) {
  const auto r = run_cli({"verify", "--which", "identities", "--max-n", "6"});
  EXPECT_EQ(r.code, cli::pass) << r.err;
  EXPECT_TRUE(json::parse(r.out)["failures"].empty());
}

TEST(Verify, OrthogonalityPass) {
  const auto r = run_cli({"verify", "--which", "orthogonality", "--a", "3", "--virtuals", "6"});
  EXPECT_EQ(r.code, cli::pass) << r.err;
  EXPECT_LT(json::parse(r.out)["max_offdiag_ratio"].get<double>(), 1e-6);
}

TEST(Verify, SpectrumPairDeletion) {
  const auto r = run_cli({"verify", "--which", "spectrum", "--a", "9/2", "--allow-threshold", "--pairs", "1:2"});
  const auto j = json::parse(r.out);
  std::vector<int> ns;
  for (const auto& l : j["levels"]) ns.push_back(l["n"]);
  EXPECT_EQ(ns, (std::vector<int>{0, 3, 4}));
  EXPECT_TRUE(j["deleted_absent"].get<bool>());
  EXPECT_EQ(r.code, cli::pass) << r.out;
}

TEST(Catalog, VirtualSetsAboveTheBound) {
  const auto r = run_cli({"catalog", "--a", "3", "--max-index", "8", "--max-size", "2", "--kind", "virtuals"});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  std::stringstream ss(r.out);
  std::string line;
  std::vector<std::vector<int>> sets;
  while (std::getline(ss, line)) sets.push_back(json::parse(line)["spec"]["virtuals"].get<std::vector<int>>());
  EXPECT_EQ(sets, (std::vector<std::vector<int>>{{6}, {6, 7}, {6, 8}, {7}, {7, 8}, {8}}));
}

TEST(Catalog, NoPairsBelowOneLevel) {
  const auto r = run_cli({"catalog", "--a", "1", "--kind", "pairs"});
  EXPECT_EQ(r.code, cli::pass);
  EXPECT_TRUE(r.out.empty());
}

TEST(Catalog, JuxtaposedPairsAtNineHalves) {
  const auto r = run_cli({"catalog", "--a", "9/2", "--allow-threshold", "--kind", "pairs"});
  EXPECT_EQ(r.code, cli::pass);
  std::stringstream ss(r.out);
  std::string line;
  std::vector<std::vector<int>> sets;
  while (std::getline(ss, line)) sets.push_back(json::parse(line)["spec"]["pairs"].get<std::vector<int>>());
  EXPECT_EQ(sets, (std::vector<std::vector<int>>{{1, 2}, {1, 2, 3, 4}, {2, 3}, {3, 4}}));
}

TEST(Catalog, OrderIndependentOfThreads) {
  setenv("BESSELW_THREADS", "1", 1);
  const auto one = run_cli({"catalog", "--a", "3", "--max-index", "9"});
  setenv("BESSELW_THREADS", "4", 1);
  const auto four = run_cli({"catalog", "--a", "3", "--max-index", "9"});
  unsetenv("BESSELW_THREADS");
  EXPECT_EQ(one.out, four.out);
}

TEST(Bessel, PrintsPolynomials) {
  EXPECT_EQ(run_cli({"bessel", "--n", "2", "--alpha", "-6"}).out, "1 - 3*y + 3/2*y^2\n");
  EXPECT_EQ(run_cli({"bessel", "--n", "1", "--rbessel", "5/2"}).out, "1 - 2*y\n");
  EXPECT_EQ(run_cli({"bessel", "--n", "1", "--laguerre", "-6"}).out, "-5 - y\n");
  EXPECT_EQ(run_cli({"bessel", "--n", "1"}).code, cli::usage);
}

TEST(Wronskian, MonicPairBlock) {
  const auto r = run_cli({"wronskian", "--a", "9/2", "--minus", "1,2,3,4"});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  EXPECT_EQ(json::parse(r.out)["monic"], json::array({"2/105", "-16/105", "4/7", "-8/7", "1"}));
}

TEST(GridCsv, TwoIncreasingColumns) {
  const fs::path csv = scratch("a1v2.csv");
  const auto r = run_cli({"potential", "--a", "1", "--virtuals", "2", "--points", "400", "--grid-csv", csv.string()});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  std::ifstream f(csv);
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "# x,V");
  double prev = -1e300;
  int rows = 0;
  while (std::getline(f, line)) {
    const auto comma = line.find(',');
    ASSERT_NE(comma, std::string::npos);
    EXPECT_EQ(line.find(',', comma + 1), std::string::npos);
    std::size_t used = 0;
    const double x = std::stod(line.substr(0, comma), &used);
    EXPECT_EQ(used, comma);
    const double v = std::stod(line.substr(comma + 1));
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(x, prev);
    prev = x;
    ++rows;
  }
  EXPECT_EQ(rows, 399);
}

TEST(Serialization, RoundTripsRandomDocuments) {
  std::mt19937 rng(123);
  for (int t = 0; t < 100; ++t) {
    const Rational a = besselw::test::random_rational(rng, 0, 7, 4);
    const MorseParam p(a, ThresholdPolicy::allow);
    std::vector<int> pairs;
    if (p.N() >= 2 && rng() % 2) {
      const int start = 1 + static_cast<int>(rng() % static_cast<unsigned>(p.N() - 1));
      pairs = {start, start + 1};
    }
    const DeformationSpec spec{p, SeedSet(Sign::minus, pairs), SeedSet(Sign::minus, random_subset(rng, 1, 12, 2))};
    ModelDocument d = make_document(spec, rng() % 4 == 0);
    if (rng() % 3 == 0) d.oracle = random_oracle(rng);
    const std::string text = render(d);
    const ModelDocument back = parse_document(text);
    EXPECT_EQ(back, d) << text;
    EXPECT_EQ(render(back), text);
  }
}

TEST(Parallel, KeepsInputOrder) {
  std::vector<int> items(200);
  std::iota(items.begin(), items.end(), 0);
  const auto out = parallel_map(items, [](int v) { return v * v; }, 4);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(out[static_cast<std::size_t>(i)], i * i);
  EXPECT_TRUE(parallel_map(std::vector<int>{}, [](int v) { return v; }, 4).empty());
}

TEST(Parallel, RethrowsWorkerFailure) {
  std::vector<int> items(50);
  std::iota(items.begin(), items.end(), 0);
  EXPECT_THROW(parallel_map(items, [](int v) { return v == 17 ? throw std::runtime_error("boom") : v; }, 3),
               std::runtime_error);
}

TEST(Parallel, WorkerCountFromEnvironment) {
  setenv("BESSELW_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  setenv("BESSELW_THREADS", "zero", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("BESSELW_THREADS");
}
