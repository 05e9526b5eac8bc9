#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumpsync/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"jumpsync"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return jumpsync::cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("jumpsync_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("dispatch exit codes") {
  TempDir tmp;
  CHECK(run({"speed", "--law", "exp", "--lambda", "1", "--mu", "1",
             "--manifest", tmp.file("m.jsonl")}) == 0);
  // missing required --seed
  CHECK(run({"simulate", "--law", "exp", "--lambda", "1", "--mu", "1"}) == 1);
  // unknown subcommand
  CHECK(run({"frobnicate"}) == 1);
  // no subcommand at all
  CHECK(run({}) == 1);
  // numeric failure: window too small leaks mass
  CHECK(run({"mfl", "--lambda", "1", "--mu", "1", "--t-end", "3", "--x-left", "-3",
             "--x-right", "4", "--grid-h", "0.05", "--manifest", tmp.file("m.jsonl")}) == 2);
  // validation failure bubbling from the library
  CHECK(run({"tws", "--lambda", "4", "--mu", "1", "--v", "10", "--kind", "right",
             "--manifest", tmp.file("m.jsonl")}) == 1);
  // malformed boundary spec
  CHECK(run({"simulate", "--law", "exp", "--lambda", "1", "--mu", "1", "--n", "10",
             "--seed", "1", "--boundary", "sideways:3",
             "--manifest", tmp.file("m.jsonl")}) == 1);
}

TEST_CASE("mfl accepts a tabulated initial state from a file") {
  TempDir tmp;
  {
    std::ofstream csv(tmp.file("init.csv"));
    csv << "x,f\n-1,0\n0,0.5\n1,1\n";
  }
  CHECK(run({"mfl", "--law", "exp", "--lambda", "0", "--mu", "1", "--t-end", "0.5",
             "--x-left", "-6", "--x-right", "6", "--grid-h", "0.05",
             "--init", "file:" + tmp.file("init.csv"),
             "--quantiles-out", tmp.file("q.csv"), "--manifest", tmp.file("m.jsonl")}) == 0);
  const auto q = slurp(tmp.file("q.csv"));
  CHECK(q.rfind("time,q0.5\n", 0) == 0);
}

TEST_CASE("speed curve emission") {
  TempDir tmp;
  const auto curve = tmp.file("curve.csv");
  CHECK(run({"speed", "--law", "exp", "--lambda", "1", "--mu", "1", "--curve", curve,
             "--curve-points", "10", "--manifest", tmp.file("m.jsonl")}) == 0);
  const auto text = slurp(curve);
  CHECK(text.rfind("zeta,v\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);
}

TEST_CASE("simulate output is reproducible bit for bit") {
  TempDir tmp;
  const auto args = [&](const std::string& out) {
    return std::vector<std::string>{
        "simulate", "--law",  "exp", "--lambda", "0.25", "--mu",       "0.5",
        "--n",      "200",    "--jumps-per-particle",    "100",        "--seed",
        "77",       "--out",  out,   "--series", tmp.file("s.csv"),
        "--manifest", tmp.file("m.jsonl")};
  };
  CHECK(run(args(tmp.file("a.csv"))) == 0);
  const auto series_a = slurp(tmp.file("s.csv"));
  CHECK(run(args(tmp.file("b.csv"))) == 0);
  const auto a = slurp(tmp.file("a.csv"));
  const auto b = slurp(tmp.file("b.csv"));
  // identical except the trailing wall-time field
  CHECK(a.substr(0, a.rfind(',')) == b.substr(0, b.rfind(',')));
  CHECK(series_a == slurp(tmp.file("s.csv")));  // series is fully deterministic
  CHECK(a.rfind("law,lambda,mu,n,jumps_per_particle,warmup_fraction,seed,statistic,boundary,"
                "v_n,std_error,t_start,t_end,wall_time_s",
                0) == 0);
}

TEST_CASE("manifest lines are valid JSON with checksums") {
  TempDir tmp;
  const auto manifest = tmp.file("manifest.jsonl");
  CHECK(run({"optimize", "--law", "exp", "--a", "2", "--b", "1", "--sweep",
             tmp.file("sweep.csv"), "--manifest", manifest}) == 0);
  std::ifstream in(manifest);
  std::string line;
  REQUIRE(std::getline(in, line));
  const auto doc = nlohmann::json::parse(line);
  CHECK(doc.at("subcommand") == "optimize");
  CHECK(doc.at("version").is_string());
  CHECK(doc.at("config").at("a") == 2.0);
  REQUIRE(doc.at("outputs").size() == 1);
  CHECK(doc.at("outputs")[0].at("schema") == "optimize-sweep.v1");
  CHECK(doc.at("outputs")[0].at("bytes").get<long long>() > 0);
  CHECK(!doc.at("outputs")[0].at("fnv1a64").get<std::string>().empty());
}

TEST_CASE("config file supplies defaults, flags win") {
  TempDir tmp;
  {
    std::ofstream cfg(tmp.file("run.cfg"));
    cfg << "speed.lambda=1\n"
        << "speed.mu=1\n"
        << "speed.law=exp\n";
  }
  // config alone
  CHECK(run({"--config", tmp.file("run.cfg"), "speed", "--manifest", tmp.file("m.jsonl"),
             "--curve", tmp.file("c1.csv"), "--curve-points", "5"}) == 0);
  // flag overrides the config value: lambda 4, mu 1 gives v* = 9
  const auto curve2 = tmp.file("c2.csv");
  CHECK(run({"--config", tmp.file("run.cfg"), "speed", "--lambda", "4", "--curve", curve2,
             "--curve-points", "5", "--manifest", tmp.file("m.jsonl")}) == 0);
  CHECK(slurp(curve2) != slurp(tmp.file("c1.csv")));
}

TEST_CASE("tws subcommand emits shape and classification") {
  TempDir tmp;
  const auto shape = tmp.file("wave.csv");
  CHECK(run({"tws", "--lambda", "4", "--mu", "1", "--v", "10", "--out", shape,
             "--manifest", tmp.file("m.jsonl")}) == 0);
  const auto text = slurp(shape);
  CHECK(text.rfind("x,phi,z\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') > 100);
}

TEST_CASE("reproduce-table golden columns") {
  TempDir tmp;
  const auto out = tmp.file("table1.csv");
  // tiny n keeps this fast; the golden columns do not depend on n
  CHECK(run({"reproduce-table", "--table", "1", "--n", "100", "--jumps-per-particle", "50",
             "--seed", "5", "--out", out, "--manifest", tmp.file("m.jsonl")}) == 0);
  std::ifstream in(out);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header ==
        "lambda,mu,v_n_sim,v_n_stderr,v_star_star,v_n_paper,v_star_star_paper");
  std::string row;
  int rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    if (rows == 1) {
      CHECK(row.rfind("0.45,0.1,", 0) == 0);
      CHECK(row.find(",0.9321,0.974264069") != std::string::npos);
    }
  }
  CHECK(rows == 10);
}

TEST_CASE("empirical law passed as a JSON object") {
  TempDir tmp;
  // point mass at 1: same critical speed as det1
  CHECK(run({"speed", "--law", R"({"type":"empirical","points":[[1.0,1.0]]})", "--lambda",
             "1", "--mu", "1", "--manifest", tmp.file("m.jsonl")}) == 0);
  // malformed spec is a validation error
  CHECK(run({"speed", "--law", R"({"type":"bogus"})", "--lambda", "1", "--mu", "1",
             "--manifest", tmp.file("m.jsonl")}) == 1);
}

TEST_CASE("published table data is wired up") {
  const auto& t1 = jumpsync::cli::table_rows(1);
  REQUIRE(t1.size() == 10);
  CHECK(t1[5].v_star_paper == doctest::Approx(1.492820323));
  const auto& t2 = jumpsync::cli::table_rows(2);
  REQUIRE(t2.size() == 10);
  CHECK(t2.back().v_star_paper == doctest::Approx(0.7469));
  // the optimal row carries the numerically optimized pair
  CHECK(t2[4].lambda == doctest::Approx(0.2694).epsilon(1e-2));
  CHECK_THROWS_AS(jumpsync::cli::table_rows(3), std::invalid_argument);
}
