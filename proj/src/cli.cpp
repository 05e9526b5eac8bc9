#include "jumpsync/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jumpsync/brw.hpp"
#include "jumpsync/csv.hpp"
#include "jumpsync/errors.hpp"
#include "jumpsync/mfl.hpp"
#include "jumpsync/optimize.hpp"
#include "jumpsync/parallel.hpp"
#include "jumpsync/particles.hpp"
#include "jumpsync/speed.hpp"
#include "jumpsync/tws.hpp"

namespace jumpsync::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

using particles::BoundarySpec;
using json = nlohmann::json;

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// One manifest line per run, appended as JSON-lines.
class Manifest {
 public:
  Manifest(std::string subcommand, std::string path)
      : sub_(std::move(subcommand)), path_(std::move(path)),
        start_(std::chrono::steady_clock::now()) {}

  json& config() { return config_; }

  void add_output(const std::string& path, const std::string& schema) {
    std::ostringstream hex;
    hex << std::hex << fnv1a64_file(path);
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    outputs_.push_back({{"path", path},
                        {"bytes", in ? static_cast<long long>(in.tellg()) : -1},
                        {"fnv1a64", hex.str()},
                        {"schema", schema}});
  }

  void write() {
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
    json line = {{"subcommand", sub_},
                 {"version", kVersion},
                 {"config", config_},
                 {"wall_time_s", dt.count()},
                 {"outputs", outputs_}};
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::invalid_argument("cannot open manifest file: " + path_);
    out << line.dump() << "\n";
  }

 private:
  std::string sub_;
  std::string path_;
  std::chrono::steady_clock::time_point start_;
  json config_ = json::object();
  json outputs_ = json::array();
};

// Law specs: a built-in name, or a JSON object
// {"type":"empirical","points":[[x,F],...]} for a tabulated CDF.
JumpLaw parse_law_spec(const std::string& text) {
  if (text.empty() || text[0] != '{') return JumpLaw::parse(text);
  const json doc = json::parse(text);
  if (doc.at("type") != "empirical")
    throw std::invalid_argument("law object must have type \"empirical\"");
  std::vector<CdfPoint> points;
  for (const auto& pair : doc.at("points")) {
    points.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
  }
  return JumpLaw::empirical(std::move(points));
}

BoundarySpec parse_boundary(const std::string& text) {
  if (text.empty() || text == "none") return BoundarySpec::none();
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<double> nums;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string part;
    while (std::getline(ss, part, ',')) nums.push_back(std::stod(part));
  }
  if (kind == "fixed" && nums.size() == 1) return BoundarySpec::fixed_right(nums[0]);
  if (kind == "right" && nums.size() == 2) return BoundarySpec::moving_right(nums[0], nums[1]);
  if (kind == "left" && nums.size() == 2) return BoundarySpec::moving_left(nums[0], nums[1]);
  throw std::invalid_argument(
      "bad boundary '" + text + "' (none | fixed:B | right:B0,v | left:A0,v)");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  return out;
}

// ---- speed ---------------------------------------------------------------

struct SpeedArgs {
  std::string law = "exp";
  double lambda = 1.0;
  double mu = 1.0;
  std::string curve_path;
  double curve_min = 0.0, curve_max = 0.0;
  int curve_points = 200;
  std::string manifest = "manifest.jsonl";
};

void run_speed(const SpeedArgs& a) {
  Manifest man("speed", a.manifest);
  man.config() = {{"law", a.law}, {"lambda", a.lambda}, {"mu", a.mu}};
  const JumpLaw law = parse_law_spec(a.law);
  const auto cs = speed::critical(law, a.lambda, a.mu);
  std::cout << "zeta_star " << fmt9(cs.zeta_star) << "\n";
  std::cout << "v_star " << fmt9(cs.v_star) << "\n";
  if (!cs.interior) std::cout << "note: minimizer at the tail exponent boundary\n";
  if (!a.curve_path.empty()) {
    double lo = a.curve_min > 0.0 ? a.curve_min : cs.zeta_star / 10.0;
    double hi = a.curve_max > 0.0 ? a.curve_max : cs.zeta_star * 3.0;
    const double alpha = law.tail_exponent();
    if (!std::isinf(alpha)) hi = std::min(hi, alpha * 0.999);
    CsvWriter csv(a.curve_path);
    csv.header("zeta,v");
    for (int i = 0; i < a.curve_points; ++i) {
      const double z = lo + (hi - lo) * i / (a.curve_points - 1);
      csv.field(z).field(speed::v_of_zeta(law, a.lambda, a.mu, z));
      csv.end_row();
    }
    csv.close();
    man.add_output(a.curve_path, "speed-curve.v1");
  }
  man.write();
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  std::string law = "exp";
  double lambda = 1.0;
  double mu = 1.0;
  std::uint64_t n = 10000;
  std::uint64_t jumps = 400;
  double warmup = 0.5;
  std::uint64_t seed = 0;
  std::string statistic = "mean";
  double nu = 0.5;
  std::string boundary = "none";
  double init_spread = 0.0;
  std::string out_path;
  std::string series_path;
  int series_points = 100;
  std::string manifest = "manifest.jsonl";
};

particles::SpeedStatistic parse_statistic(const std::string& s) {
  if (s == "mean") return particles::SpeedStatistic::MeanDisplacement;
  if (s == "quantile") return particles::SpeedStatistic::QuantileDisplacement;
  if (s == "leading") return particles::SpeedStatistic::LeadingParticle;
  throw std::invalid_argument("bad statistic '" + s + "' (mean | quantile | leading)");
}

void run_simulate(const SimulateArgs& a) {
  Manifest man("simulate", a.manifest);
  man.config() = {{"law", a.law},        {"lambda", a.lambda},
                  {"mu", a.mu},          {"n", a.n},
                  {"jumps", a.jumps},    {"warmup", a.warmup},
                  {"seed", a.seed},      {"statistic", a.statistic},
                  {"nu", a.nu},          {"boundary", a.boundary},
                  {"init_spread", a.init_spread}};
  const JumpLaw law = parse_law_spec(a.law);
  particles::SimulateOptions opt;
  opt.statistic = parse_statistic(a.statistic);
  opt.quantile_nu = a.nu;
  opt.boundary = parse_boundary(a.boundary);
  opt.init_spread = a.init_spread;
  std::vector<std::pair<double, double>> series;
  if (!a.series_path.empty()) {
    opt.series = &series;
    opt.series_points = a.series_points;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto est =
      particles::simulate_speed(law, a.lambda, a.mu, a.n, a.jumps, a.warmup, a.seed, opt);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "v_n " << fmt9(est.value) << " +- " << fmt9(est.std_error) << "\n";
  if (!a.out_path.empty()) {
    CsvWriter csv(a.out_path);
    csv.header(
        "law,lambda,mu,n,jumps_per_particle,warmup_fraction,seed,statistic,boundary,"
        "v_n,std_error,t_start,t_end,wall_time_s");
    csv.field(a.law).field(a.lambda).field(a.mu).field(a.n).field(a.jumps).field(a.warmup);
    csv.field(std::to_string(a.seed)).field(a.statistic).field(a.boundary);
    csv.field(est.value).field(est.std_error).field(est.t_start).field(est.t_end).field(wall);
    csv.end_row();
    csv.close();
    man.add_output(a.out_path, "simulate.v1");
  }
  if (!a.series_path.empty()) {
    CsvWriter csv(a.series_path);
    csv.header("time,statistic");
    for (const auto& [t, s] : series) {
      csv.field(t).field(s);
      csv.end_row();
    }
    csv.close();
    man.add_output(a.series_path, "simulate-series.v1");
  }
  man.write();
}

// ---- brw -----------------------------------------------------------------

struct BrwArgs {
  std::string law = "exp";
  double lambda = 1.0;
  double mu = 1.0;
  double t_end = 5.0;
  std::uint64_t seed = 0;
  std::uint64_t cap = 1'000'000;
  double sample_dt = 0.1;
  std::string out_path;
  std::uint64_t replicas = 0;
  double grid_min = 0.0, grid_max = 0.0, grid_step = 0.1;
  std::string leading_path;
  std::string manifest = "manifest.jsonl";
};

void run_brw(const BrwArgs& a) {
  Manifest man("brw", a.manifest);
  man.config() = {{"law", a.law},   {"lambda", a.lambda},   {"mu", a.mu},
                  {"t_end", a.t_end}, {"seed", a.seed},     {"cap", a.cap},
                  {"replicas", a.replicas}};
  const JumpLaw law = parse_law_spec(a.law);
  if (!a.out_path.empty()) {
    brw::BrwOptions opt;
    opt.cap = a.cap;
    opt.sample_dt = a.sample_dt;
    const auto result = brw::simulate_brw(law, a.lambda, a.mu, a.t_end, a.seed, opt);
    CsvWriter csv(a.out_path);
    csv.header("time,population,leader");
    for (const auto& s : result.trajectory) {
      csv.field(s.time).field(static_cast<std::uint64_t>(s.population)).field(s.leader);
      csv.end_row();
    }
    csv.close();
    man.add_output(a.out_path, "brw-trajectory.v1");
    std::cout << "final N " << result.final_locations.size() << " D "
              << fmt9(result.trajectory.back().leader)
              << (result.cap_exceeded ? " (cap exceeded)" : "") << "\n";
  }
  if (!a.leading_path.empty()) {
    if (a.replicas == 0) throw std::invalid_argument("brw: --replicas required for leading CDF");
    std::vector<double> grid;
    for (double x = a.grid_min; x <= a.grid_max + 1e-12; x += a.grid_step) grid.push_back(x);
    const auto lead =
        brw::leading_cdf(law, a.lambda, a.mu, a.t_end, a.replicas, grid, a.seed, a.cap);
    CsvWriter csv(a.leading_path);
    csv.header("x,prob");
    for (std::size_t i = 0; i < lead.grid.size(); ++i) {
      csv.field(lead.grid[i]).field(lead.prob[i]);
      csv.end_row();
    }
    csv.close();
    man.add_output(a.leading_path, "brw-leading-cdf.v1");
    if (lead.biased) std::cout << "note: estimate biased (population cap hit)\n";
  }
  man.write();
}

// ---- mfl -----------------------------------------------------------------

struct MflArgs {
  std::string law = "exp";
  double lambda = 1.0;
  double mu = 1.0;
  double t_end = 1.0;
  double dt = 0.01;
  double h = 0.02;
  double x_left = -10.0;
  double x_right = 20.0;
  std::string boundary = "none";
  std::string init = "dirac";
  double snapshot_dt = 0.0;
  std::string snapshot_prefix;
  std::string quantiles_path;
  std::string track = "0.5";
  bool recenter = false;
  std::string manifest = "manifest.jsonl";
};

mfl::GridCdf build_initial_state(const MflArgs& a) {
  if (a.init == "dirac") return mfl::make_dirac(a.h, a.x_left, a.x_right);
  if (a.init.rfind("logistic:", 0) == 0) {
    const auto nums = parse_list(a.init.substr(9));
    if (nums.size() != 2) throw std::invalid_argument("init logistic:v,c needs two numbers");
    const double v = nums[0], c = nums[1];
    return mfl::make_from_function(a.h, a.x_left, a.x_right, [v, c](double x) {
      return 1.0 / (1.0 + std::exp(-(x + c) / v));
    });
  }
  if (a.init.rfind("file:", 0) == 0) {
    const std::string path = a.init.substr(5);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open initial state file: " + path);
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || !(std::isdigit(line[0]) || line[0] == '-' || line[0] == '+')) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      xs.push_back(std::stod(line.substr(0, comma)));
      ys.push_back(std::stod(line.substr(comma + 1)));
    }
    return mfl::make_from_samples(a.h, a.x_left, a.x_right, xs, ys);
  }
  throw std::invalid_argument("bad init '" + a.init + "' (dirac | logistic:v,c | file:<csv>)");
}

void run_mfl(const MflArgs& a) {
  Manifest man("mfl", a.manifest);
  man.config() = {{"law", a.law},     {"lambda", a.lambda}, {"mu", a.mu},
                  {"t_end", a.t_end}, {"dt", a.dt},         {"h", a.h},
                  {"x_left", a.x_left}, {"x_right", a.x_right},
                  {"boundary", a.boundary}, {"init", a.init}, {"track", a.track}};
  const JumpLaw law = parse_law_spec(a.law);
  mfl::IntegrateOptions opt;
  opt.dt = a.dt;
  opt.snapshot_dt = a.snapshot_dt;
  opt.track_quantiles = parse_list(a.track);
  opt.recenter.enabled = a.recenter;
  const auto traj = mfl::integrate(build_initial_state(a), law, a.lambda, a.mu,
                                   parse_boundary(a.boundary), a.t_end, opt);
  if (!a.snapshot_prefix.empty()) {
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
      const auto& snap = traj.snapshots[s];
      const std::string path = a.snapshot_prefix + "_" + std::to_string(s) + ".csv";
      CsvWriter csv(path);
      csv.header("x,f");
      for (std::size_t k = 0; k < snap.size(); ++k) {
        csv.field(snap.node_abs(k)).field(snap.values[k]);
        csv.end_row();
      }
      csv.close();
      man.add_output(path, "mfl-snapshot.v1");
    }
  }
  if (!a.quantiles_path.empty()) {
    CsvWriter csv(a.quantiles_path);
    std::string hdr = "time";
    for (double nu : traj.tracked_nu) hdr += ",q" + fmt9(nu);
    csv.header(hdr);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      csv.field(traj.times[i]);
      for (std::size_t q = 0; q < traj.tracked_nu.size(); ++q) csv.field(traj.quantiles[q][i]);
      csv.end_row();
    }
    csv.close();
    man.add_output(a.quantiles_path, "mfl-quantiles.v1");
  }
  const auto& last = traj.snapshots.back();
  std::cout << "t " << fmt9(last.time) << " q0.5 " << fmt9(mfl::quantile(last, 0.5)) << "\n";
  man.write();
}

// ---- tws -----------------------------------------------------------------

struct TwsArgs {
  double lambda = 1.0;
  double mu = 1.0;
  double v = 4.0;
  std::string kind = "original";
  double phi0 = 1e-3;
  std::string out_path;
  std::string manifest = "manifest.jsonl";
};

void run_tws(const TwsArgs& a) {
  Manifest man("tws", a.manifest);
  man.config() = {{"lambda", a.lambda}, {"mu", a.mu}, {"v", a.v},
                  {"kind", a.kind},     {"phi0", a.phi0}};
  const double v_star =
      (std::sqrt(a.lambda) + std::sqrt(a.mu)) * (std::sqrt(a.lambda) + std::sqrt(a.mu));

  std::optional<tws::WaveSolution> wave;
  if (a.kind == "original") {
    wave = tws::tws_original(a.lambda, a.mu, a.v);
  } else if (a.kind == "left") {
    wave = tws::tws_left_boundary(a.lambda, a.mu, a.v, a.phi0);
  } else if (a.kind == "right") {
    wave = tws::tws_right_boundary(a.lambda, a.mu, a.v);
  } else {
    throw std::invalid_argument("bad kind '" + a.kind + "' (original | left | right)");
  }

  json record = {{"v", a.v}, {"v_star", v_star}, {"kind", a.kind}};
  if (!wave) {
    record["classification"] = "absent";
  } else {
    switch (wave->classification) {
      case tws::WaveClass::Proper: {
        record["classification"] = "Proper";
        record["tail_exponent"] = tws::tail_exponent_of_shape(*wave);
        break;
      }
      case tws::WaveClass::HitsOneAbove:
        record["classification"] = "HitsOneAbove";
        record["z1"] = wave->z1;
        break;
      case tws::WaveClass::FellToAxis:
        record["classification"] = "FellToAxis";
        record["phi_hit"] = wave->phi_hit;
        break;
    }
    if (!a.out_path.empty()) {
      CsvWriter csv(a.out_path);
      csv.header("x,phi,z");
      for (std::size_t i = 0; i < wave->x.size(); ++i) {
        csv.field(wave->x[i]).field(wave->phi[i]).field(wave->z[i]);
        csv.end_row();
      }
      csv.close();
      man.add_output(a.out_path, "tws-shape.v1");
    }
  }
  std::cout << record.dump() << "\n";
  man.write();
}

// ---- optimize --------------------------------------------------------------

struct OptimizeArgs {
  std::string law = "exp";
  double a = 2.0;
  double b = 1.0;
  std::string sweep_path;
  std::string manifest = "manifest.jsonl";
};

void run_optimize(const OptimizeArgs& a) {
  Manifest man("optimize", a.manifest);
  man.config() = {{"law", a.law}, {"a", a.a}, {"b", a.b}};
  const JumpLaw law = parse_law_spec(a.law);
  std::vector<TradeoffSweepPoint> sweep;
  const auto result = optimize_tradeoff(law, a.a, a.b, &sweep);
  std::cout << "lambda_opt " << fmt9(result.lambda_opt) << "\n";
  std::cout << "mu_opt " << fmt9(result.mu_opt) << "\n";
  std::cout << "v_opt " << fmt9(result.v_opt) << "\n";
  if (!result.unimodal_verified)
    std::cout << "warning: sweep contradicts unimodality; reported the sweep best\n";
  if (!a.sweep_path.empty()) {
    CsvWriter csv(a.sweep_path);
    csv.header("lambda,mu,v_star_star");
    for (const auto& p : sweep) {
      csv.field(p.lambda).field(p.mu).field(p.v_star);
      csv.end_row();
    }
    csv.close();
    man.add_output(a.sweep_path, "optimize-sweep.v1");
  }
  man.write();
}

// ---- reproduce-table -------------------------------------------------------

struct TableArgs {
  int table = 1;
  std::uint64_t n = 10000;
  std::uint64_t jumps = 400;
  double warmup = 0.5;
  std::uint64_t seed = 0;
  std::string out_path = "table.csv";
  std::string manifest = "manifest.jsonl";
};

void run_table(const TableArgs& a) {
  Manifest man("reproduce-table", a.manifest);
  man.config() = {{"table", a.table}, {"n", a.n}, {"jumps", a.jumps}, {"seed", a.seed}};
  const auto& rows = table_rows(a.table);
  const JumpLaw law =
      a.table == 1 ? JumpLaw::exponential_mean_one() : JumpLaw::uniform_zero_two();

  struct RowResult {
    particles::SpeedEstimate est;
    double v_star;
  };
  std::vector<RowResult> results(rows.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const auto& row = rows[i];
    results[i].v_star = speed::critical(law, row.lambda, row.mu).v_star;
    results[i].est = particles::simulate_speed(law, row.lambda, row.mu, a.n, a.jumps,
                                               a.warmup, a.seed + i, {});
  });

  CsvWriter csv(a.out_path);
  csv.header("lambda,mu,v_n_sim,v_n_stderr,v_star_star,v_n_paper,v_star_star_paper");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv.field(rows[i].lambda).field(rows[i].mu);
    csv.field(results[i].est.value).field(results[i].est.std_error).field(results[i].v_star);
    csv.field(rows[i].v_n_paper).field(rows[i].v_star_paper);
    csv.end_row();
    std::cout << fmt9(rows[i].lambda) << " " << fmt9(rows[i].mu) << "  v_n "
              << fmt9(results[i].est.value) << "  v** " << fmt9(results[i].v_star) << "\n";
  }
  csv.close();
  man.add_output(a.out_path, "reproduce-table.v1");
  man.write();
}

}  // namespace

const std::vector<TableRow>& table_rows(int table_id) {
  static const std::vector<TableRow> table1 = {
      {0.45, 0.1, 0.9321, 0.974264069},  {0.4, 0.2, 1.0863, 1.165685425},
      {0.35, 0.3, 1.2104, 1.29807407},   {0.3, 0.4, 1.2974, 1.392820323},
      {0.25, 0.5, 1.3236, 1.457106781},  {0.2, 0.6, 1.3318, 1.492820323},
      {1.0 / 6.0, 2.0 / 3.0, 1.3566, 1.5},
      {0.15, 0.7, 1.3071, 1.49807407},   {0.1, 0.8, 1.2206, 1.465685425},
      {0.05, 0.9, 1.0567, 1.374264069}};
  static const std::vector<TableRow> table2 = [] {
    const auto opt = optimize_tradeoff(JumpLaw::uniform_zero_two(), 2.0, 1.0);
    return std::vector<TableRow>{
        {0.45, 0.1, 0.8176, 0.844},  {0.4, 0.2, 0.9243, 0.955},
        {0.35, 0.3, 0.9704, 1.0165}, {0.3, 0.4, 0.9871, 1.0458},
        {opt.lambda_opt, opt.mu_opt, 0.9917, 1.0505},
        {0.25, 0.5, 0.9995, 1.0486}, {0.2, 0.6, 0.9716, 1.0262},
        {0.15, 0.7, 0.919, 0.9761},  {0.1, 0.8, 0.8209, 0.8907},
        {0.05, 0.9, 0.6751, 0.7469}};
  }();
  if (table_id == 1) return table1;
  if (table_id == 2) return table2;
  throw std::invalid_argument("table must be 1 or 2");
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"jumpsync: particle system with independent jumps and distributed synchronization"};
  app.require_subcommand(1);
  // Flat key=value config (dotted keys or a [subcommand] section); command
  // line flags win over config values.
  app.set_config("--config");

  SpeedArgs sa;
  auto* speed_cmd = app.add_subcommand("speed", "critical speed (zeta**, v**) and the curve v(zeta)");
  speed_cmd->add_option("--law", sa.law,
                        "exp | uniform02 | det1 | {\"type\":\"empirical\",\"points\":[[x,F],..]}");
  speed_cmd->add_option("--lambda", sa.lambda)->required();
  speed_cmd->add_option("--mu", sa.mu)->required();
  speed_cmd->add_option("--curve", sa.curve_path, "CSV of the speed curve");
  speed_cmd->add_option("--curve-min", sa.curve_min);
  speed_cmd->add_option("--curve-max", sa.curve_max);
  speed_cmd->add_option("--curve-points", sa.curve_points);
  speed_cmd->add_option("--manifest", sa.manifest);

  SimulateArgs ma;
  auto* sim_cmd = app.add_subcommand("simulate", "finite-n steady-state speed estimate");
  sim_cmd->add_option("--law", ma.law);
  sim_cmd->add_option("--lambda", ma.lambda)->required();
  sim_cmd->add_option("--mu", ma.mu)->required();
  sim_cmd->add_option("--n", ma.n);
  sim_cmd->add_option("--jumps-per-particle", ma.jumps);
  sim_cmd->add_option("--warmup", ma.warmup);
  sim_cmd->add_option("--seed", ma.seed)->required();
  sim_cmd->add_option("--statistic", ma.statistic, "mean | quantile | leading");
  sim_cmd->add_option("--nu", ma.nu);
  sim_cmd->add_option("--boundary", ma.boundary, "none | fixed:B | right:B0,v | left:A0,v");
  sim_cmd->add_option("--init-spread", ma.init_spread);
  sim_cmd->add_option("--out", ma.out_path);
  sim_cmd->add_option("--series", ma.series_path);
  sim_cmd->add_option("--series-points", ma.series_points);
  sim_cmd->add_option("--manifest", ma.manifest);

  BrwArgs ba;
  auto* brw_cmd = app.add_subcommand("brw", "associated branching random walk");
  brw_cmd->add_option("--law", ba.law);
  brw_cmd->add_option("--lambda", ba.lambda)->required();
  brw_cmd->add_option("--mu", ba.mu)->required();
  brw_cmd->add_option("--t-end", ba.t_end)->required();
  brw_cmd->add_option("--seed", ba.seed)->required();
  brw_cmd->add_option("--cap", ba.cap);
  brw_cmd->add_option("--sample-dt", ba.sample_dt);
  brw_cmd->add_option("--out", ba.out_path, "(t, N, D) trajectory CSV");
  brw_cmd->add_option("--replicas", ba.replicas);
  brw_cmd->add_option("--grid-min", ba.grid_min);
  brw_cmd->add_option("--grid-max", ba.grid_max);
  brw_cmd->add_option("--grid-step", ba.grid_step);
  brw_cmd->add_option("--leading-out", ba.leading_path, "leading-particle CDF CSV");
  brw_cmd->add_option("--manifest", ba.manifest);

  MflArgs fa;
  auto* mfl_cmd = app.add_subcommand("mfl", "mean-field limit integration");
  mfl_cmd->add_option("--law", fa.law);
  mfl_cmd->add_option("--lambda", fa.lambda)->required();
  mfl_cmd->add_option("--mu", fa.mu)->required();
  mfl_cmd->add_option("--t-end", fa.t_end)->required();
  mfl_cmd->add_option("--dt", fa.dt);
  mfl_cmd->add_option("--grid-h", fa.h);
  mfl_cmd->add_option("--x-left", fa.x_left);
  mfl_cmd->add_option("--x-right", fa.x_right);
  mfl_cmd->add_option("--boundary", fa.boundary);
  mfl_cmd->add_option("--init", fa.init, "dirac | logistic:v,c | file:<csv>");
  mfl_cmd->add_option("--snapshot-dt", fa.snapshot_dt);
  mfl_cmd->add_option("--snapshot-prefix", fa.snapshot_prefix);
  mfl_cmd->add_option("--quantiles-out", fa.quantiles_path);
  mfl_cmd->add_option("--track", fa.track, "comma-separated quantiles");
  mfl_cmd->add_flag("--recenter", fa.recenter);
  mfl_cmd->add_option("--manifest", fa.manifest);

  TwsArgs ta;
  auto* tws_cmd = app.add_subcommand("tws", "traveling wave shapes (exponential jumps)");
  tws_cmd->add_option("--lambda", ta.lambda)->required();
  tws_cmd->add_option("--mu", ta.mu);
  tws_cmd->add_option("--v", ta.v)->required();
  tws_cmd->add_option("--kind", ta.kind, "original | left | right");
  tws_cmd->add_option("--phi0", ta.phi0);
  tws_cmd->add_option("--out", ta.out_path, "(x, phi, z) CSV");
  tws_cmd->add_option("--manifest", ta.manifest);

  OptimizeArgs oa;
  auto* opt_cmd = app.add_subcommand("optimize", "max v** subject to a lambda + b mu = 1");
  opt_cmd->add_option("--law", oa.law);
  opt_cmd->add_option("--a", oa.a)->required();
  opt_cmd->add_option("--b", oa.b)->required();
  opt_cmd->add_option("--sweep", oa.sweep_path);
  opt_cmd->add_option("--manifest", oa.manifest);

  TableArgs tba;
  auto* tab_cmd = app.add_subcommand("reproduce-table", "published speed tables vs this build");
  tab_cmd->add_option("--table", tba.table)->check(CLI::Range(1, 2));
  tab_cmd->add_option("--n", tba.n);
  tab_cmd->add_option("--jumps-per-particle", tba.jumps);
  tab_cmd->add_option("--warmup", tba.warmup);
  tab_cmd->add_option("--seed", tba.seed)->required();
  tab_cmd->add_option("--out", tba.out_path);
  tab_cmd->add_option("--manifest", tba.manifest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (speed_cmd->parsed()) run_speed(sa);
    if (sim_cmd->parsed()) run_simulate(ma);
    if (brw_cmd->parsed()) run_brw(ba);
    if (mfl_cmd->parsed()) run_mfl(fa);
    if (tws_cmd->parsed()) run_tws(ta);
    if (opt_cmd->parsed()) run_optimize(oa);
    if (tab_cmd->parsed()) run_table(tba);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace jumpsync::cli
