#include "streambench/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "streambench/harness.hpp"
#include "streambench/model.hpp"
#include "streambench/parallel.hpp"
#include "streambench/report.hpp"
#include "streambench/selftest.hpp"

namespace streambench::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunArgs {
  std::string test = "all";
  double min_bytes = 1e3;
  double max_bytes = 1e8;
  int points = 400;
  int trials = 20;
  int warmup = 1;
  int order = 7;
  int kmin = 2;
  int kmax = 16;
  int threads = 0;
  int block_size = 256;
  int n_blocks = 512;
  int nodes_per_block = mesh::kDefaultNodesPerBlock;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

struct FitArgs {
  std::string input;
  double min_bytes = 0.0;
  double eff = 0.8;
  bool weighted = false;
  std::string out;
  std::string format = "json";
};

struct SelftestArgs {
  bool list = false;
  bool inject_fault = false;
  std::string only;
  int threads = 0;
};

void apply_threads(int threads) {
  if (threads < 0) throw UsageError("--threads must be >= 1");
  set_worker_count(threads > 0 ? threads : env_worker_count());
}

// Opens --out or falls back to `fallback`.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

harness::SweepPlan make_plan(BsTest test, const RunArgs& a) {
  harness::SweepPlan plan;
  plan.test = test;
  plan.trials = a.trials;
  plan.warmup = a.warmup;
  plan.seed = a.seed;
  plan.nodes_per_block = a.nodes_per_block;
  if (is_mesh_test(test)) {
    plan.meshes = harness::mesh_range(a.kmin, a.kmax, a.order);
  } else {
    const double per = static_cast<double>(bytes_per_element(test));
    const auto min_n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(a.min_bytes / per)));
    const auto max_n = static_cast<std::int64_t>(std::floor(a.max_bytes / per));
    if (max_n < min_n)
      throw UsageError("--min-bytes/--max-bytes leave no valid vector length for " + std::string(test_name(test)));
    plan.sizes = harness::geometric_sizes(min_n, max_n, a.points);
  }
  return plan;
}

void validate(const RunArgs& a) {
  if (!(a.min_bytes > 0) || !(a.max_bytes >= a.min_bytes)) throw UsageError("need 0 < --min-bytes <= --max-bytes");
  if (a.points < 1) throw UsageError("--points must be >= 1");
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  if (a.warmup < 0) throw UsageError("--warmup must be >= 0");
  if (a.order < 1) throw UsageError("--order must be >= 1");
  if (a.kmin < 1 || a.kmax < a.kmin) throw UsageError("need 1 <= --kmin <= --kmax");
  if (a.nodes_per_block < 8) throw UsageError("--nodes-per-block must be >= 8 (largest nodal multiplicity)");
  try {
    kernels::ReductionConfig{a.block_size, a.n_blocks}.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  validate(a);
  apply_threads(a.threads);
  std::vector<BsTest> tests;
  if (a.test == "all")
    tests.assign(std::begin(kAllTests), std::end(kAllTests));
  else
    tests.push_back(parse_test(a.test));
  std::vector<harness::BandwidthSample> samples;
  std::vector<harness::SweepPlan> plans;
  for (BsTest t : tests) plans.push_back(make_plan(t, a));

  Output dest(a.out, out);
  const kernels::ReductionConfig cfg{a.block_size, a.n_blocks};
  int status = kSuccess;
  for (const auto& plan : plans) {
    std::vector<harness::BandwidthSample> got;
    try {
      got = harness::run_sweep(plan, cfg);
    } catch (const harness::SweepError& e) {
      err << "streambench run: " << e.what() << '\n';
      got = e.partial();
      status = kRuntimeFailure;
    }
    if (!got.empty()) {
      double peak = 0.0;
      for (const auto& s : got) peak = std::max(peak, s.bandwidth_GBps);
      err << test_name(plan.test) << ": " << got.size() << " samples, peak " << peak << " GB/s, largest size "
          << got.back().bandwidth_GBps << " GB/s (" << worker_count() << " threads)\n";
    }
    samples.insert(samples.end(), got.begin(), got.end());
    if (status != kSuccess) break;
  }
  if (a.format == "json")
    report::write_samples_json(dest.stream(), samples);
  else
    report::write_csv(dest.stream(), samples);
  return status;
}

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.eff > 0.0 && a.eff < 1.0)) throw UsageError("--eff must lie in (0, 1)");
  std::ifstream in(a.input, std::ios::binary);
  if (!in) {
    err << "streambench fit: cannot open '" << a.input << "'\n";
    return kRuntimeFailure;
  }
  std::vector<harness::BandwidthSample> samples;
  try {
    samples = report::read_csv(in);
  } catch (const report::ParseError& e) {
    err << "streambench fit: " << a.input << ": " << e.what() << '\n';
    return kRuntimeFailure;
  }
  if (samples.empty()) {
    err << "streambench fit: " << a.input << ": no samples\n";
    return kRuntimeFailure;
  }
  model::FitOptions opts;
  opts.min_bytes = a.min_bytes;
  opts.weighted = a.weighted;
  const std::optional<double> eff = a.eff == 0.8 ? std::nullopt : std::optional<double>(a.eff);
  const auto reports = report::fit_groups(samples, opts, eff);
  for (const auto& r : reports)
    if (r.fit.clamped_T0)
      err << "streambench fit: warning: " << test_name(r.test) << " intercept negative, T0 clamped to 0\n";
  Output dest(a.out, out);
  if (a.format == "csv")
    report::write_fit_csv(dest.stream(), reports);
  else
    report::write_fit_json(dest.stream(), reports);
  return kSuccess;
}

int cmd_selftest(const SelftestArgs& a, std::ostream& out) {
  if (a.list) {
    for (const auto& c : selftest::checks()) out << c.name << '\n';
    return kSuccess;
  }
  apply_threads(a.threads);
  const auto sum = selftest::run(out, selftest::Context{a.inject_fault}, a.only);
  return sum.failed == 0 ? kSuccess : kRuntimeFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Memory-streaming benchmark suite: BS1-BS7 sweeps and latency/bandwidth model fits", "streambench"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run timed size sweeps and write one CSV row per sample");
  run_cmd->add_option("--test", ra.test, "Test to run")
      ->check(CLI::IsMember({"bs1", "bs2", "bs3", "bs4", "bs5", "bs6", "bs7", "all"}))
      ->capture_default_str();
  run_cmd->add_option("--min-bytes", ra.min_bytes, "Smallest transfer for BS1-BS5")->capture_default_str();
  run_cmd->add_option("--max-bytes", ra.max_bytes, "Largest transfer for BS1-BS5")->capture_default_str();
  run_cmd->add_option("--points", ra.points, "Sizes per BS1-BS5 sweep")->capture_default_str();
  run_cmd->add_option("--trials", ra.trials, "Timed invocations per size")->capture_default_str();
  run_cmd->add_option("--warmup", ra.warmup, "Untimed invocations per size")->capture_default_str();
  run_cmd->add_option("--order", ra.order, "Polynomial order for BS6/BS7")->capture_default_str();
  run_cmd->add_option("--kmin", ra.kmin, "Smallest K for BS6/BS7")->capture_default_str();
  run_cmd->add_option("--kmax", ra.kmax, "Largest K for BS6/BS7")->capture_default_str();
  run_cmd->add_option("--threads", ra.threads, "Worker threads (default: STREAMBENCH_THREADS or all)");
  run_cmd->add_option("--block-size", ra.block_size, "Reduction block size")->capture_default_str();
  run_cmd->add_option("--n-blocks", ra.n_blocks, "Reduction partial count")->capture_default_str();
  run_cmd->add_option("--nodes-per-block", ra.nodes_per_block, "Gather nonzeros per row block")
      ->capture_default_str();
  run_cmd->add_option("--seed", ra.seed, "Input data seed")->capture_default_str();
  run_cmd->add_option("--out", ra.out, "Output file (default stdout)");
  run_cmd->add_option("--format", ra.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "Fit T(B) = T0 + B/Wmax per (test, order) group of a sweep CSV");
  fit_cmd->add_option("input", fa.input, "Sweep CSV written by `run`")->required();
  fit_cmd->add_option("--min-bytes", fa.min_bytes, "Ignore samples below this many bytes")->capture_default_str();
  fit_cmd->add_option("--eff", fa.eff, "Efficiency fraction for the extra Beff_bytes field")->capture_default_str();
  fit_cmd->add_flag("--weighted", fa.weighted, "Weight points by 1/t^2");
  fit_cmd->add_option("--out", fa.out, "Output file (default stdout)");
  fit_cmd->add_option("--format", fa.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  SelftestArgs sa;
  auto* self_cmd = app.add_subcommand("selftest", "Run the built-in oracle and invariant checks");
  self_cmd->add_flag("--list", sa.list, "List check names without running them");
  self_cmd->add_option("--only", sa.only, "Run checks whose name contains this string");
  self_cmd->add_option("--threads", sa.threads, "Worker threads");
  self_cmd->add_flag("--inject-fault", sa.inject_fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*run_cmd) return cmd_run(ra, out, err);
    if (*fit_cmd) return cmd_fit(fa, out, err);
    return cmd_selftest(sa, out);
  } catch (const UsageError& e) {
    err << "streambench: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "streambench: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace streambench::cli
