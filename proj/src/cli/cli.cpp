#include "blochmle/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "blochmle/bench.hpp"
#include "blochmle/checks.hpp"
#include "blochmle/errors.hpp"
#include "blochmle/io.hpp"
#include "blochmle/simulator.hpp"
#include "blochmle/trajectories.hpp"

namespace blochmle {
namespace {

struct Options {
  std::string in_path;
  std::string out_path;
  bool oracle = false;

  std::vector<double> xi;
  std::string mode = "standard";
  std::int64_t shots = 0;
  std::vector<double> ratios;
  std::uint64_t seed = 0;
  std::string format = "json";

  int trials = 1000;

  std::string plane = "xi1xi2";
  int grid = 8;
  int samples = 50;
  std::vector<double> start;

  std::string suite = "all";
  std::uint64_t check_seed = 1;
};

std::array<double, 3> triple(const std::vector<double>& v, const char* name) {
  if (v.size() != 3) throw DomainError(fmt::format("{}: expected three comma-separated numbers", name));
  return {v[0], v[1], v[2]};
}

WeightVector weights_or_equal(const std::vector<double>& ratios) {
  if (ratios.empty()) return WeightVector{};
  return WeightVector::from_ratios(triple(ratios, "--s"));
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DomainError(fmt::format("--in: cannot open '{}'", path));
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError(fmt::format("--out: cannot open '{}'", path));
  file << text;
}

int cmd_estimate(const Options& o, std::istream& in, std::ostream& out) {
  const auto counts = parse_counts(read_input(o.in_path, in));
  std::optional<OracleConfig> oracle;
  if (o.oracle) oracle = OracleConfig{};
  write_output(o.out_path, to_json(make_estimate_report(counts, oracle)), out);
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const StokesVector xi(triple(o.xi, "--xi"));
  SimulationSpec spec{xi, StandardMode{o.shots}, o.seed};
  if (o.mode == "randomized") {
    spec.mode = RandomizedMode{weights_or_equal(o.ratios), o.shots};
  } else if (!o.ratios.empty()) {
    throw DomainError("--s: only valid with --mode randomized");
  }
  const auto counts = simulate(spec);
  const auto format = o.format == "csv" ? CountsFormat::csv : CountsFormat::json;
  write_output(o.out_path, format_counts(counts, format), out);
  return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  const auto summary = run_benchmark(o.trials, o.seed);
  write_output(o.out_path, format_bench_csv(summary), out);
  if (summary.max_discrepancy > kBenchDiscrepancyLimit) {
    err << fmt::format("error: projection and oracle disagree by {} (limit {})\n",
                       format_real(summary.max_discrepancy), format_real(kBenchDiscrepancyLimit));
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_trajectories(const Options& o, std::ostream& out) {
  const auto s = weights_or_equal(o.ratios);
  std::vector<StokesVector> starts;
  if (o.start.empty()) {
    starts = lattice_starts(parse_plane(o.plane), o.grid);
  } else {
    starts.emplace_back(triple(o.start, "--start"));
  }
  write_output(o.out_path, format_trajectories_csv(trajectory_rows(starts, s, o.samples)), out);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto results = run_suite(o.suite, o.check_seed);
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << fmt::format("{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    if (!r.passed) ++failed;
  }
  out << fmt::format("{} of {} checks passed\n", results.size() - failed, results.size());
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Maximum-likelihood qubit state estimation from Pauli measurement counts",
               "bloch-mle"};
  app.require_subcommand(1);
  Options o;

  auto* estimate = app.add_subcommand("estimate", "Project a counts file to the MLE");
  estimate->add_option("--in", o.in_path, "Counts file (JSON or CSV); '-' or omitted reads stdin");
  estimate->add_option("--out", o.out_path, "Report destination; stdout by default");
  estimate->add_flag("--oracle", o.oracle, "Cross-check against the brute-force sphere search");

  auto* sim = app.add_subcommand("simulate", "Sample measurement counts for a known state");
  sim->add_option("--xi", o.xi, "True Stokes vector a,b,c")->required()->delimiter(',');
  sim->add_option("--mode", o.mode, "standard or randomized")
      ->check(CLI::IsMember({"standard", "randomized"}));
  sim->add_option("--N", o.shots, "Shots per axis (standard) or in total (randomized)")->required();
  sim->add_option("--s", o.ratios, "Axis probability ratios a,b,c (randomized)")->delimiter(',');
  sim->add_option("--seed", o.seed, "Generator seed");
  sim->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sim->add_option("--out", o.out_path, "Destination; stdout by default");

  auto* bench = app.add_subcommand("bench", "Time the projection against the sphere search");
  bench->add_option("--trials", o.trials, "Number of random exterior instances");
  bench->add_option("--seed", o.seed, "Instance seed");
  bench->add_option("--out", o.out_path, "Destination; stdout by default");

  auto* traj = app.add_subcommand("trajectories", "Sample projection curves as CSV");
  traj->add_option("--plane", o.plane, "xi1xi2, xi1xi3 or xi2xi3");
  traj->add_option("--grid", o.grid, "Lattice divisions per side");
  traj->add_option("--s", o.ratios, "Axis weight ratios a,b,c")->delimiter(',');
  traj->add_option("--samples", o.samples, "Points per curve");
  traj->add_option("--start", o.start, "Single start point a,b,c instead of the lattice")
      ->delimiter(',');
  traj->add_option("--out", o.out_path, "Destination; stdout by default");

  auto* check = app.add_subcommand("check", "Run the invariant suites");
  check->add_option("--suite", o.suite, "all, infogeo, projector or simulator")
      ->check(CLI::IsMember({"all", "infogeo", "projector", "simulator"}));
  check->add_option("--seed", o.check_seed, "Suite seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kExitInput;
  }

  try {
    if (estimate->parsed()) return cmd_estimate(o, in, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (bench->parsed()) return cmd_bench(o, out, err);
    if (traj->parsed()) return cmd_trajectories(o, out);
    return cmd_check(o, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SolverError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace blochmle
