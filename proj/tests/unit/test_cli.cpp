#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "blochmle/bench.hpp"
#include "blochmle/cli.hpp"
#include "blochmle/io.hpp"
#include "blochmle/sampling.hpp"
#include "blochmle/trajectories.hpp"

#include <json.hpp>

using namespace blochmle;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string csv_counts(int p1, int m1, int p2, int m2, int p3, int m3) {
  std::ostringstream s;
  s << "axis,n_plus,n_minus\n1," << p1 << ',' << m1 << "\n2," << p2 << ',' << m2 << "\n3," << p3
    << ',' << m3 << '\n';
  return s.str();
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) row.push_back(std::stod(f));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json estimate(const std::string& counts, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{"estimate"};
  args.insert(args.end(), extra.begin(), extra.end());
  const auto r = run(args, counts);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("symmetric counts project to the body diagonal") {
  const auto report = estimate(csv_counts(90, 10, 90, 10, 90, 10));
  CHECK(report["was_projected"] == true);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(report["mle"][i].get<double>() - 1.0 / std::sqrt(3.0)) < 1e-10);
  }
  CHECK(std::abs(report["lambda"].get<double>() - 5.186175317511091) < 1e-10);
  CHECK(report["norm_residual"].get<double>() < 1e-10);
}

TEST_CASE("interior estimate is returned unchanged") {
  const auto report = estimate(csv_counts(80, 20, 50, 50, 65, 35));
  CHECK(report["was_projected"] == false);
  CHECK(report["lambda"].is_null());
  CHECK(report["mle"][0].get<double>() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(report["mle"][1].get<double>() == 0.0);
  CHECK(report["mle"][2].get<double>() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(report["kl_divergence"].get<double>() == 0.0);
}

TEST_CASE("pole-heavy estimate projects within its plane") {
  const auto report = estimate(csv_counts(100, 0, 65, 35, 50, 50), {"--oracle"});
  CHECK(report["was_projected"] == true);
  CHECK(std::abs(report["mle"][0].get<double>() - 0.97965531445654793) < 1e-12);
  CHECK(std::abs(report["mle"][1].get<double>() - 0.20068748056877437) < 1e-12);
  CHECK(report["mle"][2].get<double>() == 0.0);
  CHECK(report["oracle"]["max_discrepancy"].get<double>() < 1e-4);
}

TEST_CASE("JSON and CSV inputs give the same report") {
  const std::string json =
      R"({"axes":[{"axis":3,"n_plus":12,"n_minus":3},{"axis":1,"n_plus":70,"n_minus":2},)"
      R"({"axis":2,"n_plus":40,"n_minus":9}]})";
  const auto a = run({"estimate"}, json);
  const auto b = run({"estimate", "--in", "-"}, csv_counts(70, 2, 40, 9, 12, 3));
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("counts files round-trip through both formats") {
  InstanceSampler rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto draw = [&] { return static_cast<std::int64_t>(rng.uniform(0.0, 1e6)); };
    const CountRecord counts(AxisCounts{draw() + 1, draw()}, AxisCounts{draw(), draw() + 1},
                             AxisCounts{draw() + 1, draw() + 1});
    CHECK(parse_counts(format_counts(counts, CountsFormat::json)) == counts);
    CHECK(parse_counts(format_counts(counts, CountsFormat::csv)) == counts);
  }
}

TEST_CASE("malformed counts exit 2 and name the field") {
  struct Case {
    std::string text;
    std::string field;
  };
  const std::vector<Case> cases{
      {"axis,n_plus\n1,2\n2,3\n3,4\n", "header"},
      {"axis,n_plus,n_minus\n1,2,3\n2,3,4\n", "rows"},
      {"axis,n_plus,n_minus\n1,2,3\n1,3,4\n3,1,1\n", "axis"},
      {"axis,n_plus,n_minus\n1,2,3\n2,-3,4\n3,1,1\n", "n_plus"},
      {"axis,n_plus,n_minus\n1,2,3\n2,3,x\n3,1,1\n", "n_minus"},
      {"axis,n_plus,n_minus\n1,2,3\n2,0,0\n3,1,1\n", "n_plus/n_minus"},
      {"axis,n_plus,n_minus\n4,2,3\n2,3,4\n3,1,1\n", "axis"},
      {R"({"axes":[{"axis":1,"n_plus":1},{"axis":2,"n_plus":1,"n_minus":1},{"axis":3,"n_plus":1,"n_minus":1}]})",
       "axes[0].n_minus"},
      {R"({"axes":[{"axis":1,"n_plus":1.5,"n_minus":1},{"axis":2,"n_plus":1,"n_minus":1},{"axis":3,"n_plus":1,"n_minus":1}]})",
       "axes[0].n_plus"},
      {R"({"counts":[]})", "axes"},
      {R"({"axes":[)", "invalid JSON"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const auto r = run({"estimate"}, c.text);
    CHECK(r.code == kExitInput);
    CHECK(r.err.find(c.field) != std::string::npos);
  }
}

TEST_CASE("usage and argument errors exit 2") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"simulate", "--xi", "0.8,0.8,0.8", "--N", "10"}).code == kExitInput);
  CHECK(run({"simulate", "--xi", "0.1,0.1", "--N", "10"}).code == kExitInput);
  CHECK(run({"simulate", "--xi", "0.1,0.1,0.1", "--N", "0"}).code == kExitInput);
  CHECK(run({"simulate", "--xi", "0.1,0.1,0.1", "--N", "10", "--mode", "randomized", "--s",
             "0,1,1"})
            .code == kExitInput);
  CHECK(run({"simulate", "--xi", "0.1,0.1,0.1", "--N", "10", "--mode", "sideways"}).code ==
        kExitInput);
  CHECK(run({"trajectories", "--plane", "xi3xi4"}).code == kExitInput);
  CHECK(run({"trajectories", "--s", "1,-1,1"}).code == kExitInput);
  CHECK(run({"estimate", "--in", "/nonexistent/counts.csv"}).code == kExitInput);

  const auto bad_suite = run({"check", "--suite", "everything"});
  CHECK(bad_suite.code == kExitInput);
  CHECK(bad_suite.err.find("Usage") != std::string::npos);

  const auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
  const std::vector<std::string> args{"simulate", "--xi",  "0.3,-0.2,0.5", "--mode", "randomized",
                                      "--s",      "5,3,2", "--N",          "1000",   "--seed",
                                      "2024"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(parse_counts(a.out) == CountRecord({340, 182}, {122, 162}, {151, 43}));

  auto other = args;
  other.back() = "2025";
  CHECK(run(other).out != a.out);

  const auto csv = run({"simulate", "--xi", "0.3,-0.2,0.5", "--N", "1000", "--seed", "2024",
                        "--format", "csv"});
  CHECK(csv.out == "axis,n_plus,n_minus\n1,632,368\n2,381,619\n3,756,244\n");
}

TEST_CASE("--out writes to a file") {
  const std::string path = "test_cli_out.json";
  std::remove(path.c_str());
  const auto r = run({"simulate", "--xi", "0,0,1", "--N", "50", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream file(path);
  const std::string text{std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  CHECK(parse_counts(text).axis(2).n_minus == 0);
  std::remove(path.c_str());
}

TEST_CASE("trajectory lattice keeps only exterior starts") {
  CHECK(lattice_starts(Plane::xi1xi2, 2).size() == 4);
  CHECK(lattice_starts(Plane::xi2xi3, 4).size() == 12);
  for (const auto& p : lattice_starts(Plane::xi1xi3, 7)) {
    CHECK(norm_squared(p) > 1.0);
    CHECK(p[1] == 0.0);
  }

  const auto r = run({"trajectories", "--plane", "xi1xi3", "--grid", "4", "--samples", "20", "--s",
                      "2,1,1"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  CHECK(rows.size() == 12 * 20);
  for (const auto& row : rows) {
    CHECK(row[3] == 0.0);
    if (row[1] == 19) {
      CHECK(std::abs(row[2] * row[2] + row[4] * row[4] - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("heavier weight on an axis pins that coordinate closer to the estimate") {
  const auto endpoint = [](const std::string& s) {
    const auto r = run({"trajectories", "--start", "0.9,0.9,0", "--s", s, "--samples", "30"});
    REQUIRE(r.code == 0);
    return csv_rows(r.out).back();
  };
  const auto weighted = endpoint("5,1,1");
  const auto equal = endpoint("1,1,1");
  CHECK(std::abs(0.9 - weighted[2]) < std::abs(0.9 - equal[2]));
  CHECK(std::abs(weighted[2] - 0.85373261858921892) < 1e-12);
  CHECK(std::abs(equal[2] - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("bench reports both methods and agrees with the oracle") {
  const auto r = run({"bench", "--trials", "3", "--seed", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("method,trials,mean_ms,median_ms,max_discrepancy\nprojection,3,", 0) == 0);
  CHECK(r.out.find("\noracle,3,") != std::string::npos);
  CHECK(run_benchmark(2, 5).max_discrepancy < kBenchDiscrepancyLimit);
  CHECK_THROWS_AS((void)run_benchmark(0, 5), DomainError);
}

TEST_CASE("check prints one line per invariant") {
  const auto r = run({"check", "--suite", "infogeo", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS canonical divergence equals KL (k=3)") != std::string::npos);
}
