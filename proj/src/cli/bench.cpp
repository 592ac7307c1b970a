#include "blochmle/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>

#include "blochmle/errors.hpp"
#include "blochmle/io.hpp"
#include "blochmle/projector.hpp"
#include "blochmle/sampling.hpp"

namespace blochmle {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

MethodTiming summarize(std::vector<double> ms) {
  MethodTiming t;
  double sum = 0.0;
  for (double v : ms) sum += v;
  t.mean_ms = sum / static_cast<double>(ms.size());
  std::sort(ms.begin(), ms.end());
  const std::size_t n = ms.size();
  t.median_ms = n % 2 == 1 ? ms[n / 2] : 0.5 * (ms[n / 2 - 1] + ms[n / 2]);
  return t;
}

}  // namespace

double BenchSummary::speedup() const { return oracle.mean_ms / projection.mean_ms; }

BenchSummary run_benchmark(int trials, std::uint64_t seed, const OracleConfig& cfg) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  cfg.validate();
  InstanceSampler sampler(seed);
  const WeightVector s;
  BenchSummary summary;
  std::vector<double> projection_ms;
  std::vector<double> oracle_ms;

  for (int t = 0; t < trials; ++t) {
    const StokesVector xi_hat = sampler.exterior();

    auto start = Clock::now();
    const auto projected = project_mle(xi_hat, s);
    const double p_ms = elapsed_ms(start);

    start = Clock::now();
    const auto searched = oracle_mle(xi_hat, s, cfg);
    const double o_ms = elapsed_ms(start);

    double d = 0.0;
    for (std::size_t i = 0; i < kAxes; ++i) d = std::max(d, std::abs(projected.xi_star[i] - searched[i]));
    summary.trials.push_back({p_ms, o_ms, d});
    summary.max_discrepancy = std::max(summary.max_discrepancy, d);
    projection_ms.push_back(p_ms);
    oracle_ms.push_back(o_ms);
  }
  summary.projection = summarize(std::move(projection_ms));
  summary.oracle = summarize(std::move(oracle_ms));
  return summary;
}

std::string format_bench_csv(const BenchSummary& summary) {
  std::string out = "method,trials,mean_ms,median_ms,max_discrepancy\n";
  const auto row = [&](const char* name, const MethodTiming& t) {
    out += fmt::format("{},{},{},{},{}\n", name, summary.trials.size(), format_real(t.mean_ms),
                       format_real(t.median_ms), format_real(summary.max_discrepancy));
  };
  row("projection", summary.projection);
  row("oracle", summary.oracle);
  return out;
}

}  // namespace blochmle
