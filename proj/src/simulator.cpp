#include "blochmle/simulator.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <type_traits>

#include "blochmle/errors.hpp"

namespace blochmle {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kRandomizedStream = 3;

class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

double plus_probability(double xi) { return std::clamp(0.5 * (1.0 + xi), 0.0, 1.0); }

CountRecord run(const SimulationSpec& spec, const StandardMode& mode) {
  std::array<AxisCounts, kAxes> axes{};
  for (std::size_t i = 0; i < kAxes; ++i) {
    UniformStream stream(substream_seed(spec.seed, i));
    const double p = plus_probability(spec.xi_true[i]);
    for (std::int64_t shot = 0; shot < mode.shots_per_axis; ++shot) {
      if (stream.next() < p) {
        ++axes[i].n_plus;
      } else {
        ++axes[i].n_minus;
      }
    }
  }
  return CountRecord(axes);
}

CountRecord run(const SimulationSpec& spec, const RandomizedMode& mode) {
  std::array<double, 6> cdf{};
  std::size_t last_positive = 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < kAxes; ++i) {
    const double p = plus_probability(spec.xi_true[i]);
    const double plus = mode.s[i] * p;
    const double minus = mode.s[i] * (1.0 - p);
    acc += plus;
    cdf[2 * i] = acc;
    if (plus > 0.0) last_positive = 2 * i;
    acc += minus;
    cdf[2 * i + 1] = acc;
    if (minus > 0.0) last_positive = 2 * i + 1;
  }

  std::array<std::int64_t, 6> tally{};
  UniformStream stream(substream_seed(spec.seed, kRandomizedStream));
  for (std::int64_t shot = 0; shot < mode.total_shots; ++shot) {
    const double u = stream.next();
    std::size_t outcome = last_positive;
    for (std::size_t w = 0; w < 6; ++w) {
      if (u < cdf[w]) {
        outcome = w;
        break;
      }
    }
    ++tally[outcome];
  }
  return CountRecord(AxisCounts{tally[0], tally[1]}, AxisCounts{tally[2], tally[3]},
                     AxisCounts{tally[4], tally[5]});
}

}  // namespace

void SimulationSpec::validate() const {
  if (norm_squared(xi_true) > 1.0 + kNormSlack) {
    throw DomainError("simulate: true Stokes vector lies outside the Bloch ball");
  }
  std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, StandardMode>) {
          if (m.shots_per_axis < 1) throw DomainError("simulate: N must be at least 1");
        } else {
          if (m.total_shots < 1) throw DomainError("simulate: N must be at least 1");
        }
      },
      mode);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + (stream + 1) * kGolden);
}

CountRecord simulate(const SimulationSpec& spec) {
  spec.validate();
  return std::visit([&](const auto& m) { return run(spec, m); }, spec.mode);
}

}  // namespace blochmle
