// Ten synthetic algorithms with interleaved convergence profiles, built for
// the ranking-sensitivity checks: all algorithms follow one template
// trajectory with small per-algorithm time/value jitter, so their true
// anytime scores are close and coarse target grids scramble the order.

#ifndef ATTAINKIT_TESTS_RANKING_FIXTURE_HPP
#define ATTAINKIT_TESTS_RANKING_FIXTURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "attainkit/core.hpp"
#include "oracles.hpp"

namespace fixtures {

inline std::vector<attainkit::AlgorithmDataset> ranking_sensitivity_suite(
    std::uint64_t seed, int algorithms = 10, int runs_per_algorithm = 3) {
  using namespace attainkit;
  const EvalCount t_max = 1000;
  const int events = 30;
  const QualityScale scale(ScaleKind::linear, 0.0, 1.0);

  // shared template trajectory: event times spread log-ish over the budget
  std::vector<double> base_times(events);
  std::vector<double> base_values(events);
  for (int k = 0; k < events; ++k) {
    base_times[k] = std::pow(static_cast<double>(t_max),
                             static_cast<double>(k + 1) / events);
    base_values[k] = std::exp(-0.14 * (k + 1));
  }

  std::vector<AlgorithmDataset> suite;
  for (int a = 0; a < algorithms; ++a) {
    std::vector<Run> runs;
    for (int run = 0; run < runs_per_algorithm; ++run) {
      oracle::Rng rng(seed * 100003ull + static_cast<std::uint64_t>(a) * 1009ull +
                      static_cast<std::uint64_t>(run));
      std::vector<TrajectoryPoint> points{{1, 1.0}};
      for (int k = 0; k < events; ++k) {
        const double tj = base_times[k] * (1.0 + 0.25 * (2.0 * rng.uniform() - 1.0));
        const double vj = base_values[k] * (1.0 + 0.10 * (2.0 * rng.uniform() - 1.0));
        const auto t = static_cast<EvalCount>(
            std::clamp<double>(std::llround(tj), 2.0, static_cast<double>(t_max)));
        points.push_back({t, vj});
      }
      runs.emplace_back("0:" + std::to_string(run + 1), std::move(points), t_max);
    }
    suite.emplace_back("algo" + std::string(1, static_cast<char>('A' + a)), "f1", 2,
                       std::move(runs), scale);
  }
  return suite;
}

}  // namespace fixtures

#endif  // ATTAINKIT_TESTS_RANKING_FIXTURE_HPP
