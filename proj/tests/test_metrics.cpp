#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "attainkit/metrics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace attainkit;

namespace {

TimeGrid full_grid(EvalCount t_max) {
  std::vector<EvalCount> ts;
  for (EvalCount t = 1; t <= t_max; ++t) ts.push_back(t);
  return TimeGrid(std::move(ts));
}

}  // namespace

TEST_CASE("ecdf_targets on the fixture") {
  const auto ds = fixtures::three_run_dataset();
  const TargetSet z({2.0, 4.0, 6.0, 8.0, 10.0});
  const auto curve = ecdf_targets(ds, z, full_grid(8));
  CHECK(curve.values[3] == doctest::Approx(10.0 / 15.0).epsilon(1e-15));  // t = 4

  CHECK(ecdf_targets(ds, TargetSet({10.0}), full_grid(8)).values[0] == 1.0);
  CHECK(ecdf_targets(ds, TargetSet({0.5}), full_grid(8)).values.back() == 0.0);

  SUBCASE("matches the double-sum oracle on random data") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const auto rds = oracle::random_dataset(seed);
      oracle::Rng rng(seed * 77 + 1);
      std::vector<double> targets;
      const int m = static_cast<int>(rng.uniform_int(1, 20));
      for (int j = 0; j < m; ++j)
        targets.push_back(rds.scale().axis_min() +
                          rds.scale().axis_range() * rng.uniform());
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      const TargetSet ts(targets);
      const auto curve = ecdf_targets(rds, ts, full_grid(rds.t_max()));
      for (EvalCount t = 1; t <= rds.t_max(); ++t)
        CHECK(curve.values[static_cast<std::size_t>(t - 1)] ==
              doctest::Approx(oracle::ecdf_targets_naive(rds, targets, t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("ecdf_eaf on the fixture") {
  const auto ds = fixtures::three_run_dataset();
  const auto curve = ecdf_eaf(ds, full_grid(8));
  CHECK(curve.values[3] == doctest::Approx(0.5).epsilon(1e-15));  // t = 4

  SUBCASE("unattained start and converged end") {
    std::vector<Run> runs;
    runs.emplace_back("a", std::vector<TrajectoryPoint>{{5, 0.0}}, 10);
    const AlgorithmDataset late("late", "f", 2, std::move(runs), fixtures::linear_scale());
    const auto c = ecdf_eaf(late, full_grid(10));
    CHECK(c.values[0] == 0.0);   // nothing evaluated yet
    CHECK(c.values[9] == 1.0);   // at z_min
  }
  SUBCASE("curves stay in [0,1] and non-decreasing") {
    for (std::uint64_t seed = 30; seed <= 55; ++seed) {
      const auto rds = oracle::random_dataset(seed);
      for (const auto& curve2 :
           {ecdf_eaf(rds, full_grid(rds.t_max())),
            ecdf_targets(rds, TargetSet::equally_spaced(7, rds.scale()),
                         full_grid(rds.t_max()))}) {
        double prev = 0.0;
        for (const double v : curve2.values) {
          CHECK(v >= prev);
          CHECK(v <= 1.0);
          prev = v;
        }
      }
    }
  }
}

TEST_CASE("summation swap: target ECDF equals the mean EAF at the targets") {
  const auto ds = fixtures::three_run_dataset();
  const TargetSet z({2.0, 4.0, 6.0, 8.0, 10.0});
  CHECK(ecdf_identity_mean_eaf(ds, z, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  SUBCASE("|Z| = 1 reduces to a point query") {
    const auto surface = compute_eaf(ds);
    CHECK(ecdf_identity_mean_eaf(surface, TargetSet({5.0}), 4) == surface.value(4, 5.0));
  }
  SUBCASE("r = 1 reduces to the fraction of targets attained by the run") {
    std::vector<Run> runs;
    runs.emplace_back("0:1", fixtures::three_run_points()[0], 8);
    const AlgorithmDataset solo("solo", "f1", 2, std::move(runs), fixtures::linear_scale());
    // V(3) = 4 attains 4 of the 5 targets
    CHECK(ecdf_identity_mean_eaf(solo, z, 3) == doctest::Approx(0.8).epsilon(1e-15));
  }
  SUBCASE("identity holds within 1e-12 on random datasets and target sets") {
    for (std::uint64_t seed = 60; seed <= 85; ++seed) {
      const auto rds = oracle::random_dataset(seed);
      const auto surface = compute_eaf(rds);
      oracle::Rng rng(seed * 101 + 7);
      std::vector<double> targets;
      const int m = static_cast<int>(rng.uniform_int(1, 20));
      for (int j = 0; j < m; ++j)
        targets.push_back(rds.scale().axis_min() + rds.scale().axis_range() * rng.uniform());
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      const TargetSet ts(targets);
      const auto curve = ecdf_targets(rds, ts, full_grid(rds.t_max()));
      for (EvalCount t = 1; t <= rds.t_max(); ++t)
        CHECK(std::abs(curve.values[static_cast<std::size_t>(t - 1)] -
                       ecdf_identity_mean_eaf(surface, ts, t)) <= 1e-12);
    }
  }
}

TEST_CASE("aocc of the fixture runs") {
  const auto scale = fixtures::linear_scale();
  const auto lists = fixtures::three_run_points();
  CHECK(aocc(Run("r1", lists[0], 8), scale) == 38.0);
  CHECK(aocc(Run("r2", lists[1], 8), scale) == 35.0);
  CHECK(aocc(Run("r3", lists[2], 8), scale) == 34.0);

  SUBCASE("instant optimum gives the maximal area") {
    CHECK(aocc(Run("best", {{1, 0.0}}, 8), scale) == 70.0);
  }
  SUBCASE("a run that never attains z_max scores zero") {
    CHECK(aocc(Run("worst", {{1, 50.0}, {4, 20.0}}, 8), scale) == 0.0);
  }
  SUBCASE("matches the per-budget loop oracle") {
    for (std::uint64_t seed = 90; seed <= 120; ++seed) {
      const auto rds = oracle::random_dataset(seed);
      for (const auto& run : rds.runs())
        CHECK(aocc(run, rds.scale()) ==
              doctest::Approx(oracle::aocc_naive(run, rds.scale())).epsilon(1e-12));
    }
  }
}

TEST_CASE("anytime_scores on the fixture") {
  const auto s = anytime_scores(fixtures::three_run_dataset());
  CHECK(s.per_run_aocc == std::vector<double>{38.0, 35.0, 34.0});
  CHECK(s.mean_aocc == doctest::Approx(107.0 / 3.0).epsilon(1e-15));
  CHECK(s.auc_eaf == doctest::Approx(107.0 / 30.0).epsilon(1e-15));
  CHECK(s.auc_normalized == doctest::Approx(107.0 / 210.0).epsilon(1e-15));

  SUBCASE("instant optimum normalizes to 1") {
    std::vector<Run> runs;
    runs.emplace_back("a", std::vector<TrajectoryPoint>{{1, 0.0}}, 8);
    const AlgorithmDataset ds("x", "f", 2, std::move(runs), fixtures::linear_scale());
    CHECK(anytime_scores(ds).auc_normalized == 1.0);
  }
  SUBCASE("auc_eaf equals the unit-step integral of ecdf_eaf") {
    for (std::uint64_t seed = 130; seed <= 150; ++seed) {
      const auto rds = oracle::random_dataset(seed);
      const auto curve = ecdf_eaf(rds, full_grid(rds.t_max()));
      double integral = 0.0;
      for (EvalCount t = 1; t <= rds.t_max() - 1; ++t)
        integral += curve.values[static_cast<std::size_t>(t - 1)];
      CHECK(anytime_scores(rds).auc_eaf == doctest::Approx(integral).epsilon(1e-12));
    }
  }
}

TEST_CASE("AUC triple equality: hypervolume = mean AOCC = range * auc_eaf") {
  const auto ds = fixtures::three_run_dataset();
  CHECK(auc_via_hypervolume(ds) == doctest::Approx(107.0 / 3.0).epsilon(1e-15));

  SUBCASE("r = 1 reduces to the single run's AOCC") {
    std::vector<Run> runs;
    runs.emplace_back("0:1", fixtures::three_run_points()[0], 8);
    const AlgorithmDataset solo("solo", "f1", 2, std::move(runs), fixtures::linear_scale());
    CHECK(auc_via_hypervolume(solo) == 38.0);
  }
  SUBCASE("triple equality within 1e-9 relative on random datasets") {
    for (std::uint64_t seed = 160; seed <= 190; ++seed) {
      const auto rds = oracle::random_dataset(seed);
      const auto s = anytime_scores(rds);
      const double hv = auc_via_hypervolume(rds);
      CHECK(hv == doctest::Approx(s.mean_aocc).epsilon(1e-9));
      CHECK(hv == doctest::Approx(s.auc_eaf * rds.scale().axis_range()).epsilon(1e-9));
    }
  }
  SUBCASE("matches the dense Riemann-sum oracle") {
    for (std::uint64_t seed = 200; seed <= 210; ++seed) {
      const auto rds = oracle::random_dataset(seed, 4, 12, 40);
      CHECK(auc_via_hypervolume(rds) ==
            doctest::Approx(oracle::auc_riemann_naive(rds)).epsilon(1e-6));
    }
  }
}

TEST_CASE("auc_targets") {
  const auto ds = fixtures::three_run_dataset();
  const TargetSet z({2.0, 4.0, 6.0, 8.0, 10.0});
  // sum over (run, target) of attained unit steps is 68 (26 + 21 + 21)
  CHECK(auc_targets(ds, z) == doctest::Approx(68.0 / 105.0).epsilon(1e-15));

  SUBCASE("all targets at t = 1 give 1; unattainable targets give 0") {
    std::vector<Run> runs;
    runs.emplace_back("a", std::vector<TrajectoryPoint>{{1, 0.0}}, 8);
    const AlgorithmDataset best("x", "f", 2, std::move(runs), fixtures::linear_scale());
    CHECK(auc_targets(best, z) == 1.0);
    CHECK(auc_targets(ds, TargetSet({0.5})) == 0.0);
  }
  SUBCASE("matches a brute-force double loop") {
    for (std::uint64_t seed = 220; seed <= 240; ++seed) {
      const auto rds = oracle::random_dataset(seed);
      const auto ts = TargetSet::equally_spaced(9, rds.scale());
      double acc = 0.0;
      for (EvalCount t = 1; t <= rds.t_max() - 1; ++t)
        acc += oracle::ecdf_targets_naive(rds, ts.values(), t);
      acc /= static_cast<double>(rds.t_max() - 1);
      CHECK(auc_targets(rds, ts) == doctest::Approx(acc).epsilon(1e-12));
    }
  }
}

TEST_CASE("Riemann convergence of the target-based ECDF") {
  // Targets equally spaced over the axis, first target at z_max: the gap to
  // the EAF-based ECDF is bounded by 2/(|Z|-1) and shrinks as |Z| grows.
  for (std::uint64_t seed = 250; seed <= 262; ++seed) {
    const auto rds = oracle::random_dataset(seed);
    const auto grid = full_grid(rds.t_max());
    const auto eaf_curve = ecdf_eaf(rds, grid);
    double prev_max = 2.0;
    for (const int m : {5, 10, 25, 51, 101}) {
      const auto ts = TargetSet::equally_spaced(m, rds.scale());
      const auto tgt_curve = ecdf_targets(rds, ts, grid);
      double max_diff = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        max_diff = std::max(max_diff, std::abs(tgt_curve.values[i] - eaf_curve.values[i]));
      CHECK(max_diff <= 2.0 / (m - 1));
      CHECK(max_diff <= prev_max + 1e-15);
      prev_max = max_diff;
    }
  }
}

TEST_CASE("exact-target data makes the target-based ECDF an overestimate") {
  // Values sitting exactly on equally spaced targets, z_max equal to the
  // first (easiest) target.
  std::vector<std::vector<TrajectoryPoint>> lists = {
      {{1, 10.0}, {3, 8.0}, {5, 4.0}, {9, 2.0}},
      {{2, 8.0}, {4, 6.0}, {7, 0.0}},
      {{1, 6.0}, {8, 4.0}, {12, 2.0}}};
  std::vector<Run> runs;
  for (std::size_t i = 0; i < lists.size(); ++i)
    runs.emplace_back("0:" + std::to_string(i + 1), lists[i], 16);
  const AlgorithmDataset ds("grid", "f", 2, std::move(runs), fixtures::linear_scale());
  const TargetSet z({0.0, 2.0, 4.0, 6.0, 8.0, 10.0});
  const auto grid = full_grid(16);
  const auto tgt = ecdf_targets(ds, z, grid);
  const auto eaf = ecdf_eaf(ds, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(tgt.values[i] >= eaf.values[i] - 1e-15);
}

TEST_CASE("auc_eaf_on_grid is a left-step approximation") {
  const auto ds = fixtures::three_run_dataset();
  const auto exact = anytime_scores(ds).auc_eaf;
  CHECK(auc_eaf_on_grid(ds, full_grid(8)) == doctest::Approx(exact).epsilon(1e-15));
  // the left-step sum underestimates a non-decreasing curve
  const double coarse = auc_eaf_on_grid(ds, TimeGrid({1, 4, 8}));
  CHECK(coarse <= exact);
  CHECK_THROWS_AS(auc_eaf_on_grid(ds, TimeGrid({2, 8})), std::invalid_argument);
}

TEST_CASE("vorobev_expectation") {
  SUBCASE("fixture picks level 2/3 with staircase AOCC 36") {
    const auto [level, curve] = vorobev_expectation(fixtures::three_run_dataset());
    CHECK(level == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    double area = 0.0;
    for (EvalCount t = 1; t <= 7; ++t) {
      const double v = step_value(curve, t);
      if (std::isfinite(v)) area += 10.0 - v;
    }
    CHECK(area == 36.0);
  }
  SUBCASE("r = 1 returns the run itself") {
    std::vector<Run> runs;
    runs.emplace_back("0:1", fixtures::three_run_points()[0], 8);
    const AlgorithmDataset solo("solo", "f1", 2, std::move(runs), fixtures::linear_scale());
    const auto [level, curve] = vorobev_expectation(solo);
    CHECK(level == 1.0);
    CHECK(curve.time_axis.values() == std::vector<EvalCount>{1, 3, 6});
    CHECK(curve.values == std::vector<double>{8.0, 4.0, 2.0});
  }
  SUBCASE("identical runs tie-break to the lowest level and match mean AOCC exactly") {
    std::vector<Run> runs;
    for (int i = 0; i < 4; ++i)
      runs.emplace_back("0:" + std::to_string(i + 1), fixtures::three_run_points()[0], 8);
    const AlgorithmDataset same("same", "f1", 2, std::move(runs), fixtures::linear_scale());
    const auto [level, curve] = vorobev_expectation(same);
    CHECK(level == 0.25);
    double area = 0.0;
    for (EvalCount t = 1; t <= 7; ++t) {
      const double v = step_value(curve, t);
      if (std::isfinite(v)) area += 10.0 - v;
    }
    CHECK(area == anytime_scores(same).mean_aocc);
  }
}
