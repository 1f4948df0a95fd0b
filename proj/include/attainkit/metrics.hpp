/**
 * @file metrics.hpp
 * @brief Anytime-performance metrics: target-based and EAF-based ECDF
 *        curves, AOCC, the equivalent AUC formulations, and the Vorob'ev
 *        expectation.
 *
 * Time integrals are exact unit-step sums over t = 1 .. t_max - 1; the
 * log-spaced presentation grids never enter a score. All quality arithmetic
 * happens on the analysis axis of the dataset's QualityScale.
 */

#ifndef ATTAINKIT_METRICS_HPP
#define ATTAINKIT_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "attainkit/core.hpp"
#include "attainkit/eaf.hpp"

namespace attainkit {

/// Scalar anytime scores of one dataset.
struct AnytimeScores {
  std::vector<double> per_run_aocc;  ///< AOCC of each run, in run order
  double mean_aocc = 0.0;            ///< arithmetic mean of per_run_aocc
  double auc_eaf = 0.0;              ///< mean_aocc / (axis_max - axis_min)
  double auc_normalized = 0.0;       ///< auc_eaf / (t_max - 1), in [0, 1]
};

/**
 * @brief Target-based ECDF: fraction of (run, target) pairs attained by budget t.
 */
inline CurveSeries ecdf_targets(const AlgorithmDataset& dataset, const TargetSet& targets,
                                const TimeGrid& grid) {
  targets.validate_within(dataset.scale());
  const auto& zs = targets.values();
  const int r = dataset.run_count();
  std::vector<double> out;
  out.reserve(grid.size());
  for (const EvalCount t : grid.values()) {
    long long attained = 0;
    for (int i = 0; i < r; ++i) {
      const double v = dataset.value_on_axis(static_cast<std::size_t>(i), t);
      attained += zs.end() - std::lower_bound(zs.begin(), zs.end(), v);
    }
    out.push_back(static_cast<double>(attained) /
                  (static_cast<double>(r) * static_cast<double>(zs.size())));
  }
  return CurveSeries(grid, std::move(out));
}

/**
 * @brief EAF-based ECDF: normalized area under the EAF over the quality axis
 *        at each budget, computed through the per-run form
 *        (1/r) * sum_i (axis_max - V_i(t)) / (axis_max - axis_min).
 */
inline CurveSeries ecdf_eaf(const AlgorithmDataset& dataset, const TimeGrid& grid) {
  const int r = dataset.run_count();
  const double range = dataset.scale().axis_range();
  std::vector<double> out;
  out.reserve(grid.size());
  for (const EvalCount t : grid.values()) {
    double sum = 0.0;
    for (int i = 0; i < r; ++i) {
      const double v = dataset.value_on_axis(static_cast<std::size_t>(i), t);
      if (std::isfinite(v)) sum += dataset.scale().axis_max() - v;
    }
    out.push_back(sum / (r * range));
  }
  return CurveSeries(grid, std::move(out));
}

/// Mean EAF value over the targets at budget t; identical to the
/// target-based ECDF by a swap of summation order.
inline double ecdf_identity_mean_eaf(const EafSurface& surface, const TargetSet& targets,
                                     EvalCount t) {
  double sum = 0.0;
  for (const double z : targets.values()) sum += surface.value(t, z);
  return sum / static_cast<double>(targets.size());
}

inline double ecdf_identity_mean_eaf(const AlgorithmDataset& dataset, const TargetSet& targets,
                                     EvalCount t) {
  targets.validate_within(dataset.scale());
  return ecdf_identity_mean_eaf(compute_eaf(dataset), targets, t);
}

/**
 * @brief Area over the convergence curve of one run:
 *        sum over t = 1 .. t_max-1 of max(0, axis_max - V(t)) on the
 *        analysis axis. Budgets before the first improvement contribute 0.
 */
inline double aocc(const Run& run, const QualityScale& scale) {
  return area_over_staircase(detail::scaled_staircase(run, scale), run.t_max(),
                             scale.axis_max());
}

/// Per-run AOCCs, their mean, and the equivalent AUC values of the dataset.
inline AnytimeScores anytime_scores(const AlgorithmDataset& dataset) {
  AnytimeScores s;
  s.per_run_aocc.reserve(dataset.runs().size());
  for (const auto& run : dataset.runs())
    s.per_run_aocc.push_back(aocc(run, dataset.scale()));
  double total = 0.0;
  for (const double a : s.per_run_aocc) total += a;
  s.mean_aocc = total / static_cast<double>(s.per_run_aocc.size());
  s.auc_eaf = s.mean_aocc / dataset.scale().axis_range();
  const EvalCount t_max = dataset.t_max();
  s.auc_normalized = t_max > 1 ? s.auc_eaf / static_cast<double>(t_max - 1) : 0.0;
  return s;
}

/**
 * @brief AUC via the hypervolume route: Lebesgue integral of the EAF taken
 *        level by level over the computed surface, i.e. the volume dominated
 *        by {(t, z, 1 - EAF(t, z))} under the reference (t_max, axis_max, 1).
 *
 * Equals the mean AOCC of the runs; the two are computed from independent
 * representations (staircase levels here, raw trajectories in aocc), which
 * makes the equality a cross-check on compute_eaf.
 */
inline double auc_via_hypervolume(const AlgorithmDataset& dataset) {
  const EafSurface surface = compute_eaf(dataset);
  const int r = surface.run_count();
  double volume = 0.0;
  for (int k = 1; k <= r; ++k)
    volume += area_over_staircase(surface.level(k), surface.t_max(), surface.axis_max());
  return volume / r;
}

/// AUC of the EAF-based ECDF evaluated on a subsampled grid (left-step sum;
/// approximate, for speed — scores should normally use anytime_scores).
inline double auc_eaf_on_grid(const AlgorithmDataset& dataset, const TimeGrid& grid) {
  if (grid.front() != 1 || grid.back() != dataset.t_max())
    throw std::invalid_argument("auc_eaf_on_grid: grid must span [1, t_max]");
  const CurveSeries curve = ecdf_eaf(dataset, grid);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    area += curve.values[i] *
            static_cast<double>(grid.values()[i + 1] - grid.values()[i]);
  return area;
}

/**
 * @brief AUC of the target-based ECDF, exact unit-step sum over every
 *        integer budget, normalized by (t_max - 1) into [0, 1].
 */
inline double auc_targets(const AlgorithmDataset& dataset, const TargetSet& targets) {
  targets.validate_within(dataset.scale());
  const auto& zs = targets.values();
  const EvalCount t_max = dataset.t_max();
  if (t_max < 2) return 0.0;
  long long attained_steps = 0;  // sum over (run, target) of #budgets attaining it
  for (const auto& run : dataset.runs()) {
    const auto stairs = detail::scaled_staircase(run, dataset.scale());
    for (const double z : zs) {
      // First breakpoint reaching the target; staircase z is strictly decreasing.
      auto it = std::partition_point(stairs.begin(), stairs.end(),
                                     [z](const Breakpoint& b) { return b.z > z; });
      if (it == stairs.end()) continue;
      attained_steps += std::max<EvalCount>(0, t_max - it->t);
    }
  }
  return static_cast<double>(attained_steps) /
         (static_cast<double>(dataset.run_count()) * static_cast<double>(zs.size()) *
          static_cast<double>(t_max - 1));
}

/**
 * @brief Vorob'ev expectation: the EAF quantile curve whose AOCC is closest
 *        to the mean AOCC of the runs; the "mean" convergence curve.
 *
 * Searches the r discrete levels k/r; ties break toward the smaller k.
 */
inline std::pair<double, CurveSeries> vorobev_expectation(const AlgorithmDataset& dataset) {
  const EafSurface surface = compute_eaf(dataset);
  const double mean = anytime_scores(dataset).mean_aocc;
  const int r = surface.run_count();
  int best_k = 1;
  double best_diff = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= r; ++k) {
    const double a = area_over_staircase(surface.level(k), surface.t_max(), surface.axis_max());
    const double diff = std::abs(a - mean);
    if (diff < best_diff) {
      best_diff = diff;
      best_k = k;
    }
  }
  return {static_cast<double>(best_k) / r, level_set(surface, static_cast<double>(best_k) / r)};
}

}  // namespace attainkit

#endif  // ATTAINKIT_METRICS_HPP
