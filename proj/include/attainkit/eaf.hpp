/**
 * @file eaf.hpp
 * @brief Empirical attainment function of a set of runs, as nested staircases.
 *
 * A run attains (t, z) when it reaches a value <= z within the first t
 * evaluations; the EAF at (t, z) is the fraction of runs attaining it. For
 * each level k in 1..r the surface stores the breakpoints of the step
 * function t -> k-th smallest best-so-far value, whose graph is the
 * lower-left boundary of the region attained by at least k runs. Attainment
 * is closed: breakpoints belong to the attained region, so a query exactly
 * on a boundary returns the higher level.
 */

#ifndef ATTAINKIT_EAF_HPP
#define ATTAINKIT_EAF_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "attainkit/core.hpp"

namespace attainkit {

/// Staircase breakpoint on (evaluation count, analysis value) axes.
struct Breakpoint {
  EvalCount t = 0;
  double z = 0.0;

  bool operator==(const Breakpoint&) const = default;
};

/// Opt-in preprocessing that thins each run's staircase before the EAF is
/// built: a point is merged into its predecessor when it arrives within dt
/// evaluations or improves by at most dz on the analysis axis. The default
/// (0, 0) keeps the computation exact; anything else is an approximation.
struct MergeTolerance {
  EvalCount dt = 0;
  double dz = 0.0;
};

/// Value of a staircase at budget t: z of the last breakpoint with
/// breakpoint.t <= t, or kUnattained before the first one.
inline double staircase_value(const std::vector<Breakpoint>& stairs, EvalCount t) {
  auto it = std::upper_bound(stairs.begin(), stairs.end(), t,
                             [](EvalCount v, const Breakpoint& b) { return v < b.t; });
  if (it == stairs.begin()) return kUnattained;
  return std::prev(it)->z;
}

/**
 * @brief Computed EAF of one dataset.
 *
 * Immutable once built; point queries run in O(log r * log n) by binary
 * search over the nested levels.
 */
class EafSurface {
 public:
  [[nodiscard]] int run_count() const { return r_; }
  [[nodiscard]] EvalCount t_max() const { return t_max_; }
  [[nodiscard]] double axis_min() const { return axis_min_; }
  [[nodiscard]] double axis_max() const { return axis_max_; }

  /// Breakpoints of the level-k staircase, k in 1..r.
  [[nodiscard]] const std::vector<Breakpoint>& level(int k) const {
    if (k < 1 || k > r_) throw std::out_of_range("EafSurface::level: k outside [1, r]");
    return levels_[static_cast<std::size_t>(k - 1)];
  }

  [[nodiscard]] const std::vector<std::vector<Breakpoint>>& levels() const { return levels_; }

  /// Number of runs attaining (t, z); the EAF value is this count / r.
  /// @throws std::out_of_range for t outside [1, t_max].
  [[nodiscard]] int attain_count(EvalCount t, double z) const {
    if (t < 1 || t > t_max_)
      throw std::out_of_range("EafSurface: t outside [1, t_max]");
    // Level values at fixed t are non-decreasing in k, so binary search for
    // the deepest attained level.
    int lo = 0;
    int hi = r_;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (staircase_value(levels_[static_cast<std::size_t>(mid - 1)], t) <= z)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  /// EAF value at (t, z), an exact multiple of 1/r in [0, 1].
  [[nodiscard]] double value(EvalCount t, double z) const {
    return static_cast<double>(attain_count(t, z)) / r_;
  }

  /// Total number of stored breakpoints over all levels.
  [[nodiscard]] std::size_t breakpoint_count() const {
    std::size_t n = 0;
    for (const auto& s : levels_) n += s.size();
    return n;
  }

 private:
  friend EafSurface compute_eaf(const AlgorithmDataset&, MergeTolerance);

  int r_ = 0;
  EvalCount t_max_ = 0;
  double axis_min_ = 0.0;
  double axis_max_ = 0.0;
  std::vector<std::vector<Breakpoint>> levels_;
};

namespace detail {

/// Scaled improvement staircase of one run: strictly increasing t, strictly
/// decreasing z after the quality transform (clipping can flatten raw
/// improvements, which are then dropped).
inline std::vector<Breakpoint> scaled_staircase(const Run& run, const QualityScale& scale,
                                                MergeTolerance tol = {}) {
  std::vector<Breakpoint> out;
  for (const auto& p : run.points()) {
    const double z = scale.apply(p.z);
    if (!out.empty() && !(z < out.back().z)) continue;
    out.push_back({p.t, z});
  }
  if ((tol.dt > 0 || tol.dz > 0.0) && out.size() > 1) {
    std::vector<Breakpoint> merged;
    merged.push_back(out.front());
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i].t - merged.back().t <= tol.dt || merged.back().z - out[i].z <= tol.dz)
        continue;
      merged.push_back(out[i]);
    }
    if (merged.back().z > out.back().z) merged.push_back(out.back());  // keep the final best
    out = std::move(merged);
  }
  return out;
}

}  // namespace detail

/**
 * @brief Compute the EAF of a dataset on its analysis axis.
 *
 * Sweeps the pooled improvement points in time order while maintaining the
 * sorted multiset of per-run best values; the level-k staircase records
 * every decrease of the k-th order statistic. O(n log n + r n) for n total
 * improvement points, and the stored surface is at most r * n breakpoints.
 */
inline EafSurface compute_eaf(const AlgorithmDataset& dataset, MergeTolerance tol = {}) {
  const int r = dataset.run_count();
  const QualityScale& scale = dataset.scale();

  struct Event {
    EvalCount t;
    double z;
    int run;
  };
  std::vector<Event> events;
  for (int i = 0; i < r; ++i) {
    const auto stairs =
        detail::scaled_staircase(dataset.runs()[static_cast<std::size_t>(i)], scale, tol);
    for (const auto& b : stairs) events.push_back({b.t, b.z, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.t != b.t ? a.t < b.t : a.z < b.z;
  });

  EafSurface surface;
  surface.r_ = r;
  surface.t_max_ = dataset.t_max();
  surface.axis_min_ = scale.axis_min();
  surface.axis_max_ = scale.axis_max();
  surface.levels_.assign(static_cast<std::size_t>(r), {});

  std::vector<double> current(static_cast<std::size_t>(r), kUnattained);
  std::vector<double> sorted(static_cast<std::size_t>(r), kUnattained);
  std::vector<double> before;

  std::size_t i = 0;
  while (i < events.size()) {
    const EvalCount t = events[i].t;
    before = sorted;
    while (i < events.size() && events[i].t == t) {
      const Event& e = events[i];
      double& cur = current[static_cast<std::size_t>(e.run)];
      if (e.z < cur) {
        sorted.erase(std::lower_bound(sorted.begin(), sorted.end(), cur));
        sorted.insert(std::lower_bound(sorted.begin(), sorted.end(), e.z), e.z);
        cur = e.z;
      }
      ++i;
    }
    for (int k = 0; k < r; ++k) {
      const auto ki = static_cast<std::size_t>(k);
      if (sorted[ki] < before[ki])
        surface.levels_[ki].push_back({t, sorted[ki]});
    }
  }
  return surface;
}

/// Fraction of runs attaining (t, z); free-function form of EafSurface::value.
inline double query_eaf(const EafSurface& surface, EvalCount t, double z) {
  return surface.value(t, z);
}

/// Dense EAF (or EAF-difference) values on a rectangular grid.
struct GridValues {
  GridValues(TimeGrid time_axis, std::vector<double> quality_axis,
             std::vector<std::vector<double>> values)
      : time_axis(std::move(time_axis)),
        quality_axis(std::move(quality_axis)),
        values(std::move(values)) {
    if (this->quality_axis.empty())
      throw std::invalid_argument("GridValues: empty quality axis");
    for (std::size_t j = 1; j < this->quality_axis.size(); ++j)
      if (!(this->quality_axis[j - 1] < this->quality_axis[j]))
        throw std::invalid_argument("GridValues: quality axis must be strictly ascending");
    if (this->values.size() != this->time_axis.size())
      throw std::invalid_argument("GridValues: row count does not match time axis");
    for (const auto& row : this->values)
      if (row.size() != this->quality_axis.size())
        throw std::invalid_argument("GridValues: row length does not match quality axis");
  }

  TimeGrid time_axis;
  std::vector<double> quality_axis;   // ascending analysis-axis values
  std::vector<std::vector<double>> values;  // values[time][quality]

  [[nodiscard]] double at(std::size_t ti, std::size_t qi) const { return values[ti][qi]; }

  bool operator==(const GridValues&) const = default;
};

/**
 * @brief Evaluate the EAF densely on (time_axis x quality_axis).
 *
 * Walks every level staircase once per time column, so the cost is
 * O(r * (|T| + n) + |T| * |Q|) instead of one full query per cell.
 */
inline GridValues eaf_on_grid(const EafSurface& surface, const TimeGrid& time_axis,
                              const std::vector<double>& quality_axis) {
  for (std::size_t j = 1; j < quality_axis.size(); ++j)
    if (!(quality_axis[j - 1] < quality_axis[j]))
      throw std::invalid_argument("eaf_on_grid: quality axis must be sorted ascending");
  if (quality_axis.empty())
    throw std::invalid_argument("eaf_on_grid: empty quality axis");
  if (time_axis.front() < 1 || time_axis.back() > surface.t_max())
    throw std::out_of_range("eaf_on_grid: time axis outside [1, t_max]");

  const int r = surface.run_count();
  const auto T = time_axis.size();
  const auto Q = quality_axis.size();

  // level_vals[k][ti] = staircase value of level k+1 at time_axis[ti]
  std::vector<std::vector<double>> level_vals(
      static_cast<std::size_t>(r), std::vector<double>(T, kUnattained));
  for (int k = 0; k < r; ++k) {
    const auto& stairs = surface.level(k + 1);
    std::size_t si = 0;
    double val = kUnattained;
    for (std::size_t ti = 0; ti < T; ++ti) {
      const EvalCount t = time_axis.values()[ti];
      while (si < stairs.size() && stairs[si].t <= t) val = stairs[si++].z;
      level_vals[static_cast<std::size_t>(k)][ti] = val;
    }
  }

  std::vector<std::vector<double>> vals(T, std::vector<double>(Q, 0.0));
  for (std::size_t ti = 0; ti < T; ++ti) {
    // Both the per-level values (in k) and the quality axis are ascending:
    // advance one shared cursor.
    int k = 0;
    for (std::size_t qi = 0; qi < Q; ++qi) {
      while (k < r && level_vals[static_cast<std::size_t>(k)][ti] <= quality_axis[qi]) ++k;
      vals[ti][qi] = static_cast<double>(k) / r;
    }
  }
  return GridValues(time_axis, quality_axis, std::move(vals));
}

/**
 * @brief Level set of the EAF at probability p: the percentile convergence curve.
 *
 * Returns the staircase of the smallest z attained by at least ceil(p * r)
 * runs within each budget, as breakpoints; read it as a step function whose
 * value before the first breakpoint is "unattained".
 */
inline CurveSeries level_set(const EafSurface& surface, double p) {
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("level_set: p must be in (0, 1]");
  const int r = surface.run_count();
  int k = static_cast<int>(std::ceil(p * r - 1e-9));
  k = std::max(1, std::min(k, r));
  const auto& stairs = surface.level(k);
  std::vector<EvalCount> ts;
  std::vector<double> zs;
  ts.reserve(stairs.size());
  zs.reserve(stairs.size());
  for (const auto& b : stairs) {
    ts.push_back(b.t);
    zs.push_back(b.z);
  }
  return CurveSeries(TimeGrid(std::move(ts)), std::move(zs));
}

/// Unit-step area between a staircase and the axis ceiling over t in
/// [1, t_max - 1]; budgets before the first breakpoint contribute zero.
inline double area_over_staircase(const std::vector<Breakpoint>& stairs, EvalCount t_max,
                                  double axis_max) {
  double area = 0.0;
  for (std::size_t j = 0; j < stairs.size(); ++j) {
    const EvalCount seg_begin = std::max<EvalCount>(stairs[j].t, 1);
    const EvalCount seg_end =
        std::min<EvalCount>((j + 1 < stairs.size() ? stairs[j + 1].t : t_max) - 1, t_max - 1);
    if (seg_end < seg_begin) continue;
    area += static_cast<double>(seg_end - seg_begin + 1) *
            std::max(0.0, axis_max - stairs[j].z);
  }
  return area;
}

}  // namespace attainkit

#endif  // ATTAINKIT_EAF_HPP
