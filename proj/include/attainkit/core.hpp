/**
 * @file core.hpp
 * @brief Shared domain types for anytime-performance analysis of
 *        single-objective black-box optimizers.
 *
 * A Run is one optimizer trajectory stored as its strict best-so-far
 * improvements over integer evaluation counts. An AlgorithmDataset bundles
 * the runs of one algorithm on one (function, dimension) scope together
 * with the QualityScale that maps raw objective values onto the analysis
 * axis (clip to [z_min, z_max], optionally log10).
 */

#ifndef ATTAINKIT_CORE_HPP
#define ATTAINKIT_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace attainkit {

/// Evaluation counts are 1-based integers.
using EvalCount = std::int64_t;

/// Sentinel for "not yet attained" on the analysis axis.
inline constexpr double kUnattained = std::numeric_limits<double>::infinity();

/// One recorded improvement: best-so-far value z first reached at evaluation t.
struct TrajectoryPoint {
  EvalCount t = 0;
  double z = 0.0;

  bool operator==(const TrajectoryPoint&) const = default;
};

enum class ScaleKind { linear, log10 };

/**
 * @brief Transform from raw objective values to the analysis axis.
 *
 * apply() clips into [z_min, z_max] and, for log10 scales, returns the
 * log-precision log10(clip(z)). The transform is monotone non-decreasing
 * and clipping is idempotent.
 */
class QualityScale {
 public:
  /// Defaults follow continuous-benchmarking practice: log10 scale on [1e-8, 1e2].
  QualityScale() : QualityScale(ScaleKind::log10, 1e-8, 1e2) {}

  QualityScale(ScaleKind kind, double z_min, double z_max)
      : kind_(kind), z_min_(z_min), z_max_(z_max) {
    if (!std::isfinite(z_min) || !std::isfinite(z_max) || !(z_min < z_max))
      throw std::invalid_argument("QualityScale: requires finite z_min < z_max");
    if (kind == ScaleKind::log10 && !(z_min > 0.0))
      throw std::invalid_argument("QualityScale: log10 scale requires z_min > 0");
  }

  [[nodiscard]] ScaleKind kind() const { return kind_; }
  [[nodiscard]] double z_min() const { return z_min_; }
  [[nodiscard]] double z_max() const { return z_max_; }

  /// Clip into [z_min, z_max]; infinities clip to the nearer bound.
  [[nodiscard]] double clip(double z) const {
    return std::min(std::max(z, z_min_), z_max_);
  }

  /// Raw objective value -> analysis-axis value.
  [[nodiscard]] double apply(double z) const {
    const double c = clip(z);
    return kind_ == ScaleKind::log10 ? std::log10(c) : c;
  }

  /// Lower end of the analysis axis, apply(z_min).
  [[nodiscard]] double axis_min() const { return apply(z_min_); }
  /// Upper end of the analysis axis, apply(z_max).
  [[nodiscard]] double axis_max() const { return apply(z_max_); }
  /// axis_max() - axis_min(); the normalization constant of the EAF-based ECDF.
  [[nodiscard]] double axis_range() const { return axis_max() - axis_min(); }

  bool operator==(const QualityScale&) const = default;

 private:
  ScaleKind kind_;
  double z_min_;
  double z_max_;
};

/**
 * @brief One optimizer trajectory as a monotone best-so-far step function.
 *
 * Construction cleans raw (t, z) rows: rows are sorted by t, rows with equal
 * t are merged keeping the minimum z, and non-improving rows are dropped, so
 * the stored points are strictly increasing in t and strictly decreasing in
 * z. At least one point must survive. The value before the first recorded
 * point is "not yet attained".
 */
class Run {
 public:
  Run(std::string run_id, std::vector<TrajectoryPoint> raw_points,
      EvalCount t_max, bool extended_to_budget = false)
      : id_(std::move(run_id)),
        t_max_(t_max),
        extended_(extended_to_budget) {
    if (t_max_ < 1)
      throw std::invalid_argument("Run: t_max must be >= 1");
    for (const auto& p : raw_points) {
      if (p.t < 1)
        throw std::invalid_argument("Run '" + id_ + "': evaluation counts must be >= 1");
      if (!std::isfinite(p.z))
        throw std::invalid_argument("Run '" + id_ + "': objective values must be finite");
      if (p.t > t_max_)
        throw std::invalid_argument("Run '" + id_ + "': point beyond t_max");
    }
    std::stable_sort(raw_points.begin(), raw_points.end(),
                     [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                       return a.t != b.t ? a.t < b.t : a.z < b.z;
                     });
    for (const auto& p : raw_points) {
      if (!points_.empty() && points_.back().t == p.t) continue;  // min-z merge
      if (!points_.empty() && !(p.z < points_.back().z)) continue;  // not an improvement
      points_.push_back(p);
    }
    if (points_.empty())
      throw std::invalid_argument("Run '" + id_ + "': no trajectory points");
  }

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const std::vector<TrajectoryPoint>& points() const { return points_; }
  [[nodiscard]] EvalCount t_max() const { return t_max_; }
  /// True when the source data ended before t_max and the last value was carried forward.
  [[nodiscard]] bool extended_to_budget() const { return extended_; }

  /**
   * @brief Raw best-so-far value within the first t evaluations.
   * @return The minimum stored z over points with point.t <= t, or nullopt
   *         when no point has been evaluated yet ("unattained").
   * @throws std::out_of_range for t outside [1, t_max].
   */
  [[nodiscard]] std::optional<double> best_so_far(EvalCount t) const {
    if (t < 1 || t > t_max_)
      throw std::out_of_range("best_so_far: t outside [1, t_max]");
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](EvalCount v, const TrajectoryPoint& p) { return v < p.t; });
    if (it == points_.begin()) return std::nullopt;
    return std::prev(it)->z;
  }

  bool operator==(const Run& other) const {
    return id_ == other.id_ && points_ == other.points_ &&
           t_max_ == other.t_max_ && extended_ == other.extended_;
  }

 private:
  std::string id_;
  std::vector<TrajectoryPoint> points_;
  EvalCount t_max_;
  bool extended_;
};

/// New run truncated to budget t; points beyond t are dropped.
/// @throws std::invalid_argument when no point survives the truncation.
inline Run truncate_to(const Run& run, EvalCount t) {
  if (t < 1) throw std::invalid_argument("truncate_to: t must be >= 1");
  std::vector<TrajectoryPoint> kept;
  for (const auto& p : run.points())
    if (p.t <= t) kept.push_back(p);
  return Run(run.id(), std::move(kept), t, run.extended_to_budget());
}

/**
 * @brief Ordered set of quality targets on the analysis axis.
 *
 * Targets are stored ascending and must be distinct. gap() is the largest
 * gap between neighboring targets in Z united with the axis bounds,
 * including the end gaps to axis_min and axis_max.
 */
class TargetSet {
 public:
  explicit TargetSet(std::vector<double> targets) : targets_(std::move(targets)) {
    if (targets_.empty())
      throw std::invalid_argument("TargetSet: at least one target required");
    std::sort(targets_.begin(), targets_.end());
    for (std::size_t i = 0; i < targets_.size(); ++i) {
      if (!std::isfinite(targets_[i]))
        throw std::invalid_argument("TargetSet: targets must be finite");
      if (i > 0 && !(targets_[i - 1] < targets_[i]))
        throw std::invalid_argument("TargetSet: targets must be distinct");
    }
  }

  /// n targets equally spaced on the analysis axis, spanning [axis_min, axis_max].
  /// For a log10 scale these are equally spaced powers of 10.
  static TargetSet equally_spaced(int n, const QualityScale& scale) {
    if (n < 1) throw std::invalid_argument("TargetSet: n must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(n));
    const double lo = scale.axis_min();
    const double hi = scale.axis_max();
    if (n == 1) {
      v[0] = hi;
    } else {
      const double step = (hi - lo) / (n - 1);
      for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + i * step;
      v.front() = lo;
      v.back() = hi;
    }
    return TargetSet(std::move(v));
  }

  [[nodiscard]] const std::vector<double>& values() const { return targets_; }
  [[nodiscard]] std::size_t size() const { return targets_.size(); }

  /// Largest gap delta(Z) over Z united with {axis_min, axis_max}.
  /// @throws std::invalid_argument when a target lies outside the axis bounds.
  [[nodiscard]] double gap(const QualityScale& scale) const {
    validate_within(scale);
    double g = std::max(targets_.front() - scale.axis_min(),
                        scale.axis_max() - targets_.back());
    for (std::size_t i = 1; i < targets_.size(); ++i)
      g = std::max(g, targets_[i] - targets_[i - 1]);
    return g;
  }

  void validate_within(const QualityScale& scale) const {
    if (targets_.front() < scale.axis_min() - 1e-12 ||
        targets_.back() > scale.axis_max() + 1e-12)
      throw std::invalid_argument("TargetSet: targets outside [z_min, z_max] on the analysis axis");
  }

  bool operator==(const TargetSet&) const = default;

 private:
  std::vector<double> targets_;
};

/// Ordered list of distinct evaluation budgets, strictly increasing.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<EvalCount> budgets) : budgets_(std::move(budgets)) {
    if (budgets_.empty())
      throw std::invalid_argument("TimeGrid: must be non-empty");
    for (std::size_t i = 0; i < budgets_.size(); ++i) {
      if (budgets_[i] < 1)
        throw std::invalid_argument("TimeGrid: budgets must be positive");
      if (i > 0 && !(budgets_[i - 1] < budgets_[i]))
        throw std::invalid_argument("TimeGrid: budgets must be strictly increasing");
    }
  }

  [[nodiscard]] const std::vector<EvalCount>& values() const { return budgets_; }
  [[nodiscard]] std::size_t size() const { return budgets_.size(); }
  [[nodiscard]] EvalCount front() const { return budgets_.front(); }
  [[nodiscard]] EvalCount back() const { return budgets_.back(); }

  bool operator==(const TimeGrid&) const = default;

 private:
  std::vector<EvalCount> budgets_;
};

/**
 * @brief Log-spaced grid of evaluation budgets between 1 and t_max.
 *
 * Produces min(n, t_max) distinct integer budgets, always containing 1 and
 * t_max. Nominal positions are n log10-equispaced values rounded to the
 * nearest integer; rounding collisions are resolved by shifting onto the
 * nearest free integers so that the requested count is kept whenever
 * t_max >= n.
 */
inline TimeGrid log_spaced_grid(EvalCount t_max, int n) {
  if (n < 2 || t_max < 2)
    throw std::invalid_argument("log_spaced_grid: requires n >= 2 and t_max >= 2");
  if (static_cast<EvalCount>(n) >= t_max) {
    std::vector<EvalCount> all(static_cast<std::size_t>(t_max));
    for (EvalCount t = 1; t <= t_max; ++t) all[static_cast<std::size_t>(t - 1)] = t;
    return TimeGrid(std::move(all));
  }
  const double span = std::log10(static_cast<double>(t_max));
  std::vector<EvalCount> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double e = span * i / (n - 1);
    g[static_cast<std::size_t>(i)] =
        static_cast<EvalCount>(std::llround(std::pow(10.0, e)));
  }
  g.front() = 1;
  g.back() = t_max;
  for (std::size_t i = 1; i < g.size(); ++i)          // push collisions up
    g[i] = std::max(g[i], g[i - 1] + 1);
  for (std::size_t i = g.size() - 1; i-- > 0;)        // pull the tail back under t_max
    g[i] = std::min(g[i], g[i + 1] - 1);
  return TimeGrid(std::move(g));
}

/**
 * @brief All runs of one algorithm on one (function, dimension) scope.
 *
 * Every run must share the same budget t_max; datasets with mixed budgets
 * are rejected so that callers harmonize explicitly via truncate_to().
 */
class AlgorithmDataset {
 public:
  AlgorithmDataset(std::string algorithm, std::string function_id, int dimension,
                   std::vector<Run> runs, QualityScale scale)
      : algorithm_(std::move(algorithm)),
        function_id_(std::move(function_id)),
        dimension_(dimension),
        runs_(std::move(runs)),
        scale_(scale) {
    if (dimension_ < 1)
      throw std::invalid_argument("AlgorithmDataset: dimension must be >= 1");
    if (runs_.empty())
      throw std::invalid_argument("AlgorithmDataset: at least one run required");
    for (const auto& r : runs_)
      if (r.t_max() != runs_.front().t_max())
        throw std::invalid_argument(
            "AlgorithmDataset: runs disagree on t_max; use truncate_to() to harmonize");
  }

  [[nodiscard]] const std::string& algorithm() const { return algorithm_; }
  [[nodiscard]] const std::string& function_id() const { return function_id_; }
  [[nodiscard]] int dimension() const { return dimension_; }
  [[nodiscard]] const std::vector<Run>& runs() const { return runs_; }
  [[nodiscard]] const QualityScale& scale() const { return scale_; }
  [[nodiscard]] int run_count() const { return static_cast<int>(runs_.size()); }
  [[nodiscard]] EvalCount t_max() const { return runs_.front().t_max(); }

  /// Scaled best-so-far value of run i at budget t; kUnattained before the first point.
  [[nodiscard]] double value_on_axis(std::size_t i, EvalCount t) const {
    const auto v = runs_[i].best_so_far(t);
    return v ? scale_.apply(*v) : kUnattained;
  }

  bool operator==(const AlgorithmDataset& other) const {
    return algorithm_ == other.algorithm_ && function_id_ == other.function_id_ &&
           dimension_ == other.dimension_ && runs_ == other.runs_ && scale_ == other.scale_;
  }

 private:
  std::string algorithm_;
  std::string function_id_;
  int dimension_;
  std::vector<Run> runs_;
  QualityScale scale_;
};

/// Sampled function of budget -> value, used for ECDF curves, level sets and export.
struct CurveSeries {
  CurveSeries(TimeGrid time_axis, std::vector<double> values)
      : time_axis(std::move(time_axis)), values(std::move(values)) {
    if (this->time_axis.size() != this->values.size())
      throw std::invalid_argument("CurveSeries: axis and value lengths differ");
  }

  TimeGrid time_axis;
  std::vector<double> values;

  bool operator==(const CurveSeries&) const = default;
};

/// Step-function reading of a curve: value of the last grid point <= t,
/// kUnattained before the first one.
inline double step_value(const CurveSeries& curve, EvalCount t) {
  const auto& ts = curve.time_axis.values();
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin()) return kUnattained;
  return curve.values[static_cast<std::size_t>(std::distance(ts.begin(), it) - 1)];
}

}  // namespace attainkit

#endif  // ATTAINKIT_CORE_HPP
