/**
 * @file compare.hpp
 * @brief Pairwise and portfolio EAF comparisons plus AUC-based rankings.
 */

#ifndef ATTAINKIT_COMPARE_HPP
#define ATTAINKIT_COMPARE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "attainkit/core.hpp"
#include "attainkit/eaf.hpp"

namespace attainkit {

namespace detail {

inline void require_compatible(const EafSurface& a, const EafSurface& b) {
  if (a.t_max() != b.t_max())
    throw std::invalid_argument("EAF comparison: surfaces disagree on t_max");
  if (a.axis_min() != b.axis_min() || a.axis_max() != b.axis_max())
    throw std::invalid_argument("EAF comparison: surfaces disagree on quality scale");
}

/// Uniform thinning to at most cap entries, keeping first and last.
template <typename T>
std::vector<T> thin_to(std::vector<T> v, std::size_t cap) {
  if (cap < 2) throw std::invalid_argument("thin_to: cap must be >= 2");
  if (v.size() <= cap) return v;
  std::vector<T> out;
  out.reserve(cap);
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < cap; ++i) {
    const std::size_t idx =
        static_cast<std::size_t>(std::llround(static_cast<double>(i) *
                                              static_cast<double>(m - 1) /
                                              static_cast<double>(cap - 1)));
    out.push_back(v[idx]);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Shared evaluation axes for step-exact difference grids.
struct DiffAxes {
  TimeGrid time_axis;
  std::vector<double> quality_axis;
};

/**
 * @brief Union of the surfaces' breakpoint coordinates, capped per axis.
 *
 * On these axes every surface is piecewise constant between grid lines, so
 * differences evaluated here are exact (until the cap forces thinning).
 */
inline DiffAxes union_breakpoint_axes(const std::vector<const EafSurface*>& surfaces,
                                      std::size_t cap = 2000) {
  if (surfaces.empty())
    throw std::invalid_argument("union_breakpoint_axes: no surfaces");
  for (std::size_t i = 1; i < surfaces.size(); ++i)
    detail::require_compatible(*surfaces[0], *surfaces[i]);
  std::set<EvalCount> ts{1, surfaces[0]->t_max()};
  std::set<double> zs{surfaces[0]->axis_min(), surfaces[0]->axis_max()};
  for (const EafSurface* s : surfaces)
    for (const auto& level : s->levels())
      for (const auto& b : level) {
        ts.insert(b.t);
        zs.insert(b.z);
      }
  auto t_axis = detail::thin_to(std::vector<EvalCount>(ts.begin(), ts.end()), cap);
  auto z_axis = detail::thin_to(std::vector<double>(zs.begin(), zs.end()), cap);
  return DiffAxes{TimeGrid(std::move(t_axis)), std::move(z_axis)};
}

/// Signed difference EAF(a) - EAF(b) on the grid; values in [-1, 1],
/// positive where a attains more often.
inline GridValues eaf_diff(const EafSurface& a, const EafSurface& b,
                           const TimeGrid& time_axis, const std::vector<double>& quality_axis) {
  detail::require_compatible(a, b);
  GridValues ga = eaf_on_grid(a, time_axis, quality_axis);
  const GridValues gb = eaf_on_grid(b, time_axis, quality_axis);
  for (std::size_t ti = 0; ti < ga.values.size(); ++ti)
    for (std::size_t qi = 0; qi < ga.values[ti].size(); ++qi)
      ga.values[ti][qi] -= gb.values[ti][qi];
  return ga;
}

/// Pointwise maximum of the member EAFs: the oracle selector over the portfolio.
inline GridValues portfolio_envelope(const std::vector<const EafSurface*>& surfaces,
                                     const TimeGrid& time_axis,
                                     const std::vector<double>& quality_axis) {
  if (surfaces.empty())
    throw std::invalid_argument("portfolio_envelope: at least one surface required");
  for (std::size_t i = 1; i < surfaces.size(); ++i)
    detail::require_compatible(*surfaces[0], *surfaces[i]);
  GridValues env = eaf_on_grid(*surfaces[0], time_axis, quality_axis);
  for (std::size_t s = 1; s < surfaces.size(); ++s) {
    const GridValues g = eaf_on_grid(*surfaces[s], time_axis, quality_axis);
    for (std::size_t ti = 0; ti < env.values.size(); ++ti)
      for (std::size_t qi = 0; qi < env.values[ti].size(); ++qi)
        env.values[ti][qi] = std::max(env.values[ti][qi], g.values[ti][qi]);
  }
  return env;
}

/// EAF(a) minus the portfolio envelope of the others, pointwise.
inline GridValues diff_vs_portfolio(const EafSurface& a,
                                    const std::vector<const EafSurface*>& others,
                                    const TimeGrid& time_axis,
                                    const std::vector<double>& quality_axis) {
  if (others.empty())
    throw std::invalid_argument("diff_vs_portfolio: empty portfolio");
  detail::require_compatible(a, *others[0]);
  GridValues ga = eaf_on_grid(a, time_axis, quality_axis);
  const GridValues env = portfolio_envelope(others, time_axis, quality_axis);
  for (std::size_t ti = 0; ti < ga.values.size(); ++ti)
    for (std::size_t qi = 0; qi < ga.values[ti].size(); ++qi)
      ga.values[ti][qi] -= env.values[ti][qi];
  return ga;
}

struct RankEntry {
  std::string name;
  double score = 0.0;
  int rank = 0;

  bool operator==(const RankEntry&) const = default;
};

/// Algorithms ordered best-first; ranks are a permutation of 1..n.
struct Ranking {
  std::vector<RankEntry> entries;

  [[nodiscard]] int rank_of(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e.rank;
    throw std::invalid_argument("Ranking: unknown name '" + name + "'");
  }

  bool operator==(const Ranking&) const = default;
};

/// Rank by AUC, largest first; ties take consecutive ranks in lexicographic
/// name order so that ranks stay a permutation.
inline Ranking rank_by_auc(std::vector<std::pair<std::string, double>> scores) {
  if (scores.empty()) throw std::invalid_argument("rank_by_auc: no scores");
  std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i].first == scores[i - 1].first)
      throw std::invalid_argument("rank_by_auc: duplicate name '" + scores[i].first + "'");
  Ranking ranking;
  ranking.entries.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    ranking.entries.push_back({scores[i].first, scores[i].second, static_cast<int>(i) + 1});
  return ranking;
}

/// Half the sum of absolute rank differences (each change counts twice).
inline double rank_difference(const Ranking& r1, const Ranking& r2) {
  if (r1.entries.size() != r2.entries.size())
    throw std::invalid_argument("rank_difference: rankings cover different names");
  std::map<std::string, int> ranks2;
  for (const auto& e : r2.entries) ranks2[e.name] = e.rank;
  long long total = 0;
  for (const auto& e : r1.entries) {
    auto it = ranks2.find(e.name);
    if (it == ranks2.end())
      throw std::invalid_argument("rank_difference: rankings cover different names");
    total += std::llabs(static_cast<long long>(e.rank) - it->second);
  }
  return static_cast<double>(total) / 2.0;
}

}  // namespace attainkit

#endif  // ATTAINKIT_COMPARE_HPP
