// attainkit command-line front end.
//
//   attainkit <eaf|ecdf|auc|diff|rank|gen|plot> [flags]
//
// Exit codes: 0 success, 2 missing input, 3 empty dataset, 4 invalid
// scale/config, 5 unknown algorithm, 6 insufficient algorithms, 7 invalid
// artifact file. Outputs are written atomically (temp file + rename) and are
// byte-identical for identical inputs and flags.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "attainkit/attainkit.hpp"

namespace fs = std::filesystem;
using namespace attainkit;

namespace {

struct AppError {
  int code;
  std::string message;
};

struct CommonOpts {
  std::vector<std::string> inputs;
  std::string out;
  std::string format = "csv";
  std::string scale_kind = "log10";
  double zmin = 1e-8;
  double zmax = 1e2;
  std::string targets_list;        // raw objective values, comma separated
  std::vector<int> num_targets;    // count(s) of equally spaced targets
  int time_grid_n = 50;
  bool per_function = false;
  bool per_instance = false;
  std::string aggregate = "mean-curve";
  std::string filter_algorithm;
  std::string filter_function;
  int filter_dimension = 0;
};

Format output_format(const CommonOpts& opts) {
  if (opts.format == "csv") return Format::csv;
  if (opts.format == "json") return Format::json;
  throw AppError{4, "unknown --format '" + opts.format + "' (want csv or json)"};
}

QualityScale make_scale(const CommonOpts& opts) {
  ScaleKind kind;
  if (opts.scale_kind == "linear") kind = ScaleKind::linear;
  else if (opts.scale_kind == "log10") kind = ScaleKind::log10;
  else throw AppError{4, "unknown --scale '" + opts.scale_kind + "' (want linear or log10)"};
  try {
    return QualityScale(kind, opts.zmin, opts.zmax);
  } catch (const std::invalid_argument& e) {
    throw AppError{4, e.what()};
  }
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw AppError{4, "bad " + what + " entry '" + item + "'"};
    }
  }
  if (values.empty()) throw AppError{4, what + " list is empty"};
  return values;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

std::vector<AlgorithmDataset> load_inputs(const CommonOpts& opts, const QualityScale& scale) {
  if (opts.inputs.empty()) throw AppError{2, "no --input given"};
  if (opts.aggregate != "mean-curve")
    throw AppError{4, "unknown --aggregate '" + opts.aggregate + "' (only mean-curve)"};
  ParseOptions parse_opts;
  parse_opts.scale = scale;
  parse_opts.per_instance = opts.per_instance;
  std::vector<AlgorithmDataset> datasets;
  for (const std::string& input : opts.inputs) {
    const fs::path path(input);
    if (!fs::exists(path)) throw AppError{2, "no such input: " + input};
    if (fs::is_directory(path)) {
      auto result = parse_ioh(path, parse_opts);
      if (result.warnings > 0)
        std::cerr << "warning: " << result.warnings << " empty data file(s) under " << input
                  << "\n";
      for (auto& ds : result.datasets) datasets.push_back(std::move(ds));
    } else {
      std::ifstream in(path);
      if (!in) throw AppError{2, "cannot open input: " + input};
      auto parsed = parse_csv(in, parse_opts, input);
      for (auto& ds : parsed) datasets.push_back(std::move(ds));
    }
  }
  std::vector<AlgorithmDataset> kept;
  for (auto& ds : datasets) {
    if (!opts.filter_algorithm.empty() && ds.algorithm() != opts.filter_algorithm) continue;
    if (!opts.filter_function.empty() && ds.function_id() != opts.filter_function) continue;
    if (opts.filter_dimension > 0 && ds.dimension() != opts.filter_dimension) continue;
    kept.push_back(std::move(ds));
  }
  if (kept.empty()) throw AppError{3, "no datasets after parsing and filtering"};
  return kept;
}

/// Targets on the analysis axis: an explicit --targets list (raw objective
/// values) wins over --num-targets equally spaced ones.
std::optional<TargetSet> requested_targets(const CommonOpts& opts, const QualityScale& scale) {
  try {
    if (!opts.targets_list.empty()) {
      std::vector<double> axis;
      for (const double raw : parse_real_list(opts.targets_list, "--targets"))
        axis.push_back(scale.apply(raw));
      std::sort(axis.begin(), axis.end());
      axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
      return TargetSet(axis);
    }
    if (!opts.num_targets.empty())
      return TargetSet::equally_spaced(opts.num_targets.front(), scale);
  } catch (const std::invalid_argument& e) {
    throw AppError{4, e.what()};
  }
  return std::nullopt;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw AppError{2, "cannot write " + tmp.string()};
    out << content;
  }
  fs::rename(tmp, path);
}

fs::path out_with_suffix(const std::string& out, const std::string& suffix) {
  const fs::path path(out);
  if (suffix.empty()) return path;
  fs::path renamed = path.parent_path();
  renamed /= path.stem().string() + suffix + path.extension().string();
  return renamed;
}

/// Write to the (suffixed) output path, or print a labelled section to stdout.
void emit(const CommonOpts& opts, const std::string& suffix, const std::string& label,
          const std::string& content) {
  if (opts.out.empty()) {
    if (!label.empty()) std::cout << "# " << label << "\n";
    std::cout << content;
    return;
  }
  write_text_atomic(out_with_suffix(opts.out, suffix), content);
}

struct AlgoGroup {
  std::string algorithm;
  std::vector<const AlgorithmDataset*> datasets;
};

std::vector<AlgoGroup> group_by_algorithm(const std::vector<AlgorithmDataset>& datasets) {
  std::map<std::string, AlgoGroup> groups;
  for (const auto& ds : datasets) {
    auto& g = groups[ds.algorithm()];
    g.algorithm = ds.algorithm();
    g.datasets.push_back(&ds);
  }
  std::vector<AlgoGroup> out;
  out.reserve(groups.size());
  for (auto& [name, g] : groups) out.push_back(std::move(g));
  return out;
}

EvalCount common_t_max(const AlgoGroup& group) {
  const EvalCount t_max = group.datasets.front()->t_max();
  for (const auto* ds : group.datasets)
    if (ds->t_max() != t_max)
      throw AppError{4, "datasets of '" + group.algorithm +
                            "' disagree on t_max; aggregate per function instead"};
  return t_max;
}

std::string dataset_suffix(const AlgorithmDataset& ds) {
  return "_" + ds.algorithm() + "_" + ds.function_id() + "_" + std::to_string(ds.dimension()) +
         "D";
}

std::string dataset_label(const AlgorithmDataset& ds) {
  return ds.algorithm() + " " + ds.function_id() + " " + std::to_string(ds.dimension()) + "D";
}

bool use_color() {
  return isatty(STDOUT_FILENO) != 0 && std::getenv("NO_COLOR") == nullptr;
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      line += rows[r][c];
      if (c + 1 < rows[r].size()) line += std::string(widths[c] - rows[r][c].size() + 2, ' ');
    }
    if (r == 0 && use_color()) std::cout << "\033[1m" << line << "\033[0m\n";
    else std::cout << line << "\n";
  }
}

// ---------------------------------------------------------------------------
// eaf
// ---------------------------------------------------------------------------

std::vector<double> union_quality_axis(const std::vector<const EafSurface*>& surfaces,
                                       std::size_t cap = 2000) {
  std::set<double> zs{surfaces.front()->axis_min(), surfaces.front()->axis_max()};
  for (const auto* s : surfaces)
    for (const auto& level : s->levels())
      for (const auto& b : level) zs.insert(b.z);
  return attainkit::detail::thin_to(std::vector<double>(zs.begin(), zs.end()), cap);
}

std::string export_levels(const std::vector<std::pair<double, CurveSeries>>& levels,
                          Format format) {
  if (format == Format::csv) {
    std::string out = "level,t,z\n";
    for (const auto& [p, curve] : levels)
      for (std::size_t i = 0; i < curve.time_axis.size(); ++i)
        out += format_value(p) + "," + std::to_string(curve.time_axis.values()[i]) + "," +
               format_value(curve.values[i]) + "\n";
    return out;
  }
  std::string out = "{\"levels\":[";
  for (std::size_t li = 0; li < levels.size(); ++li) {
    if (li > 0) out += ",";
    out += "{\"level\":" + format_value(levels[li].first) +
           ",\"t\":" + json_array(levels[li].second.time_axis.values()) +
           ",\"z\":" + json_array(levels[li].second.values) + "}";
  }
  return out + "]}\n";
}

/// Level curves of an aggregated (averaged) EAF grid: per time column, the
/// smallest grid z whose mean attainment reaches p.
std::vector<std::pair<double, CurveSeries>> grid_level_curves(const GridValues& grid,
                                                              const std::vector<double>& ps) {
  std::vector<std::pair<double, CurveSeries>> out;
  for (const double p : ps) {
    std::vector<EvalCount> ts;
    std::vector<double> zs;
    for (std::size_t ti = 0; ti < grid.time_axis.size(); ++ti) {
      const auto& row = grid.values[ti];
      const auto it = std::find_if(row.begin(), row.end(),
                                   [p](double v) { return v >= p - 1e-12; });
      if (it == row.end()) continue;
      ts.push_back(grid.time_axis.values()[ti]);
      zs.push_back(grid.quality_axis[static_cast<std::size_t>(it - row.begin())]);
    }
    if (ts.empty()) continue;
    out.emplace_back(p, CurveSeries(TimeGrid(std::move(ts)), std::move(zs)));
  }
  return out;
}

int cmd_eaf(const CommonOpts& opts, bool want_levels, const std::string& levels_list) {
  const QualityScale scale = make_scale(opts);
  const auto datasets = load_inputs(opts, scale);
  const Format format = output_format(opts);

  std::vector<double> level_ps;
  if (want_levels)
    level_ps = parse_real_list(levels_list.empty() ? "0.25,0.5,0.75" : levels_list, "--levels");
  for (const double p : level_ps)
    if (!(p > 0.0) || p > 1.0) throw AppError{4, "--levels entries must be in (0, 1]"};

  struct Output {
    std::string suffix;
    std::string label;
    GridValues grid;
    std::vector<std::pair<double, CurveSeries>> levels;
  };
  std::vector<Output> outputs;

  const auto groups = group_by_algorithm(datasets);
  const bool multi = opts.per_function ? datasets.size() > 1 : groups.size() > 1;

  if (opts.per_function) {
    for (const auto& ds : datasets) {
      const EafSurface surface = compute_eaf(ds);
      const TimeGrid tg = log_spaced_grid(ds.t_max(), opts.time_grid_n);
      const auto qs = union_quality_axis({&surface});
      GridValues grid = eaf_on_grid(surface, tg, qs);
      std::vector<std::pair<double, CurveSeries>> levels;
      for (const double p : level_ps) levels.emplace_back(p, level_set(surface, p));
      outputs.push_back({multi ? dataset_suffix(ds) : "", dataset_label(ds), std::move(grid),
                         std::move(levels)});
    }
  } else {
    for (const auto& group : groups) {
      const EvalCount t_max = common_t_max(group);
      std::vector<EafSurface> surfaces;
      surfaces.reserve(group.datasets.size());
      for (const auto* ds : group.datasets) surfaces.push_back(compute_eaf(*ds));
      std::vector<const EafSurface*> ptrs;
      for (const auto& s : surfaces) ptrs.push_back(&s);
      const TimeGrid tg = log_spaced_grid(t_max, opts.time_grid_n);
      const auto qs = union_quality_axis(ptrs);
      GridValues mean = eaf_on_grid(surfaces[0], tg, qs);
      for (std::size_t s = 1; s < surfaces.size(); ++s) {
        const GridValues g = eaf_on_grid(surfaces[s], tg, qs);
        for (std::size_t ti = 0; ti < mean.values.size(); ++ti)
          for (std::size_t qi = 0; qi < mean.values[ti].size(); ++qi)
            mean.values[ti][qi] += g.values[ti][qi];
      }
      for (auto& row : mean.values)
        for (auto& v : row) v /= static_cast<double>(surfaces.size());

      std::vector<std::pair<double, CurveSeries>> levels;
      if (surfaces.size() == 1) {
        for (const double p : level_ps) levels.emplace_back(p, level_set(surfaces[0], p));
      } else {
        levels = grid_level_curves(mean, level_ps);
      }
      outputs.push_back({multi ? "_" + group.algorithm : "", group.algorithm, std::move(mean),
                         std::move(levels)});
    }
  }

  for (const auto& out : outputs) {
    emit(opts, out.suffix, out.label, export_grid(out.grid, format));
    if (want_levels)
      emit(opts, out.suffix + "_levels", out.label + " levels",
           export_levels(out.levels, format));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ecdf
// ---------------------------------------------------------------------------

std::string export_ecdf_table(const TimeGrid& grid, const CurveSeries& eaf_curve,
                              const CurveSeries* target_curve, Format format) {
  if (format == Format::csv) {
    std::string out = target_curve ? "t,ecdf_eaf,ecdf_targets,diff\n" : "t,ecdf_eaf\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out += std::to_string(grid.values()[i]) + "," + format_value(eaf_curve.values[i]);
      if (target_curve) {
        out += "," + format_value(target_curve->values[i]) + "," +
               format_value(target_curve->values[i] - eaf_curve.values[i]);
      }
      out += "\n";
    }
    return out;
  }
  std::string out = "{\"t\":" + json_array(grid.values()) +
                    ",\"ecdf_eaf\":" + json_array(eaf_curve.values);
  if (target_curve) {
    std::vector<double> diff(target_curve->values.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = target_curve->values[i] - eaf_curve.values[i];
    out += ",\"ecdf_targets\":" + json_array(target_curve->values) +
           ",\"diff\":" + json_array(diff);
  }
  return out + "}\n";
}

CurveSeries mean_curve(std::vector<CurveSeries> curves) {
  CurveSeries acc = std::move(curves.front());
  for (std::size_t c = 1; c < curves.size(); ++c)
    for (std::size_t i = 0; i < acc.values.size(); ++i)
      acc.values[i] += curves[c].values[i];
  for (auto& v : acc.values) v /= static_cast<double>(curves.size());
  return acc;
}

int cmd_ecdf(const CommonOpts& opts) {
  const QualityScale scale = make_scale(opts);
  const auto datasets = load_inputs(opts, scale);
  const Format format = output_format(opts);
  const auto targets = requested_targets(opts, scale);

  struct Output {
    std::string suffix;
    std::string label;
    TimeGrid grid;
    CurveSeries eaf_curve;
    std::optional<CurveSeries> target_curve;
  };
  std::vector<Output> outputs;

  const auto emit_for = [&](const std::string& suffix, const std::string& label,
                            const std::vector<const AlgorithmDataset*>& members,
                            EvalCount t_max) {
    const TimeGrid grid = log_spaced_grid(t_max, opts.time_grid_n);
    std::vector<CurveSeries> eaf_curves;
    std::vector<CurveSeries> tgt_curves;
    for (const auto* ds : members) {
      eaf_curves.push_back(ecdf_eaf(*ds, grid));
      if (targets) tgt_curves.push_back(ecdf_targets(*ds, *targets, grid));
    }
    Output out{suffix, label, grid, mean_curve(std::move(eaf_curves)), std::nullopt};
    if (targets) out.target_curve = mean_curve(std::move(tgt_curves));
    outputs.push_back(std::move(out));
  };

  if (opts.per_function) {
    const bool multi = datasets.size() > 1;
    for (const auto& ds : datasets)
      emit_for(multi ? dataset_suffix(ds) : "", dataset_label(ds), {&ds}, ds.t_max());
  } else {
    const auto groups = group_by_algorithm(datasets);
    for (const auto& group : groups)
      emit_for(groups.size() > 1 ? "_" + group.algorithm : "", group.algorithm, group.datasets,
               common_t_max(group));
  }

  for (const auto& out : outputs)
    emit(opts, out.suffix, out.label,
         export_ecdf_table(out.grid, out.eaf_curve,
                           out.target_curve ? &*out.target_curve : nullptr, format));
  return 0;
}

// ---------------------------------------------------------------------------
// auc
// ---------------------------------------------------------------------------

int cmd_auc(const CommonOpts& opts, bool fast) {
  const QualityScale scale = make_scale(opts);
  const auto datasets = load_inputs(opts, scale);
  const auto targets = requested_targets(opts, scale);

  struct Row {
    std::string algorithm, function_id;
    int dimension;
    AnytimeScores scores;
    double auc_tgt = 0.0;
  };
  std::vector<Row> rows;
  for (const auto& ds : datasets) {
    Row row{ds.algorithm(), ds.function_id(), ds.dimension(), anytime_scores(ds), 0.0};
    if (fast) {
      // approximate: left-step integral on the subsampled time grid
      row.scores.auc_eaf = auc_eaf_on_grid(ds, log_spaced_grid(ds.t_max(), opts.time_grid_n));
      row.scores.mean_aocc = row.scores.auc_eaf * scale.axis_range();
      row.scores.auc_normalized =
          ds.t_max() > 1 ? row.scores.auc_eaf / static_cast<double>(ds.t_max() - 1) : 0.0;
    }
    if (targets) row.auc_tgt = auc_targets(ds, *targets);
    rows.push_back(std::move(row));
  }

  if (opts.out.empty() && opts.format == "csv") {
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"algorithm", "function", "dim",
                                    "mean_aocc", "auc_eaf", "auc_normalized"};
    if (targets) {
      header.push_back("auc_targets");
      header.push_back("auc_diff");
    }
    table.push_back(std::move(header));
    char buf[64];
    const auto fmt = [&buf](double v) {
      std::snprintf(buf, sizeof buf, "%.6f", v);
      return std::string(buf);
    };
    for (const auto& row : rows) {
      std::vector<std::string> cells{row.algorithm, row.function_id,
                                     std::to_string(row.dimension), fmt(row.scores.mean_aocc),
                                     fmt(row.scores.auc_eaf), fmt(row.scores.auc_normalized)};
      if (targets) {
        cells.push_back(fmt(row.auc_tgt));
        cells.push_back(fmt(row.scores.auc_normalized - row.auc_tgt));
      }
      table.push_back(std::move(cells));
    }
    print_table(table);
    return 0;
  }

  const Format format = output_format(opts);
  std::string content;
  if (format == Format::csv) {
    content = "algorithm,function,dimension,mean_aocc,auc_eaf,auc_normalized";
    if (targets) content += ",auc_targets,auc_diff";
    content += "\n";
    for (const auto& row : rows) {
      content += row.algorithm + "," + row.function_id + "," + std::to_string(row.dimension) +
                 "," + format_value(row.scores.mean_aocc) + "," +
                 format_value(row.scores.auc_eaf) + "," +
                 format_value(row.scores.auc_normalized);
      if (targets)
        content += "," + format_value(row.auc_tgt) + "," +
                   format_value(row.scores.auc_normalized - row.auc_tgt);
      content += "\n";
    }
  } else {
    content = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (i > 0) content += ",";
      content += "{\"algorithm\":\"" + row.algorithm + "\",\"function\":\"" + row.function_id +
                 "\",\"dimension\":" + std::to_string(row.dimension) +
                 ",\"mean_aocc\":" + format_value(row.scores.mean_aocc) +
                 ",\"auc_eaf\":" + format_value(row.scores.auc_eaf) +
                 ",\"auc_normalized\":" + format_value(row.scores.auc_normalized);
      if (targets)
        content += ",\"auc_targets\":" + format_value(row.auc_tgt) +
                   ",\"auc_diff\":" + format_value(row.scores.auc_normalized - row.auc_tgt);
      content += "}";
    }
    content += "]\n";
  }
  emit(opts, "", "auc", content);
  return 0;
}

// ---------------------------------------------------------------------------
// diff
// ---------------------------------------------------------------------------

const AlgorithmDataset* find_single_dataset(const std::vector<AlgorithmDataset>& datasets,
                                            const std::string& name) {
  const AlgorithmDataset* found = nullptr;
  for (const auto& ds : datasets) {
    if (ds.algorithm() != name) continue;
    if (found)
      throw AppError{4, "algorithm '" + name +
                            "' matches several datasets; narrow with --function/--dimension"};
    found = &ds;
  }
  if (!found) throw AppError{5, "unknown algorithm '" + name + "'"};
  return found;
}

int cmd_diff(const CommonOpts& opts, const std::string& name_a, const std::string& name_b,
             const std::string& portfolio_list) {
  const QualityScale scale = make_scale(opts);
  const auto datasets = load_inputs(opts, scale);
  const Format format = output_format(opts);

  const bool has_b = !name_b.empty();
  const auto portfolio_names = parse_name_list(portfolio_list);
  if (has_b == !portfolio_names.empty())
    throw AppError{4, "need either two algorithm names or one name plus --portfolio"};

  const AlgorithmDataset* ds_a = find_single_dataset(datasets, name_a);
  const EafSurface surface_a = compute_eaf(*ds_a);

  std::vector<EafSurface> others;
  if (has_b) {
    others.push_back(compute_eaf(*find_single_dataset(datasets, name_b)));
  } else {
    for (const std::string& name : portfolio_names)
      others.push_back(compute_eaf(*find_single_dataset(datasets, name)));
  }

  std::vector<const EafSurface*> all{&surface_a};
  for (const auto& s : others) all.push_back(&s);
  DiffAxes axes = [&] {
    try {
      return union_breakpoint_axes(all);
    } catch (const std::invalid_argument& e) {
      throw AppError{4, e.what()};
    }
  }();

  GridValues grid = has_b ? eaf_diff(surface_a, others[0], axes.time_axis, axes.quality_axis)
                          : diff_vs_portfolio(surface_a,
                                              [&] {
                                                std::vector<const EafSurface*> ptrs;
                                                for (const auto& s : others) ptrs.push_back(&s);
                                                return ptrs;
                                              }(),
                                              axes.time_axis, axes.quality_axis);
  emit(opts, "", "diff " + name_a, export_grid(grid, format));
  return 0;
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

int cmd_rank(const CommonOpts& opts) {
  const QualityScale scale = make_scale(opts);
  const auto datasets = load_inputs(opts, scale);
  const Format format = output_format(opts);

  const auto groups = group_by_algorithm(datasets);
  if (groups.size() < 2) throw AppError{6, "rank needs at least 2 algorithms"};

  std::vector<int> target_counts = opts.num_targets;
  if (target_counts.empty()) target_counts = {5, 10, 25, 51};
  for (const int m : target_counts)
    if (m < 1) throw AppError{4, "--num-targets entries must be >= 1"};

  // criterion 0 is the EAF-based AUC; then one per target count
  std::vector<std::string> criteria{"eaf"};
  for (const int m : target_counts) criteria.push_back("targets" + std::to_string(m));

  std::map<std::string, std::vector<double>> scores;  // algorithm -> score per criterion
  for (const auto& group : groups) {
    std::vector<double> per_criterion(criteria.size(), 0.0);
    for (const auto* ds : group.datasets) {
      per_criterion[0] += anytime_scores(*ds).auc_normalized;
      for (std::size_t c = 0; c < target_counts.size(); ++c)
        per_criterion[c + 1] +=
            auc_targets(*ds, TargetSet::equally_spaced(target_counts[c], scale));
    }
    for (auto& s : per_criterion) s /= static_cast<double>(group.datasets.size());
    scores[group.algorithm] = std::move(per_criterion);
  }

  std::vector<Ranking> rankings;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    std::vector<std::pair<std::string, double>> entries;
    for (const auto& [name, per_criterion] : scores) entries.emplace_back(name, per_criterion[c]);
    rankings.push_back(rank_by_auc(std::move(entries)));
  }

  std::string table;
  if (format == Format::csv) {
    table = "algorithm";
    for (const auto& crit : criteria) table += ",score_" + crit + ",rank_" + crit;
    table += "\n";
    for (const auto& [name, per_criterion] : scores) {
      table += name;
      for (std::size_t c = 0; c < criteria.size(); ++c)
        table += "," + format_value(per_criterion[c]) + "," +
                 std::to_string(rankings[c].rank_of(name));
      table += "\n";
    }
  } else {
    table = "[";
    bool first = true;
    for (const auto& [name, per_criterion] : scores) {
      if (!first) table += ",";
      first = false;
      table += "{\"algorithm\":\"" + name + "\"";
      for (std::size_t c = 0; c < criteria.size(); ++c)
        table += ",\"score_" + criteria[c] + "\":" + format_value(per_criterion[c]) +
                 ",\"rank_" + criteria[c] + "\":" + std::to_string(rankings[c].rank_of(name));
      table += "}";
    }
    table += "]\n";
  }

  std::string diffs;
  if (format == Format::csv) {
    diffs = "criterion_a,criterion_b,rank_difference\n";
    for (std::size_t a = 0; a < criteria.size(); ++a)
      for (std::size_t b = a + 1; b < criteria.size(); ++b)
        diffs += criteria[a] + "," + criteria[b] + "," +
                 format_value(rank_difference(rankings[a], rankings[b])) + "\n";
  } else {
    diffs = "[";
    bool first = true;
    for (std::size_t a = 0; a < criteria.size(); ++a)
      for (std::size_t b = a + 1; b < criteria.size(); ++b) {
        if (!first) diffs += ",";
        first = false;
        diffs += "{\"criterion_a\":\"" + criteria[a] + "\",\"criterion_b\":\"" + criteria[b] +
                 "\",\"rank_difference\":" +
                 format_value(rank_difference(rankings[a], rankings[b])) + "}";
      }
    diffs += "]\n";
  }

  emit(opts, "", "ranking", table);
  emit(opts, "_rankdiff", "rank differences", diffs);
  return 0;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const CommonOpts& opts, GeneratorSpec spec, const std::string& kind_name) {
  if (kind_name == "geometric-decay") spec.kind = GeneratorKind::geometric_decay;
  else if (kind_name == "random-search") spec.kind = GeneratorKind::random_search_quadratic;
  else throw AppError{4, "unknown --kind '" + kind_name + "'"};
  spec.scale = make_scale(opts);
  try {
    const AlgorithmDataset ds = generate_synthetic(spec);
    emit(opts, "", "", export_dataset_csv({ds}));
  } catch (const std::invalid_argument& e) {
    throw AppError{4, e.what()};
  }
  return 0;
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

std::vector<NamedCurve> parse_curves_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AppError{2, "cannot open " + path.string()};
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<NamedCurve> curves;
  try {
    if (path.extension() == ".json") {
      const nlohmann::json j = nlohmann::json::parse(text);
      if (!j.is_object() || !j.contains("t"))
        throw FormatError("curve json needs a 't' array", path.string());
      const auto ts = j.at("t").get<std::vector<EvalCount>>();
      for (const auto& [key, value] : j.items()) {
        if (key == "t" || !value.is_array()) continue;
        const auto vs = value.get<std::vector<double>>();
        if (vs.size() != ts.size())
          throw FormatError("column '" + key + "' length mismatch", path.string());
        curves.push_back({key, CurveSeries(TimeGrid(ts), vs)});
      }
    } else {
      std::istringstream lines(text);
      std::string line;
      if (!std::getline(lines, line))
        throw FormatError("empty curve file", path.string());
      std::stringstream header(line);
      std::vector<std::string> columns;
      std::string col;
      while (std::getline(header, col, ',')) {
        while (!col.empty() && (col.back() == '\r' || col.back() == ' ')) col.pop_back();
        columns.push_back(col);
      }
      if (columns.size() < 2 || columns[0] != "t")
        throw FormatError("curve csv must start with a 't' column", path.string());
      std::vector<EvalCount> ts;
      std::vector<std::vector<double>> cols(columns.size() - 1);
      long line_no = 1;
      while (std::getline(lines, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::stringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) {
          while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
            field.pop_back();
          fields.push_back(field);
        }
        if (fields.size() != columns.size())
          throw FormatError("row width mismatch", path.string(), line_no);
        ts.push_back(std::stoll(fields[0]));
        for (std::size_t c = 1; c < fields.size(); ++c)
          cols[c - 1].push_back(std::stod(fields[c]));
      }
      for (std::size_t c = 0; c < cols.size(); ++c)
        curves.push_back({columns[c + 1], CurveSeries(TimeGrid(ts), cols[c])});
    }
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad curve file: ") + e.what(), path.string());
  }
  if (curves.empty()) throw FormatError("no curves in file", path.string());
  return curves;
}

int cmd_plot(const CommonOpts& opts, const SvgOptions& svg_opts) {
  if (opts.inputs.size() != 1) throw AppError{4, "plot takes exactly one --input file"};
  const fs::path path(opts.inputs[0]);
  if (!fs::exists(path)) throw AppError{2, "no such input: " + path.string()};
  std::vector<NamedCurve> curves;
  try {
    curves = parse_curves_file(path);
  } catch (const FormatError& e) {
    throw AppError{7, e.what()};
  }
  const std::string svg = render_curves_svg(curves, svg_opts);
  if (opts.out.empty()) std::cout << svg;
  else write_text_atomic(opts.out, svg);
  return 0;
}

void add_common_options(CLI::App* sub, CommonOpts& opts, bool with_targets = true) {
  sub->add_option("--input", opts.inputs, "input CSV files or IOH-style directories");
  sub->add_option("--out", opts.out, "output path (stdout when omitted)");
  sub->add_option("--format", opts.format, "output format: csv or json")
      ->default_str("csv");
  sub->add_option("--scale", opts.scale_kind, "quality scale: linear or log10")
      ->default_str("log10");
  sub->add_option("--zmin", opts.zmin, "lower quality bound")->default_str("1e-8");
  sub->add_option("--zmax", opts.zmax, "upper quality bound")->default_str("1e2");
  if (with_targets) {
    sub->add_option("--targets", opts.targets_list,
                    "comma-separated raw target values (transformed onto the analysis axis)");
    sub->add_option("--num-targets", opts.num_targets,
                    "number of equally spaced targets on the analysis axis");
  }
  sub->add_option("--time-grid", opts.time_grid_n, "size of the log-spaced time grid")
      ->default_str("50");
  sub->add_flag("--per-function", opts.per_function, "one output per dataset, no aggregation");
  sub->add_flag("--per-instance", opts.per_instance,
                "one dataset per instance instead of pooling");
  sub->add_option("--aggregate", opts.aggregate,
                  "aggregation across functions (mean-curve)")
      ->default_str("mean-curve");
  sub->add_option("--algorithm", opts.filter_algorithm, "keep only this algorithm");
  sub->add_option("--function", opts.filter_function, "keep only this function id");
  sub->add_option("--dimension", opts.filter_dimension, "keep only this dimension");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attainkit: empirical attainment function analysis for single-objective "
               "black-box optimizers"};
  app.require_subcommand(1);

  CommonOpts opts;

  // eaf
  auto* eaf_cmd = app.add_subcommand("eaf", "EAF grid (and optional level-set curves)");
  add_common_options(eaf_cmd, opts);
  std::string levels_list;
  auto* levels_opt =
      eaf_cmd->add_option("--levels", levels_list,
                          "also write level-set curves at these probabilities "
                          "(bare flag uses 0.25,0.5,0.75)")
          ->expected(0, 1);

  // ecdf
  auto* ecdf_cmd = app.add_subcommand("ecdf", "EAF-based (and optional target-based) ECDF");
  add_common_options(ecdf_cmd, opts);

  // auc
  auto* auc_cmd = app.add_subcommand("auc", "anytime scores: mean AOCC and AUC values");
  add_common_options(auc_cmd, opts);
  bool auc_fast = false;
  auc_cmd->add_flag("--fast", auc_fast,
                    "approximate the AUC on the subsampled time grid instead of exact "
                    "unit steps");

  // diff
  auto* diff_cmd = app.add_subcommand("diff", "signed EAF difference grid");
  add_common_options(diff_cmd, opts);
  std::string diff_a, diff_b, portfolio_list;
  diff_cmd->add_option("first", diff_a, "first algorithm name")->required();
  diff_cmd->add_option("second", diff_b, "second algorithm name");
  diff_cmd->add_option("--portfolio", portfolio_list,
                       "comma-separated portfolio algorithm names");

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "AUC rankings and rank differences");
  add_common_options(rank_cmd, opts);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "seeded synthetic trajectory CSV");
  add_common_options(gen_cmd, opts, /*with_targets=*/false);
  GeneratorSpec gen_spec;
  std::string gen_kind = "geometric-decay";
  gen_cmd->add_option("--kind", gen_kind, "geometric-decay or random-search")
      ->default_str("geometric-decay");
  gen_cmd->add_option("--seed", gen_spec.seed, "generator seed")->default_str("1");
  gen_cmd->add_option("--runs", gen_spec.runs, "number of runs")->default_str("1");
  gen_cmd->add_option("--t-max", gen_spec.t_max, "evaluation budget")->default_str("2");
  gen_cmd->add_option("--gen-dimension", gen_spec.dimension, "decision-space dimension")
      ->default_str("2");
  gen_cmd->add_option("--algorithm-name", gen_spec.algorithm, "algorithm name to emit")
      ->default_str("synthetic");
  gen_cmd->add_option("--function-name", gen_spec.function_id, "function id to emit")
      ->default_str("f0");
  gen_cmd->add_option("--z-start", gen_spec.z_start, "initial value (geometric decay)")
      ->default_str("1e2");
  gen_cmd->add_option("--decay-min", gen_spec.decay_min, "smallest decay factor")
      ->default_str("0.5");
  gen_cmd->add_option("--decay-max", gen_spec.decay_max, "largest decay factor")
      ->default_str("0.9");
  gen_cmd->add_option("--improve-prob", gen_spec.improve_prob,
                      "per-evaluation improvement probability")
      ->default_str("0.3");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "SVG rendering of curve files");
  add_common_options(plot_cmd, opts, /*with_targets=*/false);
  SvgOptions svg_opts;
  bool no_legend = false;
  bool linear_time = false;
  plot_cmd->add_option("--title", svg_opts.title, "plot title");
  plot_cmd->add_option("--ylabel", svg_opts.y_label, "y-axis label")->default_str("value");
  plot_cmd->add_option("--width", svg_opts.width, "SVG width")->default_str("720");
  plot_cmd->add_option("--height", svg_opts.height, "SVG height")->default_str("480");
  plot_cmd->add_flag("--no-legend", no_legend, "omit the legend group");
  plot_cmd->add_flag("--linear-time", linear_time, "linear instead of log10 time axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (eaf_cmd->parsed()) return cmd_eaf(opts, levels_opt->count() > 0, levels_list);
    if (ecdf_cmd->parsed()) return cmd_ecdf(opts);
    if (auc_cmd->parsed()) return cmd_auc(opts, auc_fast);
    if (diff_cmd->parsed()) return cmd_diff(opts, diff_a, diff_b, portfolio_list);
    if (rank_cmd->parsed()) return cmd_rank(opts);
    if (gen_cmd->parsed()) return cmd_gen(opts, gen_spec, gen_kind);
    if (plot_cmd->parsed()) {
      svg_opts.legend = !no_legend;
      svg_opts.log_time = !linear_time;
      return cmd_plot(opts, svg_opts);
    }
  } catch (const AppError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 7;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
