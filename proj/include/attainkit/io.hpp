/**
 * @file io.hpp
 * @brief Trajectory ingestion (CSV and IOH-style files), seeded synthetic
 *        datasets, and curve/grid export with round-trip-exact numbers.
 *
 * The canonical CSV schema is
 *   algorithm,function,dimension,instance,run,evaluations,raw_y
 * one row per recorded evaluation, UTF-8, '.' decimal separator. Rows are
 * grouped into one dataset per (algorithm, function, dimension); runs on
 * different instances pool into that dataset unless per_instance is set.
 * All numeric output is rendered with 17 significant digits, which
 * round-trips doubles bit-exactly.
 */

#ifndef ATTAINKIT_IO_HPP
#define ATTAINKIT_IO_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "attainkit/core.hpp"
#include "attainkit/eaf.hpp"

namespace attainkit {

/// Parse/format failure, carrying the source name and line when known.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, const std::string& source = "", long line = 0)
      : std::runtime_error(compose(message, source, line)) {}

 private:
  static std::string compose(const std::string& message, const std::string& source, long line) {
    std::string out = message;
    if (!source.empty()) out += " [" + source + (line > 0 ? ":" + std::to_string(line) : "") + "]";
    else if (line > 0) out += " [line " + std::to_string(line) + "]";
    return out;
  }
};

enum class Format { csv, json };

/// Flat row form of one recorded evaluation.
struct TrajectoryRecord {
  std::string algorithm;
  std::string function_id;
  int dimension = 0;
  std::string instance;
  std::string run_id;
  EvalCount t = 0;
  double raw_y = 0.0;
};

struct ParseOptions {
  QualityScale scale{};        ///< stamped onto every produced dataset
  bool per_instance = false;   ///< one dataset per instance instead of pooling
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline long long parse_int(std::string_view field, const std::string& source, long line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw FormatError("expected an integer, got '" + std::string(field) + "'", source, line);
  return value;
}

inline double parse_real(std::string_view field, const std::string& source, long line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw FormatError("expected a number, got '" + std::string(field) + "'", source, line);
  return value;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Group records into datasets: one per (algorithm, function, dimension
/// [, instance]), runs keyed by (instance, run), t_max = max t in the group.
inline std::vector<AlgorithmDataset> datasets_from_records(
    const std::vector<TrajectoryRecord>& records, const ParseOptions& options) {
  using GroupKey = std::tuple<std::string, std::string, int, std::string>;
  using RunKey = std::pair<std::string, std::string>;
  std::map<GroupKey, std::map<RunKey, std::vector<TrajectoryPoint>>> groups;
  std::map<GroupKey, EvalCount> budgets;
  for (const auto& rec : records) {
    GroupKey key{rec.algorithm, rec.function_id, rec.dimension,
                 options.per_instance ? rec.instance : std::string{}};
    groups[key][{rec.instance, rec.run_id}].push_back({rec.t, rec.raw_y});
    EvalCount& budget = budgets[key];
    budget = std::max(budget, rec.t);
  }
  std::vector<AlgorithmDataset> datasets;
  datasets.reserve(groups.size());
  for (auto& [key, run_map] : groups) {
    const EvalCount t_max = budgets[key];
    std::vector<Run> runs;
    runs.reserve(run_map.size());
    for (auto& [run_key, points] : run_map) {
      EvalCount own_max = 0;
      for (const auto& p : points) own_max = std::max(own_max, p.t);
      runs.emplace_back(run_key.first + ":" + run_key.second, std::move(points), t_max,
                        /*extended_to_budget=*/own_max < t_max);
    }
    std::string function_id = std::get<1>(key);
    if (options.per_instance) function_id += "@i" + std::get<3>(key);
    datasets.emplace_back(std::get<0>(key), std::move(function_id), std::get<2>(key),
                          std::move(runs), options.scale);
  }
  return datasets;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "algorithm,function,dimension,instance,run,evaluations,raw_y";

/**
 * @brief Parse trajectory rows from canonical CSV.
 * @throws FormatError on a missing/renamed header, wrong field count,
 *         non-numeric fields, or non-finite raw_y — always with the line number.
 */
inline std::vector<AlgorithmDataset> parse_csv(std::istream& in,
                                               const ParseOptions& options = {},
                                               const std::string& source = "csv") {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line))
    throw FormatError("empty input, expected header '" + std::string(kCsvHeader) + "'", source, 1);
  ++line_no;
  if (detail::trim(line) != kCsvHeader)
    throw FormatError("bad header, expected '" + std::string(kCsvHeader) + "'", source, line_no);

  std::vector<TrajectoryRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    const auto fields = detail::split(sv, ',');
    if (fields.size() != 7)
      throw FormatError("expected 7 fields, got " + std::to_string(fields.size()), source, line_no);
    TrajectoryRecord rec;
    rec.algorithm = std::string(detail::trim(fields[0]));
    rec.function_id = std::string(detail::trim(fields[1]));
    const long long dim = detail::parse_int(detail::trim(fields[2]), source, line_no);
    if (dim < 1) throw FormatError("dimension must be >= 1", source, line_no);
    rec.dimension = static_cast<int>(dim);
    rec.instance = std::string(detail::trim(fields[3]));
    rec.run_id = std::string(detail::trim(fields[4]));
    rec.t = detail::parse_int(detail::trim(fields[5]), source, line_no);
    if (rec.t < 1) throw FormatError("evaluations must be >= 1", source, line_no);
    rec.raw_y = detail::parse_real(detail::trim(fields[6]), source, line_no);
    if (!std::isfinite(rec.raw_y))
      throw FormatError("raw_y must be finite", source, line_no);
    records.push_back(std::move(rec));
  }
  return detail::datasets_from_records(records, options);
}

inline std::vector<AlgorithmDataset> parse_csv(std::string_view text,
                                               const ParseOptions& options = {},
                                               const std::string& source = "csv") {
  std::istringstream stream{std::string(text)};
  return parse_csv(stream, options, source);
}

/// parse_ioh result: datasets plus the number of skipped empty inputs.
struct IohParseResult {
  std::vector<AlgorithmDataset> datasets;
  int warnings = 0;
};

namespace detail {

struct IohMeta {
  std::optional<std::string> algorithm;
  std::optional<std::string> function_id;
  std::optional<int> dimension;
  std::string instance = "0";
};

inline void ioh_parse_header(std::string_view line, IohMeta& meta, const std::string& source,
                             long line_no) {
  std::string_view body = trim(line.substr(1));
  if (body.empty()) return;  // bare '%' separator/comment
  const std::size_t eq = body.find('=');
  if (eq == std::string_view::npos)
    throw FormatError("malformed header line, expected '% key = value'", source, line_no);
  const std::string key{trim(body.substr(0, eq))};
  const std::string value{trim(body.substr(eq + 1))};
  if (key == "algorithm") meta.algorithm = value;
  else if (key == "function") meta.function_id = value;
  else if (key == "dimension") {
    const long long dim = parse_int(value, source, line_no);
    if (dim < 1) throw FormatError("dimension must be >= 1", source, line_no);
    meta.dimension = static_cast<int>(dim);
  } else if (key == "instance") meta.instance = value;
  // unknown keys are ignored for forward compatibility
}

}  // namespace detail

/**
 * @brief Parse one IOH-style data stream: '%'-prefixed `key = value` header
 *        lines, run blocks of `evaluations value` rows separated by blank
 *        lines. Evaluations must be strictly increasing within a block.
 *
 * Appends flat records to @p records; returns the number of run blocks found.
 */
inline int parse_ioh_stream(std::istream& in, const std::string& source,
                            std::vector<TrajectoryRecord>& records,
                            std::map<std::string, int>& run_counters) {
  detail::IohMeta meta;
  std::vector<TrajectoryPoint> block;
  EvalCount prev_t = 0;
  int blocks = 0;
  long line_no = 0;

  auto flush_block = [&]() {
    if (block.empty()) return;
    ++blocks;
    const std::string counter_key = *meta.algorithm + "\x1f" + *meta.function_id + "\x1f" +
                                    std::to_string(*meta.dimension) + "\x1f" + meta.instance;
    const int run_no = ++run_counters[counter_key];
    for (const auto& p : block)
      records.push_back({*meta.algorithm, *meta.function_id, *meta.dimension, meta.instance,
                         std::to_string(run_no), p.t, p.z});
    block.clear();
    prev_t = 0;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = detail::trim(line);
    if (sv.empty()) {
      flush_block();
      continue;
    }
    if (sv.front() == '%') {
      flush_block();
      detail::ioh_parse_header(sv, meta, source, line_no);
      continue;
    }
    if (!meta.algorithm || !meta.function_id || !meta.dimension)
      throw FormatError("data before algorithm/function/dimension headers", source, line_no);
    std::istringstream row{std::string(sv)};
    std::string t_field, y_field;
    if (!(row >> t_field >> y_field))
      throw FormatError("expected 'evaluations value' columns", source, line_no);
    const EvalCount t = detail::parse_int(t_field, source, line_no);
    if (t < 1) throw FormatError("evaluations must be >= 1", source, line_no);
    if (t <= prev_t)
      throw FormatError("non-increasing evaluations within a run block", source, line_no);
    const double y = detail::parse_real(y_field, source, line_no);
    if (!std::isfinite(y)) throw FormatError("values must be finite", source, line_no);
    block.push_back({t, y});
    prev_t = t;
  }
  flush_block();
  return blocks;
}

/**
 * @brief Parse every *.dat file under a directory tree (sorted path order).
 *
 * Files that contain no run block are skipped and counted as warnings.
 */
inline IohParseResult parse_ioh(const std::filesystem::path& root,
                                const ParseOptions& options = {}) {
  namespace fs = std::filesystem;
  if (!fs::exists(root))
    throw FormatError("no such directory: " + root.string());
  std::vector<fs::path> files;
  if (fs::is_directory(root)) {
    for (const auto& entry : fs::recursive_directory_iterator(root))
      if (entry.is_regular_file() && entry.path().extension() == ".dat")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(root);
  }

  IohParseResult result;
  std::vector<TrajectoryRecord> records;
  std::map<std::string, int> run_counters;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw FormatError("cannot open file", file.string());
    if (parse_ioh_stream(in, file.string(), records, run_counters) == 0)
      ++result.warnings;
  }
  result.datasets = detail::datasets_from_records(records, options);
  return result;
}

// ---------------------------------------------------------------------------
// Synthetic datasets
// ---------------------------------------------------------------------------

namespace detail {

/// splitmix64; used instead of <random> so that seeded output is identical
/// across platforms and standard libraries.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace detail

enum class GeneratorKind {
  random_search_quadratic,  ///< uniform sampling on f(x) = sum x_i^2 over [-w, w]^D
  geometric_decay,          ///< multiplicative value decay at random improvement times
  staircase_from_list       ///< pass-through of explicit improvement lists
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::geometric_decay;
  std::uint64_t seed = 1;
  int runs = 1;
  EvalCount t_max = 2;
  int dimension = 2;
  std::string algorithm = "synthetic";
  std::string function_id = "f0";
  QualityScale scale{};

  // random_search_quadratic
  double domain_half_width = 5.0;

  // geometric_decay
  double z_start = 1e2;
  double decay_min = 0.5;   ///< per-improvement multiplicative factor, in (0, 1)
  double decay_max = 0.9;
  double improve_prob = 0.3;

  // staircase_from_list; outer size = number of runs
  std::vector<std::vector<TrajectoryPoint>> staircases;
};

/// Deterministic synthetic dataset: identical spec (including seed) gives an
/// identical dataset on every platform.
inline AlgorithmDataset generate_synthetic(const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::staircase_from_list && spec.runs < 1)
    throw std::invalid_argument("generate_synthetic: runs must be >= 1");
  if (spec.t_max < 2)
    throw std::invalid_argument("generate_synthetic: t_max must be >= 2");

  std::vector<Run> runs;
  detail::SplitMix64 seeder(spec.seed);

  switch (spec.kind) {
    case GeneratorKind::staircase_from_list: {
      if (spec.staircases.empty())
        throw std::invalid_argument("generate_synthetic: no staircases given");
      for (std::size_t i = 0; i < spec.staircases.size(); ++i)
        runs.emplace_back("0:" + std::to_string(i + 1), spec.staircases[i], spec.t_max);
      break;
    }
    case GeneratorKind::random_search_quadratic: {
      if (spec.dimension < 1)
        throw std::invalid_argument("generate_synthetic: dimension must be >= 1");
      for (int i = 0; i < spec.runs; ++i) {
        detail::SplitMix64 rng(seeder.next());
        std::vector<TrajectoryPoint> points;
        double best = kUnattained;
        for (EvalCount t = 1; t <= spec.t_max; ++t) {
          double f = 0.0;
          for (int d = 0; d < spec.dimension; ++d) {
            const double x = spec.domain_half_width * (2.0 * rng.next_double() - 1.0);
            f += x * x;
          }
          if (f < best) {
            best = f;
            points.push_back({t, f});
          }
        }
        runs.emplace_back("0:" + std::to_string(i + 1), std::move(points), spec.t_max);
      }
      break;
    }
    case GeneratorKind::geometric_decay: {
      if (!(spec.z_start > 0.0))
        throw std::invalid_argument("generate_synthetic: z_start must be > 0");
      if (!(spec.decay_min > 0.0) || !(spec.decay_min <= spec.decay_max) ||
          !(spec.decay_max < 1.0))
        throw std::invalid_argument("generate_synthetic: need 0 < decay_min <= decay_max < 1");
      if (!(spec.improve_prob > 0.0) || spec.improve_prob > 1.0)
        throw std::invalid_argument("generate_synthetic: improve_prob must be in (0, 1]");
      for (int i = 0; i < spec.runs; ++i) {
        detail::SplitMix64 rng(seeder.next());
        std::vector<TrajectoryPoint> points;
        double value = spec.z_start;
        points.push_back({1, value});
        for (EvalCount t = 2; t <= spec.t_max; ++t) {
          if (rng.next_double() < spec.improve_prob) {
            value *= spec.decay_min + (spec.decay_max - spec.decay_min) * rng.next_double();
            points.push_back({t, value});
          }
        }
        runs.emplace_back("0:" + std::to_string(i + 1), std::move(points), spec.t_max);
      }
      break;
    }
  }
  return AlgorithmDataset(spec.algorithm, spec.function_id, spec.dimension, std::move(runs),
                          spec.scale);
}

// ---------------------------------------------------------------------------
// Export / parse of computed artifacts
// ---------------------------------------------------------------------------

/// 17-significant-digit rendering; round-trip exact for doubles.
inline std::string format_value(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string json_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_value(values[i]);
  }
  return out + "]";
}

inline std::string json_array(const std::vector<EvalCount>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

inline std::string export_curve(const CurveSeries& curve, Format format) {
  if (format == Format::csv) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < curve.time_axis.size(); ++i) {
      out += std::to_string(curve.time_axis.values()[i]);
      out += ",";
      out += format_value(curve.values[i]);
      out += "\n";
    }
    return out;
  }
  return "{\"t\":" + json_array(curve.time_axis.values()) +
         ",\"value\":" + json_array(curve.values) + "}\n";
}

/// Long-form grid export: one `t,z,value` row per cell, time-major ascending.
inline std::string export_grid(const GridValues& grid, Format format) {
  if (format == Format::csv) {
    std::string out = "t,z,value\n";
    for (std::size_t ti = 0; ti < grid.time_axis.size(); ++ti)
      for (std::size_t qi = 0; qi < grid.quality_axis.size(); ++qi) {
        out += std::to_string(grid.time_axis.values()[ti]);
        out += ",";
        out += format_value(grid.quality_axis[qi]);
        out += ",";
        out += format_value(grid.values[ti][qi]);
        out += "\n";
      }
    return out;
  }
  std::string out = "{\"t\":" + json_array(grid.time_axis.values()) +
                    ",\"z\":" + json_array(grid.quality_axis) + ",\"values\":[";
  for (std::size_t ti = 0; ti < grid.values.size(); ++ti) {
    if (ti > 0) out += ",";
    out += json_array(grid.values[ti]);
  }
  return out + "]}\n";
}

inline CurveSeries parse_curve(std::string_view text, Format format,
                               const std::string& source = "curve") {
  if (format == Format::csv) {
    std::istringstream in{std::string(text)};
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line) || detail::trim(line) != "t,value")
      throw FormatError("expected header 't,value'", source, 1);
    ++line_no;
    std::vector<EvalCount> ts;
    std::vector<double> vs;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view sv = detail::trim(line);
      if (sv.empty()) continue;
      const auto fields = detail::split(sv, ',');
      if (fields.size() != 2) throw FormatError("expected 2 fields", source, line_no);
      ts.push_back(detail::parse_int(detail::trim(fields[0]), source, line_no));
      vs.push_back(detail::parse_real(detail::trim(fields[1]), source, line_no));
    }
    try {
      return CurveSeries(TimeGrid(std::move(ts)), std::move(vs));
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bad curve: ") + e.what(), source);
    }
  }
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<EvalCount> ts = j.at("t").get<std::vector<EvalCount>>();
    std::vector<double> vs = j.at("value").get<std::vector<double>>();
    return CurveSeries(TimeGrid(std::move(ts)), std::move(vs));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad curve json: ") + e.what(), source);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad curve json: ") + e.what(), source);
  }
}

inline GridValues parse_grid(std::string_view text, Format format,
                             const std::string& source = "grid") {
  if (format == Format::csv) {
    std::istringstream in{std::string(text)};
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line) || detail::trim(line) != "t,z,value")
      throw FormatError("expected header 't,z,value'", source, 1);
    ++line_no;
    std::vector<EvalCount> ts;
    std::vector<double> zs;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view sv = detail::trim(line);
      if (sv.empty()) continue;
      const auto fields = detail::split(sv, ',');
      if (fields.size() != 3) throw FormatError("expected 3 fields", source, line_no);
      const EvalCount t = detail::parse_int(detail::trim(fields[0]), source, line_no);
      const double z = detail::parse_real(detail::trim(fields[1]), source, line_no);
      const double v = detail::parse_real(detail::trim(fields[2]), source, line_no);
      if (ts.empty() || t != ts.back()) {
        ts.push_back(t);
        rows.emplace_back();
      }
      if (ts.size() == 1) zs.push_back(z);
      else if (rows.back().size() >= zs.size() || zs[rows.back().size()] != z)
        throw FormatError("inconsistent quality axis", source, line_no);
      rows.back().push_back(v);
    }
    for (const auto& row : rows)
      if (row.size() != zs.size())
        throw FormatError("ragged grid rows", source);
    try {
      return GridValues(TimeGrid(std::move(ts)), std::move(zs), std::move(rows));
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bad grid: ") + e.what(), source);
    }
  }
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<EvalCount> ts = j.at("t").get<std::vector<EvalCount>>();
    std::vector<double> zs = j.at("z").get<std::vector<double>>();
    std::vector<std::vector<double>> rows = j.at("values").get<std::vector<std::vector<double>>>();
    return GridValues(TimeGrid(std::move(ts)), std::move(zs), std::move(rows));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad grid json: ") + e.what(), source);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad grid json: ") + e.what(), source);
  }
}

/// Datasets back to the canonical input CSV, one row per stored improvement.
/// Runs whose last improvement precedes t_max get one trailing non-improving
/// row at t_max, so the budget survives a re-parse.
inline std::string export_dataset_csv(const std::vector<AlgorithmDataset>& datasets) {
  std::string out{kCsvHeader};
  out += "\n";
  for (const auto& ds : datasets) {
    for (const auto& run : ds.runs()) {
      // run ids are "<instance>:<run>"
      const std::size_t sep = run.id().find(':');
      const std::string instance = sep == std::string::npos ? "0" : run.id().substr(0, sep);
      const std::string run_no = sep == std::string::npos ? run.id() : run.id().substr(sep + 1);
      const std::string prefix = ds.algorithm() + "," + ds.function_id() + "," +
                                 std::to_string(ds.dimension()) + "," + instance + "," + run_no +
                                 ",";
      for (const auto& p : run.points())
        out += prefix + std::to_string(p.t) + "," + format_value(p.z) + "\n";
      if (run.points().back().t < ds.t_max())
        out += prefix + std::to_string(ds.t_max()) + "," +
               format_value(run.points().back().z) + "\n";
    }
  }
  return out;
}

}  // namespace attainkit

#endif  // ATTAINKIT_IO_HPP
