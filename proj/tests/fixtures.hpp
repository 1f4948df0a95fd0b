// The worked 3-run example shared across the suites: linear scale [0, 10],
// budget 8, runs
//   R1 = (1,8) (3,4) (6,2)
//   R2 = (1,9) (2,5) (7,1)
//   R3 = (1,7) (4,6) (5,3)

#ifndef ATTAINKIT_TESTS_FIXTURES_HPP
#define ATTAINKIT_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "attainkit/core.hpp"

namespace fixtures {

using attainkit::AlgorithmDataset;
using attainkit::QualityScale;
using attainkit::Run;
using attainkit::ScaleKind;
using attainkit::TrajectoryPoint;

inline QualityScale linear_scale() { return QualityScale(ScaleKind::linear, 0.0, 10.0); }

inline std::vector<std::vector<TrajectoryPoint>> three_run_points() {
  return {{{1, 8.0}, {3, 4.0}, {6, 2.0}},
          {{1, 9.0}, {2, 5.0}, {7, 1.0}},
          {{1, 7.0}, {4, 6.0}, {5, 3.0}}};
}

inline AlgorithmDataset three_run_dataset() {
  std::vector<Run> runs;
  const auto lists = three_run_points();
  for (std::size_t i = 0; i < lists.size(); ++i)
    runs.emplace_back("0:" + std::to_string(i + 1), lists[i], 8);
  return AlgorithmDataset("fixture", "f1", 2, std::move(runs), linear_scale());
}

inline Run single_run_r1() { return Run("0:1", three_run_points()[0], 8); }

/// The fixture in canonical CSV form.
inline std::string three_run_csv() {
  return "algorithm,function,dimension,instance,run,evaluations,raw_y\n"
         "fixture,f1,2,0,1,1,8\n"
         "fixture,f1,2,0,1,3,4\n"
         "fixture,f1,2,0,1,6,2\n"
         "fixture,f1,2,0,1,8,2\n"
         "fixture,f1,2,0,2,1,9\n"
         "fixture,f1,2,0,2,2,5\n"
         "fixture,f1,2,0,2,7,1\n"
         "fixture,f1,2,0,2,8,1\n"
         "fixture,f1,2,0,3,1,7\n"
         "fixture,f1,2,0,3,4,6\n"
         "fixture,f1,2,0,3,5,3\n"
         "fixture,f1,2,0,3,8,3\n";
}

/// The same runs in the IOH-style layout.
inline std::string three_run_ioh() {
  return "% algorithm = fixture\n"
         "% function = f1\n"
         "% dimension = 2\n"
         "% instance = 0\n"
         "1 8\n"
         "3 4\n"
         "6 2\n"
         "8 2\n"
         "\n"
         "1 9\n"
         "2 5\n"
         "7 1\n"
         "8 1\n"
         "\n"
         "1 7\n"
         "4 6\n"
         "5 3\n"
         "8 3\n";
}

}  // namespace fixtures

#endif  // ATTAINKIT_TESTS_FIXTURES_HPP
