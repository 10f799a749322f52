#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nilm/exec.hpp"
#include "nilm/task_model.hpp"

// Scoring, learning curves and paired significance tests.
namespace nilm::eval {

struct Prediction {
  std::size_t index = 0;
  int label = 0;
};

/// Predicted labels for one (task, size, run, model) cell.
struct PredictionFile {
  std::vector<Prediction> records;
};

/// TSV: `index<TAB>predicted_label` per line.
PredictionFile parse_predictions(std::string_view text);
PredictionFile read_predictions(const std::filesystem::path& path);
std::string format_predictions(const PredictionFile& predictions);

/// Fraction of gold examples predicted correctly. Throws AlignmentError
/// unless the indices cover 0..gold.size()-1 exactly once, and RangeError
/// when `labels` is given and a prediction falls outside it.
double accuracy(const PredictionFile& predictions, std::span<const Example> gold,
                std::optional<LabelSpace> labels = std::nullopt, Exec exec = Exec::parallel);

/// Accuracy per (training size, run).
using CellAccuracies = std::map<std::pair<std::size_t, std::size_t>, double>;

struct CurvePoint {
  std::size_t size = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n = 0;
  /// Per-run accuracies; empty when loaded from CSV.
  std::vector<double> runs;
};

struct Curve {
  std::string model;
  std::string task;
  std::vector<CurvePoint> points;
};

/// Mean accuracy per plan size over the plan's runs. Throws
/// CompletenessError listing every absent (size, run) pair.
Curve build_curve(std::string model, std::string task, const CellAccuracies& cells,
                  const SweepPlan& plan);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_tailed = 1.0;
  /// One-tailed p for mean(a - b) > 0 and mean(a - b) < 0.
  double p_greater = 0.5;
  double p_less = 0.5;
  std::size_t n = 0;
  /// All differences equal and nonzero: t is infinite and p is 0.
  bool degenerate_variance = false;
};

/// Paired t-test on d = a - b with sample standard deviation. Throws
/// ArgumentError when lengths differ or n < 2.
TTestResult paired_ttest(std::span<const double> a, std::span<const double> b);

/// Pairs the mean accuracies of two sets of curves point by point (same
/// task, same training size), concatenating across curves in order.
std::pair<std::vector<double>, std::vector<double>> paired_means(std::span<const Curve> a,
                                                                 std::span<const Curve> b);

struct Comparison {
  std::string baseline;
  TTestResult result;
};

// Reports.

/// Header `size,mean,stddev,n` and one row per point; full precision.
std::string curve_csv(const Curve& curve);
/// Parses curve_csv output (per-run values are not stored in the CSV).
Curve parse_curve_csv(std::string_view csv, std::string model = {}, std::string task = {});

nlohmann::json to_json(const Curve& curve);
Curve curve_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TTestResult& result);
/// `baseline,p_value` rows.
std::string ttest_table_csv(std::span<const Comparison> comparisons);
nlohmann::json ttest_table_json(std::span<const Comparison> comparisons);

/// Accuracy table: one row per training size, one column per curve, means as
/// whole percentages.
std::string accuracy_table_csv(std::span<const Curve> curves);

}  // namespace nilm::eval
