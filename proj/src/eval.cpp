#include "nilm/eval.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "nilm/dataset_io.hpp"
#include "nilm/error.hpp"
#include "nilm/kernels.hpp"
#include "nilm/special_functions.hpp"

namespace nilm::eval {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw ParseError(std::string("bad ") + what + ": \"" + std::string(text) + "\"", line);
  return value;
}

/// Splits text into lines, dropping a trailing '\r' and blank lines.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.emplace_back(number, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

}  // namespace

PredictionFile parse_predictions(std::string_view text) {
  PredictionFile file;
  for (auto [number, line] : lines_of(text)) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected index<TAB>label", number);
    Prediction p;
    p.index = parse_number<std::size_t>(line.substr(0, tab), number, "index");
    p.label = parse_number<int>(line.substr(tab + 1), number, "label");
    file.records.push_back(p);
  }
  return file;
}

PredictionFile read_predictions(const std::filesystem::path& path) {
  try {
    return parse_predictions(io::read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_predictions(const PredictionFile& predictions) {
  std::string out;
  for (const auto& p : predictions.records)
    out += std::to_string(p.index) + '\t' + std::to_string(p.label) + '\n';
  return out;
}

double accuracy(const PredictionFile& predictions, std::span<const Example> gold,
                std::optional<LabelSpace> labels, Exec exec) {
  if (gold.empty()) throw AlignmentError("gold split is empty");
  const std::size_t n = gold.size();
  std::vector<int> predicted(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto& p : predictions.records) {
    if (p.index >= n)
      throw AlignmentError("prediction index " + std::to_string(p.index) +
                           " outside gold split of " + std::to_string(n));
    if (seen[p.index]) throw AlignmentError("duplicate prediction index " + std::to_string(p.index));
    if (labels && !labels->contains(p.label))
      throw RangeError("predicted label " + std::to_string(p.label) + " outside label space");
    seen[p.index] = true;
    predicted[p.index] = p.label;
  }
  std::size_t missing = 0;
  std::size_t first_missing = 0;
  for (std::size_t i = n; i-- > 0;)
    if (!seen[i]) {
      ++missing;
      first_missing = i;
    }
  if (missing > 0)
    throw AlignmentError(std::to_string(missing) + " gold indices have no prediction (first: " +
                         std::to_string(first_missing) + ")");

  std::vector<int> gold_labels(n);
  for (std::size_t i = 0; i < n; ++i) gold_labels[i] = gold[i].label;
  const std::size_t correct = exec == Exec::parallel
                                  ? kernels::count_correct_omp(predicted, gold_labels)
                                  : kernels::count_correct_serial(predicted, gold_labels);
  return static_cast<double>(correct) / static_cast<double>(n);
}

Curve build_curve(std::string model, std::string task, const CellAccuracies& cells,
                  const SweepPlan& plan) {
  Curve curve{std::move(model), std::move(task), {}};
  std::string missing;
  std::size_t missing_count = 0;
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    CurvePoint point;
    point.size = plan.sizes[i];
    for (std::size_t run = 0; run < plan.runs.at(i); ++run) {
      auto it = cells.find({point.size, run});
      if (it == cells.end()) {
        ++missing_count;
        if (!missing.empty()) missing += ", ";
        missing += "(" + std::to_string(point.size) + ", " + std::to_string(run) + ")";
        continue;
      }
      point.runs.push_back(it->second);
    }
    if (point.runs.size() == plan.runs[i]) {
      point.n = point.runs.size();
      point.mean = stats::mean(point.runs);
      point.stddev = stats::sample_stddev(point.runs);
    }
    curve.points.push_back(std::move(point));
  }
  if (missing_count > 0)
    throw CompletenessError(std::to_string(missing_count) + " (size, run) cells missing: " + missing);
  return curve;
}

TTestResult paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ArgumentError("paired t-test needs series of equal length (" + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()) + ")");
  if (a.size() < 2) throw ArgumentError("paired t-test needs at least 2 pairs");

  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double m = stats::mean(d);
  const double sd = stats::sample_stddev(d);

  TTestResult r;
  r.n = d.size();
  r.df = static_cast<double>(r.n - 1);
  if (sd == 0.0) {
    if (m == 0.0) {
      r.t = 0.0;
      r.p_two_tailed = 1.0;
      r.p_greater = r.p_less = 0.5;
    } else {
      r.degenerate_variance = true;
      r.t = m > 0.0 ? HUGE_VAL : -HUGE_VAL;
      r.p_two_tailed = 0.0;
      r.p_greater = m > 0.0 ? 0.0 : 1.0;
      r.p_less = 1.0 - r.p_greater;
    }
    return r;
  }
  r.t = m / (sd / std::sqrt(static_cast<double>(r.n)));
  r.p_two_tailed = stats::student_t_two_tailed(r.t, r.df);
  r.p_greater = stats::student_t_cdf(-r.t, r.df);
  r.p_less = stats::student_t_cdf(r.t, r.df);
  return r;
}

std::pair<std::vector<double>, std::vector<double>> paired_means(std::span<const Curve> a,
                                                                 std::span<const Curve> b) {
  if (a.size() != b.size()) throw ArgumentError("curve lists differ in length");
  std::pair<std::vector<double>, std::vector<double>> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].task != b[i].task)
      throw ArgumentError("paired curves are for different tasks: " + a[i].task + " vs " + b[i].task);
    if (a[i].points.size() != b[i].points.size())
      throw ArgumentError("paired curves for " + a[i].task + " have different sizes");
    for (std::size_t p = 0; p < a[i].points.size(); ++p) {
      if (a[i].points[p].size != b[i].points[p].size)
        throw ArgumentError("paired curves for " + a[i].task + " differ at point " + std::to_string(p));
      out.first.push_back(a[i].points[p].mean);
      out.second.push_back(b[i].points[p].mean);
    }
  }
  return out;
}

std::string curve_csv(const Curve& curve) {
  std::string out = "size,mean,stddev,n\n";
  for (const auto& p : curve.points)
    out += std::to_string(p.size) + ',' + format_double(p.mean) + ',' + format_double(p.stddev) +
           ',' + std::to_string(p.n) + '\n';
  return out;
}

Curve parse_curve_csv(std::string_view csv, std::string model, std::string task) {
  Curve curve{std::move(model), std::move(task), {}};
  const auto lines = lines_of(csv);
  if (lines.empty() || lines.front().second != "size,mean,stddev,n")
    throw ParseError("curve CSV must start with header size,mean,stddev,n", 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto fields = split_commas(line);
    if (fields.size() != 4) throw ParseError("expected 4 fields", number);
    CurvePoint p;
    p.size = parse_number<std::size_t>(fields[0], number, "size");
    p.mean = std::strtod(std::string(fields[1]).c_str(), nullptr);
    p.stddev = std::strtod(std::string(fields[2]).c_str(), nullptr);
    p.n = parse_number<std::size_t>(fields[3], number, "n");
    curve.points.push_back(std::move(p));
  }
  return curve;
}

nlohmann::json to_json(const Curve& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points)
    points.push_back(
        {{"size", p.size}, {"mean", p.mean}, {"stddev", p.stddev}, {"n", p.n}, {"runs", p.runs}});
  return {{"model", curve.model}, {"task", curve.task}, {"points", points}};
}

Curve curve_from_json(const nlohmann::json& j) {
  try {
    Curve curve;
    curve.model = j.at("model").get<std::string>();
    curve.task = j.at("task").get<std::string>();
    for (const auto& p : j.at("points")) {
      CurvePoint point;
      point.size = p.at("size").get<std::size_t>();
      point.mean = p.at("mean").get<double>();
      point.stddev = p.at("stddev").get<double>();
      point.n = p.at("n").get<std::size_t>();
      if (p.contains("runs")) point.runs = p["runs"].get<std::vector<double>>();
      curve.points.push_back(std::move(point));
    }
    return curve;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed curve JSON: ") + e.what());
  }
}

nlohmann::json to_json(const TTestResult& r) {
  nlohmann::json j;
  // JSON has no infinity; a degenerate test reports t as null.
  j["t"] = std::isfinite(r.t) ? nlohmann::json(r.t) : nlohmann::json(nullptr);
  j["df"] = r.df;
  j["n"] = r.n;
  j["p_two_tailed"] = r.p_two_tailed;
  j["p_one_tailed_greater"] = r.p_greater;
  j["p_one_tailed_less"] = r.p_less;
  j["degenerate_variance"] = r.degenerate_variance;
  return j;
}

std::string ttest_table_csv(std::span<const Comparison> comparisons) {
  std::string out = "baseline,p_value\n";
  for (const auto& c : comparisons) out += c.baseline + ',' + format_double(c.result.p_two_tailed) + '\n';
  return out;
}

nlohmann::json ttest_table_json(std::span<const Comparison> comparisons) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : comparisons) {
    auto row = to_json(c.result);
    row["baseline"] = c.baseline;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string accuracy_table_csv(std::span<const Curve> curves) {
  std::set<std::size_t> sizes;
  for (const auto& c : curves)
    for (const auto& p : c.points) sizes.insert(p.size);
  std::string out = "size";
  for (const auto& c : curves) out += ',' + c.model + '/' + c.task;
  out += '\n';
  for (auto size : sizes) {
    out += std::to_string(size);
    for (const auto& c : curves) {
      out += ',';
      for (const auto& p : c.points)
        if (p.size == size) out += std::to_string(std::lround(p.mean * 100.0));
    }
    out += '\n';
  }
  return out;
}

}  // namespace nilm::eval
