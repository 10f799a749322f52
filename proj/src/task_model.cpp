#include "nilm/task_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "nilm/error.hpp"
#include "nilm/generate.hpp"
#include "nilm/numeric_tasks.hpp"
#include "nilm/regular_language.hpp"
#include "nilm/rng.hpp"
#include "nilm/string_tasks.hpp"

namespace nilm {
namespace {

constexpr std::array<TaskId, kTaskCount> kAllTasks{
    TaskId::odd,        TaskId::even,        TaskId::odd_even,   TaskId::decimal_op,
    TaskId::decimal_word_op, TaskId::mean,   TaskId::median,     TaskId::mode,
    TaskId::regex_012,  TaskId::regex_abcde, TaskId::palindrome, TaskId::anagram,
    TaskId::isogram,    TaskId::tautonym,    TaskId::str_length, TaskId::unique_count,
    TaskId::parity,     TaskId::vowels,      TaskId::max_freq_char,
};

constexpr std::array<std::string_view, kTaskCount> kTaskNames{
    "odd",        "even",        "odd_even",   "decimal_op", "decimal_word_op",
    "mean",       "median",      "mode",       "regex_012",  "regex_abcde",
    "palindrome", "anagram",     "isogram",    "tautonym",   "str_length",
    "unique_count", "parity",    "vowels",     "max_freq_char",
};

constexpr LabelSpace kBinary{0, 1};
constexpr LabelSpace kDigits{0, 9};
constexpr SplitSizes kDefaultSizes{10000, 1000, 1000};
constexpr SplitSizes kRegexSizes{10000, 1000, 2000};

std::array<TaskSpec, kTaskCount> make_specs() {
  namespace n = numeric;
  namespace s = strings;
  return {{
      {TaskId::odd, kBinary, n::kParityMin, n::kParityMax, {}, 0, 0, kDefaultSizes},
      {TaskId::even, kBinary, n::kParityMin, n::kParityMax, {}, 0, 0, kDefaultSizes},
      {TaskId::odd_even, kBinary, n::kParityMin, n::kParityMax, {}, 0, 0, kDefaultSizes},
      {TaskId::decimal_op, kDigits, n::kOperandMin, n::kOperandMax, {}, 0, 0, kDefaultSizes},
      {TaskId::decimal_word_op, kDigits, n::kOperandMin, n::kOperandMax, {}, 0, 0, kDefaultSizes},
      {TaskId::mean, kDigits, n::kSetValueMin, n::kSetValueMax, {}, n::kSetMinLength,
       n::kSetMaxLength, kDefaultSizes},
      {TaskId::median, kDigits, n::kSetValueMin, n::kSetValueMax, {}, n::kSetMinLength,
       n::kSetMaxLength, kDefaultSizes},
      {TaskId::mode, kDigits, n::kModeValueMin, n::kModeValueMax, {}, n::kSetMinLength,
       n::kSetMaxLength, kDefaultSizes},
      {TaskId::regex_012, kBinary, 0, 0, "012", 1, 20, kRegexSizes},
      {TaskId::regex_abcde, kBinary, 0, 0, "abcde", 1, 30, kRegexSizes},
      {TaskId::palindrome, kBinary, 0, 0, s::kLetters, 1, 15, kDefaultSizes},
      {TaskId::anagram, kBinary, 0, 0, s::kLetters, 2, 15, kDefaultSizes},
      {TaskId::isogram, kBinary, 0, 0, s::kLetters, 1, 52, kDefaultSizes},
      {TaskId::tautonym, kBinary, 0, 0, s::kLetters, 1, 5, kDefaultSizes},
      {TaskId::str_length, kDigits, 0, 0, s::kLowercase, 1, 10, kDefaultSizes},
      {TaskId::unique_count, kDigits, 0, 0, s::kFirstTen, 10, 30, kDefaultSizes},
      {TaskId::parity, kBinary, 0, 0, s::kBits, 1, 20, kDefaultSizes},
      {TaskId::vowels, kBinary, 0, 0, s::kLowercase, 3, 10, kDefaultSizes},
      {TaskId::max_freq_char, kDigits, 0, 0, s::kFirstTen, 5, 30, kDefaultSizes},
  }};
}

const std::array<TaskSpec, kTaskCount> kSpecs = make_specs();

std::size_t task_index(TaskId task) { return static_cast<std::size_t>(task); }

}  // namespace

std::span<const TaskId> all_tasks() { return kAllTasks; }

std::string_view task_name(TaskId task) { return kTaskNames.at(task_index(task)); }

std::optional<TaskId> find_task(std::string_view name) {
  for (std::size_t i = 0; i < kTaskCount; ++i)
    if (kTaskNames[i] == name) return kAllTasks[i];
  return std::nullopt;
}

TaskId parse_task(std::string_view name) {
  if (auto t = find_task(name)) return *t;
  std::string valid;
  for (auto n : kTaskNames) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw ArgumentError("unknown task '" + std::string(name) + "' (expected one of: " + valid + ")");
}

TaskFamily family_of(TaskId task) {
  switch (task) {
    case TaskId::odd:
    case TaskId::even:
    case TaskId::odd_even:
    case TaskId::decimal_op:
    case TaskId::decimal_word_op:
    case TaskId::mean:
    case TaskId::median:
    case TaskId::mode:
      return TaskFamily::numeric;
    case TaskId::regex_012:
    case TaskId::regex_abcde:
      return TaskFamily::regular_language;
    default:
      return TaskFamily::string;
  }
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

std::string_view format_name(Format format) { return format == Format::jsonl ? "jsonl" : "tsv"; }

Format parse_format(std::string_view name) {
  if (name == "jsonl") return Format::jsonl;
  if (name == "tsv") return Format::tsv;
  throw ArgumentError("unknown format '" + std::string(name) + "' (expected jsonl or tsv)");
}

const TaskSpec& task_spec(TaskId task) { return kSpecs.at(task_index(task)); }

std::string render_input(TaskId task, const Payload& payload) {
  switch (family_of(task)) {
    case TaskFamily::numeric:
      return numeric::render(task, payload);
    case TaskFamily::regular_language:
      if (auto* s = std::get_if<StringInstance>(&payload)) return regex::render(task, *s);
      break;
    case TaskFamily::string:
      if (auto* s = std::get_if<StringInstance>(&payload)) return strings::render(task, *s);
      break;
  }
  throw ArgumentError("payload type does not match task " + std::string(task_name(task)));
}

Payload parse_input(TaskId task, std::string_view input) {
  switch (family_of(task)) {
    case TaskFamily::numeric: return numeric::parse(task, input);
    case TaskFamily::regular_language: return regex::parse(task, input);
    case TaskFamily::string: return strings::parse(task, input);
  }
  throw ArgumentError("unreachable");
}

int oracle_label(TaskId task, const Payload& payload) {
  return std::visit(
      [task](const auto& p) -> int {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StringInstance>) {
          if (family_of(task) == TaskFamily::regular_language) return regex::oracle(task, p);
          if (family_of(task) == TaskFamily::string) return strings::oracle(task, p);
        } else {
          if (family_of(task) == TaskFamily::numeric) return numeric::oracle(task, p);
        }
        throw ArgumentError("payload type does not match task " + std::string(task_name(task)));
      },
      payload);
}

Example render_example(TaskId task, const Payload& payload) {
  Example ex;
  ex.input = render_input(task, payload);
  ex.label = oracle_label(task, payload);
  return ex;
}

Example parse_example(TaskId task, std::string_view line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty()) throw ParseError("empty record", line_number);

  Example ex;
  if (line.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
    }
    if (!j.is_object()) throw ParseError("record is not an object", line_number);
    if (!j.contains("input") || !j["input"].is_string())
      throw ParseError("record missing string field \"input\"", line_number);
    if (!j.contains("label") || !j["label"].is_number_integer())
      throw ParseError("record missing integer field \"label\"", line_number);
    ex.input = j["input"].get<std::string>();
    ex.label = j["label"].get<int>();
  } else {
    const auto tab = line.rfind('\t');
    if (tab == std::string_view::npos) throw ParseError("expected input<TAB>label", line_number);
    ex.input = std::string(line.substr(0, tab));
    const auto label_text = line.substr(tab + 1);
    int label = 0;
    const auto* end = label_text.data() + label_text.size();
    auto [ptr, ec] = std::from_chars(label_text.data(), end, label);
    if (ec != std::errc{} || ptr != end || label_text.empty())
      throw ParseError("label is not an integer", line_number);
    ex.label = label;
  }

  try {
    (void)parse_input(task, ex.input);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_number);
  } catch (const RangeError& e) {
    throw ParseError(e.what(), line_number);
  }
  if (!task_spec(task).labels.contains(ex.label))
    throw ParseError("label " + std::to_string(ex.label) + " outside label space", line_number);
  return ex;
}

std::string format_record(const Example& example, Format format) {
  if (format == Format::jsonl) {
    nlohmann::json j;
    j["input"] = example.input;
    j["label"] = example.label;
    return j.dump();
  }
  return example.input + '\t' + std::to_string(example.label);
}

// Sweep plan.

std::size_t default_runs_for_size(std::size_t size) { return size < 1000 ? 10 : 5; }

SweepPlan SweepPlan::standard(std::uint64_t base_seed) {
  SweepPlan plan;
  plan.sizes = {10, 20, 40, 80, 160, 320, 640, 1280, 2560, 5120, 6000, 7000, 8000, 9000, 10000};
  for (auto s : plan.sizes) plan.runs.push_back(default_runs_for_size(s));
  plan.base_seed = base_seed;
  return plan;
}

std::size_t SweepPlan::runs_for(std::size_t size) const {
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] == size) return runs.at(i);
  throw ArgumentError("training size " + std::to_string(size) + " is not in the sweep plan");
}

std::vector<Example> subsample_training_set(const Dataset& dataset, std::size_t size,
                                            std::size_t run, std::uint64_t base_seed) {
  const auto& pool = dataset[Split::train];
  if (size > pool.size())
    throw RangeError("subsample size " + std::to_string(size) + " exceeds training pool of " +
                     std::to_string(pool.size()));
  if (size == pool.size()) return pool;

  Rng rng(derive_seed(base_seed, {tag(StreamPurpose::subsample),
                                  static_cast<std::uint64_t>(dataset.task), size, run}));
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `size` positions are a uniform sample.
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + rng.index(pool.size() - i);
    std::swap(order[i], order[j]);
  }
  order.resize(size);
  std::sort(order.begin(), order.end());

  std::vector<Example> out;
  out.reserve(size);
  for (auto i : order) out.push_back(pool[i]);
  return out;
}

ValidationReport validate_dataset(const Dataset& dataset, const TaskSpec& spec) {
  ValidationReport report;
  const TaskId task = spec.task;
  const std::string name(task_name(task));
  if (dataset.task != task) report.fail("dataset task does not match spec task " + name);

  const SplitSizes actual = dataset.sizes();
  for (Split split : kSplits) {
    if (actual[split] != spec.sizes[split])
      report.fail(std::string(split_name(split)) + " has " + std::to_string(actual[split]) +
                  " examples, expected " + std::to_string(spec.sizes[split]));
  }

  std::unordered_map<std::string_view, std::size_t> first_split;  // input -> split index
  for (std::size_t si = 0; si < kSplits.size(); ++si) {
    const Split split = kSplits[si];
    const auto& examples = dataset[split];
    std::unordered_set<std::string_view> seen;
    std::vector<std::size_t> label_counts(static_cast<std::size_t>(spec.labels.count()), 0);

    for (const auto& ex : examples) {
      if (!seen.insert(ex.input).second) ++report.duplicates_within;
      auto [it, inserted] = first_split.emplace(ex.input, si);
      if (!inserted && it->second != si) ++report.duplicates_across;

      if (!spec.labels.contains(ex.label)) {
        ++report.bad_labels;
        continue;
      }
      ++label_counts[static_cast<std::size_t>(ex.label - spec.labels.lo)];
      try {
        if (oracle_label(task, parse_input(task, ex.input)) != ex.label) ++report.oracle_mismatches;
      } catch (const Error&) {
        ++report.unparseable;
      }
    }

    if (examples.empty()) continue;
    const auto quota = label_quota(task, split, actual);
    const double tolerance = spec.labels.binary() ? 0.02 : 0.05;
    for (std::size_t l = 0; l < label_counts.size(); ++l) {
      const double expected = static_cast<double>(quota[l]);
      const double diff = std::abs(static_cast<double>(label_counts[l]) - expected);
      // One example of slack absorbs rounding in small splits.
      if (diff > tolerance * expected + 1.0) {
        report.fail(std::string(split_name(split)) + " label " +
                    std::to_string(static_cast<int>(l) + spec.labels.lo) + " has " +
                    std::to_string(label_counts[l]) + " examples, expected " +
                    std::to_string(quota[l]) + " (label balance)");
      }
    }
  }

  if (report.duplicates_within > 0)
    report.fail(std::to_string(report.duplicates_within) + " duplicate inputs within splits");
  if (report.duplicates_across > 0)
    report.fail(std::to_string(report.duplicates_across) +
                " inputs shared across splits (leakage)");
  if (report.bad_labels > 0)
    report.fail(std::to_string(report.bad_labels) + " labels outside the label space");
  if (report.unparseable > 0)
    report.fail(std::to_string(report.unparseable) + " inputs violate the task format");
  if (report.oracle_mismatches > 0)
    report.fail(std::to_string(report.oracle_mismatches) + " labels disagree with the oracle");
  return report;
}

}  // namespace nilm
