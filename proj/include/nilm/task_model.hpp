#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nilm {

enum class TaskId : std::uint8_t {
  odd,
  even,
  odd_even,
  decimal_op,
  decimal_word_op,
  mean,
  median,
  mode,
  regex_012,
  regex_abcde,
  palindrome,
  anagram,
  isogram,
  tautonym,
  str_length,
  unique_count,
  parity,
  vowels,
  max_freq_char,
};

inline constexpr std::size_t kTaskCount = 19;

std::span<const TaskId> all_tasks();
std::string_view task_name(TaskId task);
std::optional<TaskId> find_task(std::string_view name);
/// Like find_task but throws ArgumentError listing the valid names.
TaskId parse_task(std::string_view name);

enum class TaskFamily { numeric, regular_language, string };
TaskFamily family_of(TaskId task);

enum class Split : std::uint8_t { train, dev, test };
inline constexpr std::array<Split, 3> kSplits{Split::train, Split::dev, Split::test};
std::string_view split_name(Split split);

enum class Format { jsonl, tsv };
std::string_view format_name(Format format);
Format parse_format(std::string_view name);

struct Example {
  std::string input;
  int label = 0;

  friend bool operator==(const Example&, const Example&) = default;
};

struct SplitSizes {
  std::size_t train = 10000;
  std::size_t dev = 1000;
  std::size_t test = 1000;

  std::size_t operator[](Split s) const {
    return s == Split::train ? train : s == Split::dev ? dev : test;
  }
  std::size_t total() const { return train + dev + test; }

  friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};

/// Contiguous integer label range [lo, hi].
struct LabelSpace {
  int lo = 0;
  int hi = 1;

  int count() const { return hi - lo + 1; }
  bool contains(int label) const { return label >= lo && label <= hi; }
  bool binary() const { return count() == 2; }
};

/// Identity, label space, operand bounds and split sizes of one task.
///
/// Numeric tasks bound operand values by [operand_min, operand_max] and list
/// lengths by [min_length, max_length]. String and regex tasks draw symbols
/// from `alphabet`; the length bounds apply to each member (pair tasks) or to
/// the whole string.
struct TaskSpec {
  TaskId task;
  LabelSpace labels;
  std::int64_t operand_min = 0;
  std::int64_t operand_max = 0;
  std::string_view alphabet;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  SplitSizes sizes;
};

const TaskSpec& task_spec(TaskId task);

// Task-native payloads.

enum class ParityClaim { odd, even };

struct ParityQuery {
  std::int64_t n = 0;
  std::optional<ParityClaim> claim;  // present iff task is odd_even
};

enum class ArithOp { subtract, divide };
enum class Notation { decimal, word };

struct ArithmeticInstance {
  std::int64_t a = 0;
  std::int64_t b = 0;
  ArithOp op = ArithOp::subtract;
  Notation a_notation = Notation::decimal;
  Notation b_notation = Notation::decimal;
};

struct NumberSet {
  std::vector<std::int64_t> values;
};

/// A character string, or a pair of strings for anagram/tautonym. Regex
/// tasks use `s` as the symbol string.
struct StringInstance {
  std::string s;
  std::optional<std::string> t;
};

using Payload = std::variant<ParityQuery, ArithmeticInstance, NumberSet, StringInstance>;

/// Surface string for a payload. Throws RangeError when the payload is out of
/// the task's bounds.
std::string render_input(TaskId task, const Payload& payload);

/// Inverse of render_input. Throws ParseError on malformed input and
/// RangeError when a well-formed input is out of bounds.
Payload parse_input(TaskId task, std::string_view input);

/// Label of a payload under the task oracle. Throws ConstraintError when the
/// payload has no well-defined label (tied mode, fractional mean, ...).
int oracle_label(TaskId task, const Payload& payload);

/// Rendered input plus oracle label.
Example render_example(TaskId task, const Payload& payload);

/// One dataset record, JSONL (`{"input":...,"label":...}`) or TSV
/// (`input<TAB>label`), detected from the first character. The input must
/// parse under the task's format rule and the label must be in range.
Example parse_example(TaskId task, std::string_view line, std::size_t line_number = 0);

std::string format_record(const Example& example, Format format);

struct Dataset {
  TaskId task = TaskId::odd;
  std::array<std::vector<Example>, 3> splits;

  std::vector<Example>& operator[](Split s) { return splits[static_cast<std::size_t>(s)]; }
  const std::vector<Example>& operator[](Split s) const {
    return splits[static_cast<std::size_t>(s)];
  }
  SplitSizes sizes() const { return {splits[0].size(), splits[1].size(), splits[2].size()}; }
};

/// The learning-curve sweep: 15 training sizes with 10 runs below 1000
/// examples and 5 runs otherwise.
struct SweepPlan {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> runs;
  std::uint64_t base_seed = 0;

  static SweepPlan standard(std::uint64_t base_seed);
  std::size_t runs_for(std::size_t size) const;
};

std::size_t default_runs_for_size(std::size_t size);

/// Uniform draw of `size` training examples without replacement, returned in
/// pool order. The stream is derived from (task, size, run, base_seed).
std::vector<Example> subsample_training_set(const Dataset& dataset, std::size_t size,
                                            std::size_t run, std::uint64_t base_seed);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t duplicates_within = 0;
  std::size_t duplicates_across = 0;
  std::size_t bad_labels = 0;
  std::size_t oracle_mismatches = 0;
  std::size_t unparseable = 0;

  void fail(std::string message) {
    ok = false;
    failures.push_back(std::move(message));
  }
};

/// Checks split sizes, split hygiene, label range, oracle agreement and label
/// balance against the planned per-label quotas.
ValidationReport validate_dataset(const Dataset& dataset, const TaskSpec& spec);

}  // namespace nilm
