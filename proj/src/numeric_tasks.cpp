#include "nilm/numeric_tasks.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <unordered_map>

#include "nilm/error.hpp"

namespace nilm::numeric {
namespace {

constexpr std::array<std::string_view, 20> kOnes{
    "",        "one",     "two",       "three",    "four",     "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
constexpr std::array<std::string_view, 10> kTens{"",      "",      "twenty",  "thirty", "forty",
                                                 "fifty", "sixty", "seventy", "eighty", "ninety"};

std::string below_hundred(std::int64_t n) {
  if (n < 20) return std::string(kOnes[static_cast<std::size_t>(n)]);
  std::string out(kTens[static_cast<std::size_t>(n / 10)]);
  if (n % 10 != 0) {
    out += '-';
    out += kOnes[static_cast<std::size_t>(n % 10)];
  }
  return out;
}

std::string below_thousand(std::int64_t n) {
  std::string out;
  if (n >= 100) {
    out = std::string(kOnes[static_cast<std::size_t>(n / 100)]) + " hundred";
    n %= 100;
    if (n != 0) out += ' ';
  }
  if (n != 0) out += below_hundred(n);
  return out;
}

const std::unordered_map<std::string, std::int64_t>& word_table() {
  static const auto table = [] {
    std::unordered_map<std::string, std::int64_t> t;
    t.reserve(static_cast<std::size_t>(kOperandMax));
    for (std::int64_t n = kOperandMin; n <= kOperandMax; ++n) t.emplace(number_to_words(n), n);
    return t;
  }();
  return table;
}

/// Canonical base-10 integer: optional '-', no '+', no leading zeros.
std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string_view digits = s.front() == '-' ? s.substr(1) : s;
  if (digits.empty() || (digits.size() > 1 && digits.front() == '0')) return std::nullopt;
  if (s.front() == '-' && digits == "0") return std::nullopt;
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

bool is_parity_task(TaskId t) {
  return t == TaskId::odd || t == TaskId::even || t == TaskId::odd_even;
}
bool is_arithmetic_task(TaskId t) {
  return t == TaskId::decimal_op || t == TaskId::decimal_word_op;
}
bool is_set_task(TaskId t) { return t == TaskId::mean || t == TaskId::median || t == TaskId::mode; }

std::string_view claim_name(ParityClaim c) { return c == ParityClaim::odd ? "odd" : "even"; }

void check_set_bounds(TaskId task, const NumberSet& set) {
  const auto& spec = task_spec(task);
  if (set.values.size() < spec.min_length || set.values.size() > spec.max_length)
    throw RangeError(std::string(task_name(task)) + " list length " +
                     std::to_string(set.values.size()) + " outside [" +
                     std::to_string(spec.min_length) + ", " + std::to_string(spec.max_length) + "]");
  for (auto v : set.values)
    if (v < spec.operand_min || v > spec.operand_max)
      throw RangeError(std::string(task_name(task)) + " value " + std::to_string(v) +
                       " outside [" + std::to_string(spec.operand_min) + ", " +
                       std::to_string(spec.operand_max) + "]");
}

std::string render_operand(std::int64_t v, Notation notation) {
  return notation == Notation::word ? number_to_words(v) : std::to_string(v);
}

std::int64_t draw_with_parity(bool odd, Rng& rng) {
  // 10000 odd and 10000 even values in [1, 20000].
  const std::int64_t k = rng.uniform_int(0, 9999);
  return odd ? 2 * k + 1 : 2 * k + 2;
}

std::string label_error(TaskId task, int label) {
  return std::string(task_name(task)) + ": label " + std::to_string(label) +
         " outside label space";
}

}  // namespace

std::string number_to_words(std::int64_t n) {
  if (n < kOperandMin || n > kOperandMax)
    throw RangeError("number_to_words: " + std::to_string(n) + " outside [1, 10000]");
  std::string out;
  if (n >= 1000) {
    out = below_hundred(n / 1000) + " thousand";
    n %= 1000;
    if (n != 0) out += ' ';
  }
  if (n != 0) out += below_thousand(n);
  return out;
}

std::optional<std::int64_t> words_to_number(std::string_view words) {
  const auto& table = word_table();
  auto it = table.find(std::string(words));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

int oracle(TaskId task, const ParityQuery& q) {
  const bool odd = q.n % 2 != 0;
  switch (task) {
    case TaskId::odd: return odd ? 1 : 0;
    case TaskId::even: return odd ? 0 : 1;
    case TaskId::odd_even:
      if (!q.claim) throw ConstraintError("odd_even query has no claim");
      return (*q.claim == ParityClaim::odd) == odd ? 1 : 0;
    default: throw ArgumentError("parity payload for non-parity task");
  }
}

int oracle(TaskId task, const ArithmeticInstance& x) {
  if (!is_arithmetic_task(task)) throw ArgumentError("arithmetic payload for non-arithmetic task");
  std::int64_t result = 0;
  if (x.op == ArithOp::subtract) {
    result = x.a - x.b;
  } else {
    if (x.b == 0 || x.a % x.b != 0)
      throw ConstraintError(std::to_string(x.a) + " / " + std::to_string(x.b) + " is not exact");
    result = x.a / x.b;
  }
  if (result < 0 || result > 9)
    throw ConstraintError("result " + std::to_string(result) + " outside [0, 9]");
  return static_cast<int>(result);
}

int oracle(TaskId task, const NumberSet& set) {
  const auto& v = set.values;
  if (v.empty()) throw ConstraintError("empty number list");
  switch (task) {
    case TaskId::mean: {
      std::int64_t sum = 0;
      for (auto x : v) sum += x;
      const auto n = static_cast<std::int64_t>(v.size());
      if (sum % n != 0) throw ConstraintError("mean is not an integer");
      const auto m = sum / n;
      if (m < 0 || m > 9) throw ConstraintError("mean " + std::to_string(m) + " outside [0, 9]");
      return static_cast<int>(m);
    }
    case TaskId::median: {
      if (v.size() % 2 == 0) throw ConstraintError("median of an even-length list");
      auto sorted = v;
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(v.size() / 2),
                       sorted.end());
      const auto m = sorted[v.size() / 2];
      if (m < 0 || m > 9) throw ConstraintError("median " + std::to_string(m) + " outside [0, 9]");
      return static_cast<int>(m);
    }
    case TaskId::mode: {
      std::map<std::int64_t, std::size_t> counts;
      for (auto x : v) ++counts[x];
      std::size_t best = 0;
      std::int64_t mode = 0;
      bool tied = false;
      for (auto [value, c] : counts) {
        if (c > best) {
          best = c;
          mode = value;
          tied = false;
        } else if (c == best) {
          tied = true;
        }
      }
      if (tied) throw ConstraintError("mode is not unique");
      if (mode < 0 || mode > 9) throw ConstraintError("mode outside [0, 9]");
      return static_cast<int>(mode);
    }
    default: throw ArgumentError("number-set payload for non-statistic task");
  }
}

std::string render(TaskId task, const Payload& payload) {
  const auto& spec = task_spec(task);
  const std::string name(task_name(task));

  if (is_parity_task(task)) {
    const auto* q = std::get_if<ParityQuery>(&payload);
    if (!q) throw ArgumentError(name + " expects a parity query");
    if (q->n < spec.operand_min || q->n > spec.operand_max)
      throw RangeError(name + ": " + std::to_string(q->n) + " outside [1, 20000]");
    if ((task == TaskId::odd_even) != q->claim.has_value())
      throw ArgumentError(name + ": claim must be present exactly for odd_even");
    std::string out = std::to_string(q->n);
    if (q->claim) {
      out += ' ';
      out += claim_name(*q->claim);
    }
    return out;
  }

  if (is_arithmetic_task(task)) {
    const auto* x = std::get_if<ArithmeticInstance>(&payload);
    if (!x) throw ArgumentError(name + " expects an arithmetic instance");
    for (auto v : {x->a, x->b})
      if (v < spec.operand_min || v > spec.operand_max)
        throw RangeError(name + ": operand " + std::to_string(v) + " outside [1, 10000]");
    if (task == TaskId::decimal_op &&
        (x->a_notation != Notation::decimal || x->b_notation != Notation::decimal))
      throw ArgumentError("decimal_op operands must use decimal notation");
    return render_operand(x->a, x->a_notation) + (x->op == ArithOp::subtract ? " - " : " / ") +
           render_operand(x->b, x->b_notation);
  }

  const auto* set = std::get_if<NumberSet>(&payload);
  if (!set) throw ArgumentError(name + " expects a number list");
  check_set_bounds(task, *set);
  std::string out;
  for (std::size_t i = 0; i < set->values.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(set->values[i]);
  }
  out += " ?";
  return out;
}

Payload parse(TaskId task, std::string_view input) {
  const std::string name(task_name(task));
  Payload payload;

  if (is_parity_task(task)) {
    ParityQuery q;
    std::string_view number = input;
    if (task == TaskId::odd_even) {
      const auto space = input.find(' ');
      if (space == std::string_view::npos) throw ParseError(name + ": expected \"<n> odd|even\"");
      number = input.substr(0, space);
      const auto claim = input.substr(space + 1);
      if (claim == "odd") q.claim = ParityClaim::odd;
      else if (claim == "even") q.claim = ParityClaim::even;
      else throw ParseError(name + ": claim must be \"odd\" or \"even\"");
    }
    auto n = parse_int(number);
    if (!n) throw ParseError(name + ": not an integer: \"" + std::string(number) + "\"");
    q.n = *n;
    payload = q;
  } else if (is_arithmetic_task(task)) {
    ArithmeticInstance x;
    auto pos = input.find(" - ");
    x.op = ArithOp::subtract;
    if (pos == std::string_view::npos) {
      pos = input.find(" / ");
      x.op = ArithOp::divide;
    }
    if (pos == std::string_view::npos) throw ParseError(name + ": expected \"a - b\" or \"a / b\"");
    auto operand = [&](std::string_view text, Notation& notation) -> std::int64_t {
      if (auto v = parse_int(text)) {
        notation = Notation::decimal;
        return *v;
      }
      if (task == TaskId::decimal_word_op) {
        if (auto v = words_to_number(text)) {
          notation = Notation::word;
          return *v;
        }
      }
      throw ParseError(name + ": bad operand \"" + std::string(text) + "\"");
    };
    x.a = operand(input.substr(0, pos), x.a_notation);
    x.b = operand(input.substr(pos + 3), x.b_notation);
    payload = x;
  } else if (is_set_task(task)) {
    if (input.size() < 3 || input.substr(input.size() - 2) != " ?")
      throw ParseError(name + ": expected comma-separated numbers followed by \" ?\"");
    NumberSet set;
    std::string_view body = input.substr(0, input.size() - 2);
    for (;;) {
      const auto comma = body.find(',');
      const auto item = body.substr(0, comma);
      auto v = parse_int(item);
      if (!v) throw ParseError(name + ": not an integer: \"" + std::string(item) + "\"");
      set.values.push_back(*v);
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    payload = std::move(set);
  } else {
    throw ArgumentError(name + " is not a numeric task");
  }

  // Round-trip check doubles as the range check.
  if (render(task, payload) != input) throw ParseError(name + ": non-canonical input");
  return payload;
}

Payload generate_payload(TaskId task, int label, Rng& rng) {
  if (!task_spec(task).labels.contains(label)) throw ArgumentError(label_error(task, label));

  switch (task) {
    case TaskId::odd:
      return ParityQuery{draw_with_parity(label == 1, rng), std::nullopt};
    case TaskId::even:
      return ParityQuery{draw_with_parity(label == 0, rng), std::nullopt};
    case TaskId::odd_even: {
      const auto claim = rng.coin() ? ParityClaim::odd : ParityClaim::even;
      const bool claim_odd = claim == ParityClaim::odd;
      return ParityQuery{draw_with_parity(label == 1 ? claim_odd : !claim_odd, rng), claim};
    }
    case TaskId::decimal_op:
    case TaskId::decimal_word_op: {
      ArithmeticInstance x;
      const std::int64_t k = label;
      x.op = (k == 0 || rng.coin()) ? ArithOp::subtract : ArithOp::divide;
      if (x.op == ArithOp::subtract) {
        x.b = rng.uniform_int(kOperandMin, kOperandMax - k);
        x.a = x.b + k;
      } else {
        x.b = rng.uniform_int(kOperandMin, kOperandMax / k);
        x.a = x.b * k;
      }
      if (task == TaskId::decimal_word_op) {
        x.a_notation = rng.coin() ? Notation::word : Notation::decimal;
        x.b_notation = rng.coin() ? Notation::word : Notation::decimal;
      }
      return x;
    }
    case TaskId::mean: {
      for (std::size_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
        const auto n = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(kSetMinLength),
                            static_cast<std::int64_t>(kSetMaxLength)));
        NumberSet set;
        set.values.resize(n);
        std::int64_t sum = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
          set.values[i] = rng.uniform_int(kSetValueMin, kSetValueMax);
          sum += set.values[i];
        }
        // The last value is forced; accepting only in-range values keeps the
        // draw uniform over all lists of this length with the target mean.
        const std::int64_t last = label * static_cast<std::int64_t>(n) - sum;
        if (last < kSetValueMin || last > kSetValueMax) continue;
        set.values[n - 1] = last;
        return set;
      }
      throw GenerationError("mean: rejection budget exhausted (integer mean " +
                            std::to_string(label) + ")");
    }
    case TaskId::median: {
      for (std::size_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
        const auto n = 2 * static_cast<std::size_t>(rng.uniform_int(2, 7)) + 1;  // 5..15 odd
        NumberSet set;
        set.values.resize(n);
        for (auto& v : set.values) v = rng.uniform_int(kSetValueMin, kSetValueMax);
        auto sorted = set.values;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[n / 2] == label) return set;
      }
      throw GenerationError("median: rejection budget exhausted (median " +
                            std::to_string(label) + ")");
    }
    case TaskId::mode: {
      for (std::size_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
        const auto n = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(kSetMinLength),
                            static_cast<std::int64_t>(kSetMaxLength)));
        NumberSet set;
        set.values.resize(n);
        std::array<std::size_t, 10> counts{};
        for (auto& v : set.values) {
          v = rng.uniform_int(kModeValueMin, kModeValueMax);
          ++counts[static_cast<std::size_t>(v)];
        }
        const auto target = counts[static_cast<std::size_t>(label)];
        bool unique = true;
        for (std::size_t d = 0; d < counts.size(); ++d)
          if (d != static_cast<std::size_t>(label) && counts[d] >= target) unique = false;
        if (unique) return set;
      }
      throw GenerationError("mode: rejection budget exhausted (unique mode " +
                            std::to_string(label) + ")");
    }
    default:
      throw ArgumentError(std::string(task_name(task)) + " is not a numeric task");
  }
}

Example generate(TaskId task, int label, Rng& rng) {
  Example ex;
  const Payload payload = generate_payload(task, label, rng);
  ex.input = render(task, payload);
  ex.label = oracle_label(task, payload);
  if (ex.label != label)
    throw GenerationError(std::string(task_name(task)) + ": generated label mismatch");
  return ex;
}

}  // namespace nilm::numeric
