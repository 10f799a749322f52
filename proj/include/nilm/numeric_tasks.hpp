#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nilm/rng.hpp"
#include "nilm/task_model.hpp"

// Quantitative-computation tasks: parity, two-operand arithmetic and set
// statistics.
namespace nilm::numeric {

inline constexpr std::int64_t kParityMin = 1;
inline constexpr std::int64_t kParityMax = 20000;
inline constexpr std::int64_t kOperandMin = 1;
inline constexpr std::int64_t kOperandMax = 10000;
inline constexpr std::int64_t kSetValueMin = -15;
inline constexpr std::int64_t kSetValueMax = 15;
inline constexpr std::int64_t kModeValueMin = 0;
inline constexpr std::int64_t kModeValueMax = 9;
inline constexpr std::size_t kSetMinLength = 5;
inline constexpr std::size_t kSetMaxLength = 15;

/// Generators give up after this many rejected draws.
inline constexpr std::size_t kRejectionBudget = 1'000'000;

/// Lowercase US-English cardinal for n in [1, 10000]: hyphenated tens, no
/// "and" ("twenty-one", "nine thousand nine hundred ninety-nine").
std::string number_to_words(std::int64_t n);

/// Inverse of number_to_words; nullopt when the text is not a spelling it
/// produces.
std::optional<std::int64_t> words_to_number(std::string_view words);

int oracle(TaskId task, const ParityQuery& query);
int oracle(TaskId task, const ArithmeticInstance& instance);
int oracle(TaskId task, const NumberSet& set);

std::string render(TaskId task, const Payload& payload);
Payload parse(TaskId task, std::string_view input);

/// Draws a payload whose oracle label is `label`, operands uniform over the
/// task ranges subject to the label constraint.
Payload generate_payload(TaskId task, int label, Rng& rng);

Example generate(TaskId task, int label, Rng& rng);

}  // namespace nilm::numeric
