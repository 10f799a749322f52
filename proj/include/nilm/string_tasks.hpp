#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "nilm/rng.hpp"
#include "nilm/task_model.hpp"

// String-reasoning tasks. All comparisons are case-sensitive.
namespace nilm::strings {

inline constexpr std::string_view kLetters =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
inline constexpr std::string_view kLowercase = "abcdefghijklmnopqrstuvwxyz";
inline constexpr std::string_view kFirstTen = "abcdefghij";
inline constexpr std::string_view kVowels = "aeiou";
inline constexpr std::string_view kBits = "01";

/// Maps 'a'..'j' to 0..9; -1 for anything else.
int char_index(char c);
/// Maps 0..9 to 'a'..'j'.
char index_char(int index);

int oracle(TaskId task, const StringInstance& instance);

std::string render(TaskId task, const StringInstance& instance);
StringInstance parse(TaskId task, std::string_view input);

/// Checks alphabet and length bounds; throws RangeError.
void check_bounds(TaskId task, const StringInstance& instance);

StringInstance generate_instance(TaskId task, int label, Rng& rng);
Example generate(TaskId task, int label, Rng& rng);

/// Probability that a palindrome/anagram/tautonym negative is a single-edit
/// corruption of a positive.
inline constexpr double kNearMissRate = 0.5;

}  // namespace nilm::strings
