#include "nilm/string_tasks.hpp"

#include <algorithm>
#include <array>

#include "nilm/error.hpp"
#include "nilm/numeric_tasks.hpp"
#include "nilm/surface.hpp"

namespace nilm::strings {
namespace {

bool is_pair_task(TaskId t) { return t == TaskId::anagram || t == TaskId::tautonym; }

bool is_string_task(TaskId t) { return family_of(t) == TaskFamily::string; }

std::string random_string(std::string_view alphabet, std::size_t len, Rng& rng) {
  std::string s(len, ' ');
  for (auto& c : s) c = alphabet[rng.index(alphabet.size())];
  return s;
}

std::size_t random_length(std::size_t lo, std::size_t hi, Rng& rng) {
  return static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

/// A letter of `alphabet` different from c.
char other_symbol(std::string_view alphabet, char c, Rng& rng) {
  for (;;) {
    const char d = alphabet[rng.index(alphabet.size())];
    if (d != c) return d;
  }
}

bool is_palindrome(std::string_view s) { return std::equal(s.begin(), s.end(), s.rbegin()); }

bool same_multiset(std::string a, std::string b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool all_distinct(std::string_view s) {
  std::array<bool, 256> seen{};
  for (unsigned char c : s) {
    if (seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

bool balanced_bits(std::string_view s) {
  const auto ones = std::count(s.begin(), s.end(), '1');
  return static_cast<std::size_t>(ones) * 2 == s.size();
}

bool only_vowels(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return kVowels.find(c) != std::string_view::npos; });
}

std::string make_palindrome(std::size_t len, Rng& rng) {
  std::string half = random_string(kLetters, len / 2, rng);
  std::string s = half;
  if (len % 2 == 1) s.push_back(kLetters[rng.index(kLetters.size())]);
  s.append(half.rbegin(), half.rend());
  return s;
}

std::string shuffled(std::string s, Rng& rng) {
  rng.shuffle(std::span<char>(s));
  return s;
}

template <typename Draw, typename Accept>
StringInstance reject_until(TaskId task, Rng& rng, Draw draw, Accept accept) {
  for (std::size_t attempt = 0; attempt < numeric::kRejectionBudget; ++attempt) {
    StringInstance x = draw(rng);
    if (accept(x)) return x;
  }
  throw GenerationError(std::string(task_name(task)) + ": rejection budget exhausted");
}

}  // namespace

int char_index(char c) { return (c >= 'a' && c <= 'j') ? c - 'a' : -1; }

char index_char(int index) {
  if (index < 0 || index > 9) throw RangeError("character index outside [0, 9]");
  return static_cast<char>('a' + index);
}

void check_bounds(TaskId task, const StringInstance& x) {
  const auto& spec = task_spec(task);
  const std::string name(task_name(task));
  if (is_pair_task(task) != x.t.has_value())
    throw RangeError(name + (x.t ? ": unexpected second member" : ": missing second member"));

  auto check = [&](const std::string& s) {
    if (s.size() < spec.min_length || s.size() > spec.max_length)
      throw RangeError(name + ": length " + std::to_string(s.size()) + " outside [" +
                       std::to_string(spec.min_length) + ", " +
                       std::to_string(spec.max_length) + "]");
    for (char c : s)
      if (spec.alphabet.find(c) == std::string_view::npos)
        throw RangeError(name + ": character '" + std::string(1, c) + "' outside the alphabet");
  };
  check(x.s);
  if (x.t) check(*x.t);
}

int oracle(TaskId task, const StringInstance& x) {
  const std::string& s = x.s;
  switch (task) {
    case TaskId::palindrome: return is_palindrome(s) ? 1 : 0;
    case TaskId::anagram:
      if (!x.t) throw ConstraintError("anagram needs a pair");
      return same_multiset(s, *x.t) ? 1 : 0;
    case TaskId::isogram: return all_distinct(s) ? 1 : 0;
    case TaskId::tautonym:
      if (!x.t) throw ConstraintError("tautonym needs a pair");
      return s == *x.t ? 1 : 0;
    case TaskId::str_length: return static_cast<int>(s.size() % 10);
    case TaskId::unique_count: {
      std::array<bool, 256> seen{};
      std::size_t distinct = 0;
      for (unsigned char c : s)
        if (!seen[c]) {
          seen[c] = true;
          ++distinct;
        }
      return static_cast<int>(distinct % 10);
    }
    case TaskId::parity: return balanced_bits(s) ? 1 : 0;
    case TaskId::vowels: return only_vowels(s) ? 1 : 0;
    case TaskId::max_freq_char: {
      std::array<std::size_t, 256> counts{};
      for (unsigned char c : s) ++counts[c];
      std::size_t best = 0;
      int best_char = -1;
      bool tied = false;
      for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] > best) {
          best = counts[c];
          best_char = static_cast<int>(c);
          tied = false;
        } else if (counts[c] == best && best > 0) {
          tied = true;
        }
      }
      if (tied) throw ConstraintError("most frequent character is not unique");
      const int index = char_index(static_cast<char>(best_char));
      if (index < 0) throw ConstraintError("most frequent character outside a..j");
      return index;
    }
    default: throw ArgumentError(std::string(task_name(task)) + " is not a string task");
  }
}

std::string render(TaskId task, const StringInstance& x) {
  if (!is_string_task(task)) throw ArgumentError(std::string(task_name(task)) + " is not a string task");
  check_bounds(task, x);
  std::string out = surface::spaced(x.s);
  if (x.t) {
    out += surface::kPairSeparator;
    out += surface::spaced(*x.t);
  }
  return out;
}

StringInstance parse(TaskId task, std::string_view input) {
  if (!is_string_task(task)) throw ArgumentError(std::string(task_name(task)) + " is not a string task");
  StringInstance x;
  if (is_pair_task(task)) {
    auto parts = surface::split_pair(input);
    if (!parts) throw ParseError(std::string(task_name(task)) + ": expected \"left - right\"");
    x.s = surface::unspaced(parts->first);
    x.t = surface::unspaced(parts->second);
  } else {
    x.s = surface::unspaced(input);
  }
  check_bounds(task, x);
  return x;
}

StringInstance generate_instance(TaskId task, int label, Rng& rng) {
  const auto& spec = task_spec(task);
  if (!spec.labels.contains(label))
    throw ArgumentError(std::string(task_name(task)) + ": label " + std::to_string(label) +
                        " outside label space");
  const bool positive = label == 1;

  switch (task) {
    case TaskId::palindrome: {
      if (positive) return {make_palindrome(random_length(1, 15, rng), rng), std::nullopt};
      if (rng.uniform01() < kNearMissRate) {
        // Break one mirrored pair of a palindrome.
        std::string s = make_palindrome(random_length(2, 15, rng), rng);
        const std::size_t i = rng.index(s.size() / 2);
        s[i] = other_symbol(kLetters, s[s.size() - 1 - i], rng);
        return {s, std::nullopt};
      }
      return reject_until(
          task, rng,
          [](Rng& r) { return StringInstance{random_string(kLetters, random_length(2, 15, r), r), {}}; },
          [](const StringInstance& x) { return !is_palindrome(x.s); });
    }
    case TaskId::anagram: {
      const std::size_t len = random_length(2, 15, rng);
      std::string s = random_string(kLetters, len, rng);
      if (positive) {
        std::string t = shuffled(s, rng);
        return {std::move(s), std::move(t)};
      }
      if (rng.uniform01() < kNearMissRate) {
        std::string t = shuffled(s, rng);
        const std::size_t i = rng.index(t.size());
        t[i] = other_symbol(kLetters, t[i], rng);
        return {std::move(s), std::move(t)};
      }
      return reject_until(
          task, rng,
          [&s](Rng& r) { return StringInstance{s, random_string(kLetters, s.size(), r)}; },
          [](const StringInstance& x) { return !same_multiset(x.s, *x.t); });
    }
    case TaskId::isogram: {
      if (positive) {
        std::string letters(kLetters);
        rng.shuffle(std::span<char>(letters));
        letters.resize(random_length(1, 52, rng));
        return {letters, std::nullopt};
      }
      const std::size_t len = random_length(2, 52, rng);
      if (rng.uniform01() < kNearMissRate) {
        std::string letters(kLetters);
        rng.shuffle(std::span<char>(letters));
        letters.resize(len);
        const std::size_t i = rng.index(len);
        std::size_t j = rng.index(len - 1);
        if (j >= i) ++j;
        letters[j] = letters[i];
        return {letters, std::nullopt};
      }
      return reject_until(
          task, rng, [len](Rng& r) { return StringInstance{random_string(kLetters, len, r), {}}; },
          [](const StringInstance& x) { return !all_distinct(x.s); });
    }
    case TaskId::tautonym: {
      std::string u = random_string(kLetters, random_length(1, 5, rng), rng);
      if (positive) return {u, u};
      if (rng.uniform01() < kNearMissRate) {
        std::string v = u;
        const std::size_t i = rng.index(v.size());
        v[i] = other_symbol(kLetters, v[i], rng);
        return {std::move(u), std::move(v)};
      }
      return reject_until(
          task, rng,
          [&u](Rng& r) {
            return StringInstance{u, random_string(kLetters, random_length(1, 5, r), r)};
          },
          [](const StringInstance& x) { return x.s != *x.t; });
    }
    case TaskId::str_length: {
      const std::size_t len = label == 0 ? 10 : static_cast<std::size_t>(label);
      return {random_string(kLowercase, len, rng), std::nullopt};
    }
    case TaskId::unique_count: {
      const std::size_t distinct = label == 0 ? 10 : static_cast<std::size_t>(label);
      const std::size_t len = random_length(10, 30, rng);
      std::string chosen(kFirstTen);
      rng.shuffle(std::span<char>(chosen));
      chosen.resize(distinct);
      // Every chosen character once, the rest uniform over the chosen set.
      std::string s = chosen;
      s += random_string(chosen, len - distinct, rng);
      return {shuffled(std::move(s), rng), std::nullopt};
    }
    case TaskId::parity: {
      if (positive) {
        const std::size_t len = 2 * random_length(1, 10, rng);
        std::string s(len / 2, '0');
        s.append(len / 2, '1');
        return {shuffled(std::move(s), rng), std::nullopt};
      }
      return reject_until(
          task, rng,
          [](Rng& r) { return StringInstance{random_string(kBits, random_length(1, 20, r), r), {}}; },
          [](const StringInstance& x) { return !balanced_bits(x.s); });
    }
    case TaskId::vowels: {
      const std::size_t len = random_length(3, 10, rng);
      if (positive) return {random_string(kVowels, len, rng), std::nullopt};
      if (rng.uniform01() < kNearMissRate) {
        std::string s = random_string(kVowels, len, rng);
        static constexpr std::string_view kConsonants = "bcdfghjklmnpqrstvwxyz";
        s[rng.index(len)] = kConsonants[rng.index(kConsonants.size())];
        return {s, std::nullopt};
      }
      return reject_until(
          task, rng, [len](Rng& r) { return StringInstance{random_string(kLowercase, len, r), {}}; },
          [](const StringInstance& x) { return !only_vowels(x.s); });
    }
    case TaskId::max_freq_char: {
      return reject_until(
          task, rng,
          [](Rng& r) { return StringInstance{random_string(kFirstTen, random_length(5, 30, r), r), {}}; },
          [label](const StringInstance& x) {
            std::array<std::size_t, 10> counts{};
            for (char c : x.s) ++counts[static_cast<std::size_t>(char_index(c))];
            const auto target = counts[static_cast<std::size_t>(label)];
            for (std::size_t d = 0; d < counts.size(); ++d)
              if (d != static_cast<std::size_t>(label) && counts[d] >= target) return false;
            return true;
          });
    }
    default:
      throw ArgumentError(std::string(task_name(task)) + " is not a string task");
  }
}

Example generate(TaskId task, int label, Rng& rng) {
  const StringInstance x = generate_instance(task, label, rng);
  Example ex{render(task, x), oracle(task, x)};
  if (ex.label != label)
    throw GenerationError(std::string(task_name(task)) + ": generated label mismatch");
  return ex;
}

}  // namespace nilm::strings
