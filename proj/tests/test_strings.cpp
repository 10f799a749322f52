#include <algorithm>
#include <map>
#include <string>

#include "doctest.h"
#include "nilm/error.hpp"
#include "nilm/string_tasks.hpp"
#include "support/reference_oracle.hpp"

using namespace nilm;
using namespace nilm::strings;

namespace {

int label_of(TaskId task, const std::string& input) { return oracle(task, parse(task, input)); }

int mirror_mismatches(const std::string& s) {
  int m = 0;
  for (std::size_t i = 0; i < s.size() / 2; ++i) m += s[i] != s[s.size() - 1 - i] ? 1 : 0;
  return m;
}

/// Characters of t not matched by s (multiset difference size).
std::size_t multiset_gap(const std::string& s, const std::string& t) {
  std::map<char, int> counts;
  for (char c : s) ++counts[c];
  std::size_t gap = 0;
  for (char c : t)
    if (counts[c]-- <= 0) ++gap;
  return gap;
}

std::size_t hamming(const std::string& a, const std::string& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

}  // namespace

TEST_SUITE("string_tasks") {

TEST_CASE("oracle fixtures") {
  CHECK(label_of(TaskId::palindrome, "a W X X W a") == 1);
  CHECK(label_of(TaskId::anagram, "r G r P J h k - k h G r P J r") == 1);
  CHECK(label_of(TaskId::isogram, "v F J o S j") == 1);
  CHECK(label_of(TaskId::parity, "0 1 1 1 0 1 0 0 1 1 1 0") == 0);
  CHECK(label_of(TaskId::max_freq_char, "j j j c j j") == 9);
  CHECK(label_of(TaskId::unique_count, "d e i i e e d i i d") == 3);
  CHECK(label_of(TaskId::str_length, "t e e o") == 4);
  CHECK(label_of(TaskId::vowels, "i i v x c m o o u o") == 0);
  CHECK(label_of(TaskId::tautonym, "a b - a b") == 1);
  // Left part "stPvg" differs from right part "tPvga".
  CHECK(label_of(TaskId::tautonym, "s t P v g - t P v g a") == 0);
}

TEST_CASE("case sensitivity and modular labels") {
  CHECK(label_of(TaskId::palindrome, "a b A") == 0);
  CHECK(label_of(TaskId::isogram, "a A") == 1);
  CHECK(label_of(TaskId::isogram, "a a") == 0);
  CHECK(label_of(TaskId::str_length, "a b c d e f g h i j") == 0);
  CHECK(label_of(TaskId::unique_count, "a b c d e f g h i j") == 0);
  CHECK(label_of(TaskId::vowels, "a e i o u") == 1);
  CHECK(char_index('a') == 0);
  CHECK(char_index('j') == 9);
  CHECK(char_index('k') == -1);
  CHECK(index_char(9) == 'j');
}

TEST_CASE("tied maximum frequency is a constraint error") {
  CHECK_THROWS_AS(oracle(TaskId::max_freq_char, StringInstance{"aabbc", std::nullopt}), ConstraintError);
}

TEST_CASE("format and bound errors") {
  CHECK_THROWS_AS(parse(TaskId::palindrome, "aWXXWa"), ParseError);
  CHECK_THROWS_AS(parse(TaskId::anagram, "a b c"), ParseError);
  CHECK_THROWS(parse(TaskId::unique_count, "a b c"));          // shorter than 10
  CHECK_THROWS(parse(TaskId::max_freq_char, "a b c d k"));      // outside a-j
  CHECK_THROWS(parse(TaskId::parity, "0 1 2"));
  CHECK_THROWS(parse(TaskId::tautonym, "a b c d e f - a b c d e f"));  // halves over 5
}

TEST_CASE("generated labels match the independent oracle") {
  for (TaskId task : {TaskId::palindrome, TaskId::anagram, TaskId::isogram, TaskId::tautonym,
                      TaskId::str_length, TaskId::unique_count, TaskId::parity, TaskId::vowels,
                      TaskId::max_freq_char}) {
    CAPTURE(task_name(task));
    const auto& labels = task_spec(task).labels;
    Rng rng(derive_seed(17, {static_cast<std::uint64_t>(task)}));
    for (int label = labels.lo; label <= labels.hi; ++label)
      for (int i = 0; i < 10000; ++i) {
        const Example ex = generate(task, label, rng);
        REQUIRE(ex.label == label);
        REQUIRE(ref::label(std::string(task_name(task)), ex.input) == label);
      }
  }
}

TEST_CASE("palindrome negatives are never palindromes") {
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const auto x = generate_instance(TaskId::palindrome, 0, rng);
    REQUIRE_FALSE(std::equal(x.s.begin(), x.s.end(), x.s.rbegin()));
  }
}

TEST_CASE("parity positives have even length with balanced counts") {
  Rng rng(4);
  for (int i = 0; i < 100000; ++i) {
    const auto x = generate_instance(TaskId::parity, 1, rng);
    REQUIRE(x.s.size() % 2 == 0);
    REQUIRE(x.s.size() <= 20);
    REQUIRE(std::count(x.s.begin(), x.s.end(), '0') == std::count(x.s.begin(), x.s.end(), '1'));
  }
}

TEST_CASE("near-miss negatives make up at least 20 percent") {
  Rng rng(6);
  constexpr int kTrials = 20000;
  int pal = 0, ana = 0, tau = 0;
  for (int i = 0; i < kTrials; ++i) {
    pal += mirror_mismatches(generate_instance(TaskId::palindrome, 0, rng).s) == 1 ? 1 : 0;
    const auto a = generate_instance(TaskId::anagram, 0, rng);
    ana += a.s.size() == a.t->size() && multiset_gap(a.s, *a.t) == 1 ? 1 : 0;
    const auto t = generate_instance(TaskId::tautonym, 0, rng);
    tau += t.s.size() == t.t->size() && hamming(t.s, *t.t) == 1 ? 1 : 0;
  }
  CHECK(pal >= kTrials / 5);
  CHECK(ana >= kTrials / 5);
  CHECK(tau >= kTrials / 5);
}

TEST_CASE("oracle involutions") {
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) {
    auto p = generate_instance(TaskId::palindrome, 1, rng);
    std::reverse(p.s.begin(), p.s.end());
    REQUIRE(oracle(TaskId::palindrome, p) == 1);

    for (int label : {0, 1}) {
      auto a = generate_instance(TaskId::anagram, label, rng);
      REQUIRE(oracle(TaskId::anagram, StringInstance{*a.t, a.s}) == label);
      if (label == 1) {
        rng.shuffle(std::span<char>(a.t->data(), a.t->size()));
        REQUIRE(oracle(TaskId::anagram, a) == 1);
      }
    }
  }
}

TEST_CASE("max_freq_char labels come from a unique argmax") {
  Rng rng(10);
  for (int i = 0; i < 20000; ++i) {
    const int label = static_cast<int>(rng.below(10));
    const auto x = generate_instance(TaskId::max_freq_char, label, rng);
    int counts[10] = {};
    for (char c : x.s) ++counts[c - 'a'];
    const int best = *std::max_element(counts, counts + 10);
    REQUIRE(std::count(counts, counts + 10, best) == 1);
    REQUIRE(counts[label] == best);
  }
}

TEST_CASE("length bounds") {
  Rng rng(12);
  for (int i = 0; i < 20000; ++i) {
    const auto iso = generate_instance(TaskId::isogram, static_cast<int>(rng.below(2)), rng);
    REQUIRE(iso.s.size() >= 1);
    REQUIRE(iso.s.size() <= 52);
    const auto tau = generate_instance(TaskId::tautonym, static_cast<int>(rng.below(2)), rng);
    REQUIRE(tau.s.size() + tau.t->size() <= 10);
    const auto uc = generate_instance(TaskId::unique_count, static_cast<int>(rng.below(10)), rng);
    REQUIRE(uc.s.size() >= 10);
    REQUIRE(uc.s.size() <= 30);
    const auto v = generate_instance(TaskId::vowels, static_cast<int>(rng.below(2)), rng);
    REQUIRE(v.s.size() >= 3);
    REQUIRE(v.s.size() <= 10);
  }
}

}  // TEST_SUITE
