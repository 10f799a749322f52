#include <map>
#include <regex>
#include <set>
#include <string>

#include "doctest.h"
#include "nilm/error.hpp"
#include "nilm/regular_language.hpp"
#include "nilm/special_functions.hpp"
#include "nilm/surface.hpp"

using namespace nilm;
using namespace nilm::regex;

namespace {

/// Every string of length `len` over `alphabet`, in lexicographic order.
std::vector<std::string> all_strings(std::string_view alphabet, std::size_t len) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<std::string> next;
    next.reserve(out.size() * alphabet.size());
    for (const auto& s : out)
      for (char c : alphabet) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

const std::regex& reference_pattern(TaskId task) {
  static const std::regex r012("[012]*02*");
  static const std::regex rabcde("aa*bb*cc*dd*ee*");
  return task == TaskId::regex_012 ? r012 : rabcde;
}

}  // namespace

TEST_SUITE("regular_language") {

TEST_CASE("compiled DFAs accept the table examples") {
  const Dfa& d012 = sampler_for(TaskId::regex_012).dfa();
  const Dfa& dabc = sampler_for(TaskId::regex_abcde).dfa();
  CHECK(is_member(d012, "02"));
  CHECK(is_member(d012, surface::unspaced("0 1 2 0 2 1 0 2 2 2 2")));
  CHECK(is_member(dabc, surface::unspaced("a a a a a a a b b b b c c c c c d d d e")));
  CHECK_FALSE(is_member(d012, "111"));
  CHECK(is_member(dabc, "abcde"));
  CHECK_FALSE(is_member(dabc, "ba"));
  CHECK_FALSE(is_member(d012, ""));
  CHECK_THROWS_AS(is_member(d012, "013"), AlphabetError);
}

TEST_CASE("minimal DFA sizes and canonical form") {
  // (0|1|2)*02*: states "no trailing 02*", "in 02*", plus nothing else.
  CHECK(sampler_for(TaskId::regex_012).dfa().state_count() == 2);
  // aa*bb*cc*dd*ee*: start, one state per block, and the dead state.
  CHECK(sampler_for(TaskId::regex_abcde).dfa().state_count() == 7);

  // A different AST for the same language compiles to the identical DFA.
  const Ast any = Ast::any_of("012");
  const Ast alt = Ast::concat({Ast::star(any), Ast::symbol('0'), Ast::star(Ast::symbol('2'))});
  const Ast redundant = Ast::alternation(
      {Ast::concat({Ast::star(any), Ast::symbol('0')}),
       Ast::concat({Ast::star(any), Ast::symbol('0'), Ast::symbol('2'), Ast::star(Ast::symbol('2'))})});
  CHECK(compile(alt, "012") == compile(redundant, "012"));
  CHECK(compile(pattern_ast(TaskId::regex_012), "012") == sampler_for(TaskId::regex_012).dfa());
  CHECK(pattern_ast(TaskId::regex_012).to_string() == "(0|1|2)*02*");
}

TEST_CASE("complement flips membership") {
  const Dfa& d = sampler_for(TaskId::regex_012).dfa();
  const Dfa c = complement(d);
  for (std::size_t len = 0; len <= 5; ++len)
    for (const auto& s : all_strings("012", len)) REQUIRE(is_member(c, s) != is_member(d, s));
}

TEST_CASE("count_by_length equals exhaustive enumeration up to length 8") {
  for (TaskId task : {TaskId::regex_012, TaskId::regex_abcde}) {
    CAPTURE(task_name(task));
    const Dfa& d = sampler_for(task).dfa();
    const auto table = count_by_length(d, 8);
    for (std::size_t len = 0; len <= 8; ++len) {
      std::uint64_t expected = 0;
      for (const auto& s : all_strings(d.alphabet, len))
        expected += std::regex_match(s, reference_pattern(task)) ? 1 : 0;
      CAPTURE(len);
      CHECK(members_of_length(d, table, len) == expected);
    }
  }
  const Dfa& d = sampler_for(TaskId::regex_012).dfa();
  const auto table = count_by_length(d, 2);
  CHECK(members_of_length(d, table, 0) == 0);
  CHECK(members_of_length(d, table, 1) == 1);
  CHECK(members_of_length(d, table, 2) == 4);  // 00 02 10 20
}

TEST_CASE("counts at the maximum lengths") {
  // Closed forms: (0|1|2)*02* has sum_{k=0}^{l-1} 3^(l-1-k) = (3^l - 1)/2
  // members of length l; aa*bb*cc*dd*ee* has C(l-1, 4).
  const auto& s012 = sampler_for(TaskId::regex_012);
  const auto& sabc = sampler_for(TaskId::regex_abcde);
  u128 p3 = 1;
  for (std::size_t l = 1; l <= 20; ++l) {
    p3 *= 3;
    CHECK(members_of_length(s012.dfa(), s012.member_counts(), l) == (p3 - 1) / 2);
  }
  auto choose4 = [](std::uint64_t n) { return n < 4 ? 0 : n * (n - 1) * (n - 2) * (n - 3) / 24; };
  for (std::size_t l = 1; l <= 30; ++l)
    CHECK(members_of_length(sabc.dfa(), sabc.member_counts(), l) == choose4(l - 1));
  CHECK(feasible_lengths(sabc.dfa(), sabc.member_counts()).front() == 5);
}

TEST_CASE("uniform member sampling at length 4") {
  const auto& s = sampler_for(TaskId::regex_012);
  std::vector<std::string> members;
  for (const auto& str : all_strings("012", 4))
    if (std::regex_match(str, reference_pattern(TaskId::regex_012))) members.push_back(str);
  REQUIRE(members.size() == 40);
  // Each seed fails at the 1% level by chance; across 20 seeds three or more
  // failures has probability about 0.001 under a uniform sampler.
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::map<std::string, std::uint64_t> seen;
    Rng rng(seed);
    for (int i = 0; i < 100000; ++i) ++seen[sample_member_of_length(s.dfa(), s.member_counts(), 4, rng)];
    REQUIRE(seen.size() == members.size());
    std::vector<std::uint64_t> observed;
    for (const auto& m : members) observed.push_back(seen[m]);
    if (stats::chi_square_uniform(observed).p_value <= 0.01) ++rejections;
  }
  CHECK(rejections <= 2);
}

TEST_CASE("sampler soundness and length support") {
  for (TaskId task : {TaskId::regex_012, TaskId::regex_abcde}) {
    CAPTURE(task_name(task));
    const auto& s = sampler_for(task);
    Rng rng(derive_seed(5, {static_cast<std::uint64_t>(task)}));
    std::map<std::size_t, std::uint64_t> pos_len, neg_len;
    for (int i = 0; i < 100000; ++i) {
      const auto m = s.sample_member(rng);
      const auto n = s.sample_nonmember(rng);
      REQUIRE(is_member(s.dfa(), m));
      REQUIRE_FALSE(is_member(s.dfa(), n));
      REQUIRE(std::regex_match(m, reference_pattern(task)));
      REQUIRE_FALSE(std::regex_match(n, reference_pattern(task)));
      ++pos_len[m.size()];
      ++neg_len[n.size()];
    }
    const std::size_t max_len = pattern_max_len(task);
    CHECK(pos_len.rbegin()->first == max_len);
    CHECK(neg_len.begin()->first == 1);
    CHECK(neg_len.rbegin()->first == max_len);
    // Every feasible length appears.
    CHECK(pos_len.size() == feasible_lengths(s.dfa(), s.member_counts()).size());
    CHECK(neg_len.size() == max_len);

    // Total variation between the two length laws on common lengths.
    std::uint64_t pos_total = 0, neg_total = 0;
    for (auto [len, c] : pos_len)
      if (neg_len.count(len)) pos_total += c;
    for (auto [len, c] : neg_len)
      if (pos_len.count(len)) neg_total += c;
    double tv = 0.0;
    for (auto [len, c] : pos_len) {
      if (!neg_len.count(len)) continue;
      tv += std::abs(static_cast<double>(c) / pos_total - static_cast<double>(neg_len[len]) / neg_total);
    }
    CHECK(tv / 2 <= 0.05);
  }
}

TEST_CASE("every short member is reachable") {
  const auto& s = sampler_for(TaskId::regex_012);
  Rng rng(8);
  for (std::size_t len = 1; len <= 6; ++len) {
    std::set<std::string> seen;
    const auto total = static_cast<std::size_t>(members_of_length(s.dfa(), s.member_counts(), len));
    for (int i = 0; i < 200000 && seen.size() < total; ++i)
      seen.insert(sample_member_of_length(s.dfa(), s.member_counts(), len, rng));
    CHECK(seen.size() == total);
  }
}

TEST_CASE("empty language") {
  const Ast only_a = Ast::symbol('a');
  const Dfa d = compile(only_a, "ab");
  const auto table = count_by_length(d, 3);
  Rng rng(1);
  CHECK_THROWS_AS(sample_member_of_length(d, table, 2, rng), GenerationError);
  CHECK(sample_member(d, table, rng) == "a");
}

TEST_CASE("task surface") {
  CHECK(oracle(TaskId::regex_012, parse(TaskId::regex_012, "0 1 2 0 2 1 0 2 2 2 2")) == 1);
  CHECK(oracle(TaskId::regex_abcde, parse(TaskId::regex_abcde, "a a a a a a a b b b b c c c c c d d d e")) == 1);
  CHECK_THROWS_AS(parse(TaskId::regex_012, "0 3"), RangeError);
  CHECK_THROWS(parse(TaskId::regex_012, ""));
  CHECK_THROWS_AS(parse(TaskId::regex_012, "01"), ParseError);
  const std::string dump = to_text(sampler_for(TaskId::regex_012).dfa());
  CHECK(dump.find("start") != std::string::npos);
}

}  // TEST_SUITE
