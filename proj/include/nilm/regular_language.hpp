#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nilm/rng.hpp"
#include "nilm/task_model.hpp"

// Regular-language recognition tasks: regex ASTs, automata, and uniform
// sampling of members and non-members by length-indexed counting.
namespace nilm::regex {

/// Regular expression over single-character symbols.
class Ast {
public:
  enum class Kind { symbol, concat, alternation, star };

  static Ast symbol(char c);
  static Ast concat(std::vector<Ast> parts);
  static Ast alternation(std::vector<Ast> options);
  static Ast star(Ast inner);
  /// Union of single symbols, e.g. any_of("012") for {0,1,2}.
  static Ast any_of(std::string_view symbols);

  Kind kind() const { return kind_; }
  char value() const { return symbol_; }
  const std::vector<Ast>& children() const { return children_; }

  /// Regex-like text, e.g. "(0|1|2)*02*".
  std::string to_string() const;

private:
  Kind kind_ = Kind::symbol;
  char symbol_ = 0;
  std::vector<Ast> children_;
};

/// Complete DFA over `alphabet` (an explicit dead state makes the transition
/// function total). States are numbered in breadth-first order from the
/// start state, visiting symbols in alphabet order, so a minimized DFA has
/// one canonical representation per language.
struct Dfa {
  std::string alphabet;
  std::uint32_t start = 0;
  std::vector<std::uint32_t> transitions;  // state * alphabet.size() + symbol
  std::vector<bool> accepting;

  std::size_t state_count() const { return accepting.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }
  std::uint32_t next(std::uint32_t state, std::size_t symbol) const {
    return transitions[state * alphabet.size() + symbol];
  }
  /// Position of c in the alphabet, or -1.
  int symbol_index(char c) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;
};

/// Thompson NFA, subset construction, then minimization and canonical
/// renumbering. Every AST symbol must be in `alphabet`.
Dfa compile(const Ast& pattern, std::string_view alphabet);

/// Same automaton with accepting and rejecting states swapped.
Dfa complement(const Dfa& dfa);

/// Throws AlphabetError on a foreign symbol.
bool is_member(const Dfa& dfa, std::string_view symbols);

/// counts[len][q] = number of length-len strings accepted from state q.
/// Exact in 128-bit arithmetic; throws RangeError on overflow.
class CountTable {
public:
  CountTable() = default;
  CountTable(std::size_t max_len, std::size_t states);

  std::size_t max_len() const { return max_len_; }
  u128 at(std::size_t len, std::uint32_t state) const { return counts_[len * states_ + state]; }
  u128& at(std::size_t len, std::uint32_t state) { return counts_[len * states_ + state]; }

private:
  std::size_t max_len_ = 0;
  std::size_t states_ = 0;
  std::vector<u128> counts_;
};

CountTable count_by_length(const Dfa& dfa, std::size_t max_len);

/// Member count at `len`: the count table entry of the start state.
u128 members_of_length(const Dfa& dfa, const CountTable& table, std::size_t len);

/// Lengths in [1, max_len] with at least one member.
std::vector<std::size_t> feasible_lengths(const Dfa& dfa, const CountTable& table);

/// Uniform member of exactly `len` symbols, by walking transitions weighted
/// by suffix counts. Throws GenerationError if there is none.
std::string sample_member_of_length(const Dfa& dfa, const CountTable& table, std::size_t len,
                                    Rng& rng);

/// Length uniform over feasible lengths in [1, max_len], then a uniform
/// member of that length. Throws GenerationError for an empty language.
std::string sample_member(const Dfa& dfa, const CountTable& table, Rng& rng);

/// Non-member sampling by counting over the complement automaton. Lengths
/// are uniform over [1, max_len] where the complement is nonempty, so on
/// lengths feasible for both classes the length law matches sample_member.
std::string sample_nonmember(const Dfa& dfa, std::size_t max_len, Rng& rng);

/// Positive and negative samplers for one language, with both count tables
/// built once. Immutable and shareable across threads.
class LanguageSampler {
public:
  LanguageSampler(Dfa dfa, std::size_t max_len);

  const Dfa& dfa() const { return dfa_; }
  const Dfa& complement_dfa() const { return complement_; }
  const CountTable& member_counts() const { return members_; }
  const CountTable& nonmember_counts() const { return nonmembers_; }
  std::size_t max_len() const { return max_len_; }

  std::string sample_member(Rng& rng) const;
  std::string sample_nonmember(Rng& rng) const;

private:
  Dfa dfa_;
  Dfa complement_;
  std::size_t max_len_;
  CountTable members_;
  CountTable nonmembers_;
};

/// Built-in patterns: (0|1|2)*02* with max length 20, and aa*bb*cc*dd*ee*
/// with max length 30.
Ast pattern_ast(TaskId task);
std::string_view pattern_alphabet(TaskId task);
std::size_t pattern_max_len(TaskId task);

/// Lazily built sampler for a regex task.
const LanguageSampler& sampler_for(TaskId task);

/// Plain-text transition listing, one line per state.
std::string to_text(const Dfa& dfa);

int oracle(TaskId task, const StringInstance& instance);
std::string render(TaskId task, const StringInstance& instance);
StringInstance parse(TaskId task, std::string_view input);
Example generate(TaskId task, int label, Rng& rng);

}  // namespace nilm::regex
