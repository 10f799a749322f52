#include "nilm/regular_language.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <queue>
#include <sstream>

#include "nilm/error.hpp"
#include "nilm/surface.hpp"

namespace nilm::regex {

// AST

Ast Ast::symbol(char c) {
  Ast a;
  a.kind_ = Kind::symbol;
  a.symbol_ = c;
  return a;
}

Ast Ast::concat(std::vector<Ast> parts) {
  Ast a;
  a.kind_ = Kind::concat;
  a.children_ = std::move(parts);
  return a;
}

Ast Ast::alternation(std::vector<Ast> options) {
  if (options.empty()) throw ArgumentError("alternation needs at least one option");
  Ast a;
  a.kind_ = Kind::alternation;
  a.children_ = std::move(options);
  return a;
}

Ast Ast::star(Ast inner) {
  Ast a;
  a.kind_ = Kind::star;
  a.children_.push_back(std::move(inner));
  return a;
}

Ast Ast::any_of(std::string_view symbols) {
  std::vector<Ast> options;
  for (char c : symbols) options.push_back(symbol(c));
  return alternation(std::move(options));
}

std::string Ast::to_string() const {
  switch (kind_) {
    case Kind::symbol: return std::string(1, symbol_);
    case Kind::concat: {
      std::string out;
      for (const auto& c : children_) out += c.to_string();
      return out;
    }
    case Kind::alternation: {
      std::string out = "(";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i != 0) out += '|';
        out += children_[i].to_string();
      }
      return out + ")";
    }
    case Kind::star: {
      const auto& inner = children_.front();
      const bool atomic = inner.kind() == Kind::symbol || inner.kind() == Kind::alternation;
      return (atomic ? inner.to_string() : "(" + inner.to_string() + ")") + "*";
    }
  }
  return {};
}

// Thompson construction

namespace {

struct Nfa {
  struct State {
    std::vector<std::uint32_t> epsilon;
    int symbol = -1;  // alphabet index of the single labelled edge, or -1
    std::uint32_t target = 0;
  };
  std::vector<State> states;

  std::uint32_t add() {
    states.emplace_back();
    return static_cast<std::uint32_t>(states.size() - 1);
  }
};

struct Fragment {
  std::uint32_t start;
  std::uint32_t accept;
};

Fragment build(Nfa& nfa, const Ast& ast, std::string_view alphabet) {
  switch (ast.kind()) {
    case Ast::Kind::symbol: {
      const auto pos = alphabet.find(ast.value());
      if (pos == std::string_view::npos)
        throw AlphabetError(std::string("pattern symbol '") + ast.value() + "' not in alphabet");
      const auto s = nfa.add();
      const auto a = nfa.add();
      nfa.states[s].symbol = static_cast<int>(pos);
      nfa.states[s].target = a;
      return {s, a};
    }
    case Ast::Kind::concat: {
      if (ast.children().empty()) {
        const auto s = nfa.add();
        const auto a = nfa.add();
        nfa.states[s].epsilon.push_back(a);
        return {s, a};
      }
      Fragment whole = build(nfa, ast.children().front(), alphabet);
      for (std::size_t i = 1; i < ast.children().size(); ++i) {
        const Fragment next = build(nfa, ast.children()[i], alphabet);
        nfa.states[whole.accept].epsilon.push_back(next.start);
        whole.accept = next.accept;
      }
      return whole;
    }
    case Ast::Kind::alternation: {
      const auto s = nfa.add();
      const auto a = nfa.add();
      for (const auto& option : ast.children()) {
        const Fragment f = build(nfa, option, alphabet);
        nfa.states[s].epsilon.push_back(f.start);
        nfa.states[f.accept].epsilon.push_back(a);
      }
      return {s, a};
    }
    case Ast::Kind::star: {
      const auto s = nfa.add();
      const auto a = nfa.add();
      const Fragment f = build(nfa, ast.children().front(), alphabet);
      nfa.states[s].epsilon.push_back(f.start);
      nfa.states[s].epsilon.push_back(a);
      nfa.states[f.accept].epsilon.push_back(f.start);
      nfa.states[f.accept].epsilon.push_back(a);
      return {s, a};
    }
  }
  throw ArgumentError("unknown AST node");
}

using StateSet = std::vector<std::uint32_t>;

StateSet closure(const Nfa& nfa, StateSet set) {
  std::vector<bool> in(nfa.states.size(), false);
  std::vector<std::uint32_t> stack = set;
  for (auto s : set) in[s] = true;
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    for (auto t : nfa.states[s].epsilon)
      if (!in[t]) {
        in[t] = true;
        set.push_back(t);
        stack.push_back(t);
      }
  }
  std::sort(set.begin(), set.end());
  return set;
}

Dfa subset_construction(const Nfa& nfa, Fragment frag, std::string_view alphabet) {
  Dfa dfa;
  dfa.alphabet = std::string(alphabet);
  const std::size_t k = alphabet.size();

  std::map<StateSet, std::uint32_t> ids;
  std::vector<StateSet> sets;
  auto intern = [&](StateSet set) {
    auto [it, inserted] = ids.emplace(set, static_cast<std::uint32_t>(sets.size()));
    if (inserted) sets.push_back(std::move(set));
    return it->second;
  };

  dfa.start = intern(closure(nfa, {frag.start}));
  for (std::size_t cur = 0; cur < sets.size(); ++cur) {
    for (std::size_t sym = 0; sym < k; ++sym) {
      StateSet moved;
      for (auto s : sets[cur])
        if (nfa.states[s].symbol == static_cast<int>(sym)) moved.push_back(nfa.states[s].target);
      const auto id = intern(closure(nfa, std::move(moved)));  // empty set is the dead state
      dfa.transitions.push_back(id);
    }
  }
  dfa.accepting.resize(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    dfa.accepting[i] = std::binary_search(sets[i].begin(), sets[i].end(), frag.accept);
  return dfa;
}

/// Moore partition refinement followed by BFS renumbering.
Dfa minimize(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.symbol_count();

  std::vector<std::uint32_t> block(n);
  for (std::size_t q = 0; q < n; ++q) block[q] = dfa.accepting[q] ? 1 : 0;
  std::size_t block_count = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> signatures;
    std::vector<std::uint32_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::uint32_t> sig{block[q]};
      for (std::size_t s = 0; s < k; ++s) sig.push_back(block[dfa.next(static_cast<std::uint32_t>(q), s)]);
      auto [it, _] = signatures.emplace(std::move(sig), static_cast<std::uint32_t>(signatures.size()));
      next[q] = it->second;
    }
    block = std::move(next);
    if (signatures.size() == block_count) break;
    block_count = signatures.size();
  }

  // Canonical numbering: BFS from the start block, symbols in alphabet order.
  std::vector<std::uint32_t> representative(block_count);
  for (std::size_t q = n; q-- > 0;) representative[block[q]] = static_cast<std::uint32_t>(q);

  std::vector<std::int64_t> order(block_count, -1);
  std::vector<std::uint32_t> queue{block[dfa.start]};
  order[block[dfa.start]] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto rep = representative[queue[head]];
    for (std::size_t s = 0; s < k; ++s) {
      const auto b = block[dfa.next(rep, s)];
      if (order[b] < 0) {
        order[b] = static_cast<std::int64_t>(queue.size());
        queue.push_back(b);
      }
    }
  }

  Dfa out;
  out.alphabet = dfa.alphabet;
  out.start = 0;
  out.accepting.resize(queue.size());
  out.transitions.resize(queue.size() * k);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto rep = representative[queue[i]];
    out.accepting[i] = dfa.accepting[rep];
    for (std::size_t s = 0; s < k; ++s)
      out.transitions[i * k + s] = static_cast<std::uint32_t>(order[block[dfa.next(rep, s)]]);
  }
  return out;
}

void add_checked(u128& acc, u128 v) {
  if (__builtin_add_overflow(acc, v, &acc))
    throw RangeError("member count exceeds 128-bit range; lower max_len");
}

}  // namespace

int Dfa::symbol_index(char c) const {
  const auto pos = alphabet.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

Dfa compile(const Ast& pattern, std::string_view alphabet) {
  if (alphabet.empty()) throw ArgumentError("empty alphabet");
  Nfa nfa;
  const Fragment frag = build(nfa, pattern, alphabet);
  return minimize(subset_construction(nfa, frag, alphabet));
}

Dfa complement(const Dfa& dfa) {
  Dfa out = dfa;
  out.accepting.flip();
  return out;
}

bool is_member(const Dfa& dfa, std::string_view symbols) {
  std::uint32_t q = dfa.start;
  for (char c : symbols) {
    const int s = dfa.symbol_index(c);
    if (s < 0)
      throw AlphabetError(std::string("symbol '") + c + "' not in alphabet {" + dfa.alphabet + "}");
    q = dfa.next(q, static_cast<std::size_t>(s));
  }
  return dfa.accepting[q];
}

CountTable::CountTable(std::size_t max_len, std::size_t states)
    : max_len_(max_len), states_(states), counts_((max_len + 1) * states, 0) {}

CountTable count_by_length(const Dfa& dfa, std::size_t max_len) {
  CountTable table(max_len, dfa.state_count());
  for (std::uint32_t q = 0; q < dfa.state_count(); ++q) table.at(0, q) = dfa.accepting[q] ? 1 : 0;
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::uint32_t q = 0; q < dfa.state_count(); ++q) {
      u128 total = 0;
      for (std::size_t s = 0; s < dfa.symbol_count(); ++s)
        add_checked(total, table.at(len - 1, dfa.next(q, s)));
      table.at(len, q) = total;
    }
  return table;
}

u128 members_of_length(const Dfa& dfa, const CountTable& table, std::size_t len) {
  if (len > table.max_len()) throw RangeError("length beyond count table");
  return table.at(len, dfa.start);
}

std::vector<std::size_t> feasible_lengths(const Dfa& dfa, const CountTable& table) {
  std::vector<std::size_t> out;
  for (std::size_t len = 1; len <= table.max_len(); ++len)
    if (table.at(len, dfa.start) > 0) out.push_back(len);
  return out;
}

std::string sample_member_of_length(const Dfa& dfa, const CountTable& table, std::size_t len,
                                    Rng& rng) {
  const u128 total = members_of_length(dfa, table, len);
  if (total == 0) throw GenerationError("no members of length " + std::to_string(len));
  u128 pick = rng.below128(total);
  std::string out;
  out.reserve(len);
  std::uint32_t q = dfa.start;
  for (std::size_t remaining = len; remaining > 0; --remaining) {
    for (std::size_t s = 0; s < dfa.symbol_count(); ++s) {
      const auto next = dfa.next(q, s);
      const u128 c = table.at(remaining - 1, next);
      if (pick < c) {
        out.push_back(dfa.alphabet[s]);
        q = next;
        break;
      }
      pick -= c;
    }
  }
  return out;
}

std::string sample_member(const Dfa& dfa, const CountTable& table, Rng& rng) {
  const auto lengths = feasible_lengths(dfa, table);
  if (lengths.empty()) throw GenerationError("language has no nonempty members up to max_len");
  return sample_member_of_length(dfa, table, lengths[rng.index(lengths.size())], rng);
}

std::string sample_nonmember(const Dfa& dfa, std::size_t max_len, Rng& rng) {
  const Dfa other = complement(dfa);
  const CountTable table = count_by_length(other, max_len);
  if (feasible_lengths(other, table).empty())
    throw GenerationError("complement has no nonempty strings up to max_len");
  return sample_member(other, table, rng);
}

LanguageSampler::LanguageSampler(Dfa dfa, std::size_t max_len)
    : dfa_(std::move(dfa)),
      complement_(complement(dfa_)),
      max_len_(max_len),
      members_(count_by_length(dfa_, max_len)),
      nonmembers_(count_by_length(complement_, max_len)) {}

std::string LanguageSampler::sample_member(Rng& rng) const {
  return regex::sample_member(dfa_, members_, rng);
}

std::string LanguageSampler::sample_nonmember(Rng& rng) const {
  if (feasible_lengths(complement_, nonmembers_).empty())
    throw GenerationError("complement has no nonempty strings up to max_len");
  return regex::sample_member(complement_, nonmembers_, rng);
}

Ast pattern_ast(TaskId task) {
  switch (task) {
    case TaskId::regex_012:
      return Ast::concat({Ast::star(Ast::any_of("012")), Ast::symbol('0'), Ast::star(Ast::symbol('2'))});
    case TaskId::regex_abcde: {
      std::vector<Ast> parts;
      for (char c : std::string_view("abcde")) {
        parts.push_back(Ast::symbol(c));
        parts.push_back(Ast::star(Ast::symbol(c)));
      }
      return Ast::concat(std::move(parts));
    }
    default: throw ArgumentError(std::string(task_name(task)) + " is not a regex task");
  }
}

std::string_view pattern_alphabet(TaskId task) {
  if (task != TaskId::regex_012 && task != TaskId::regex_abcde)
    throw ArgumentError(std::string(task_name(task)) + " is not a regex task");
  return task_spec(task).alphabet;
}

std::size_t pattern_max_len(TaskId task) {
  if (task != TaskId::regex_012 && task != TaskId::regex_abcde)
    throw ArgumentError(std::string(task_name(task)) + " is not a regex task");
  return task_spec(task).max_length;
}

const LanguageSampler& sampler_for(TaskId task) {
  static const LanguageSampler s012(compile(pattern_ast(TaskId::regex_012), "012"),
                                    pattern_max_len(TaskId::regex_012));
  static const LanguageSampler sabcde(compile(pattern_ast(TaskId::regex_abcde), "abcde"),
                                      pattern_max_len(TaskId::regex_abcde));
  switch (task) {
    case TaskId::regex_012: return s012;
    case TaskId::regex_abcde: return sabcde;
    default: throw ArgumentError(std::string(task_name(task)) + " is not a regex task");
  }
}

std::string to_text(const Dfa& dfa) {
  std::ostringstream os;
  os << "alphabet " << dfa.alphabet << "\n";
  os << "start " << dfa.start << "\n";
  for (std::uint32_t q = 0; q < dfa.state_count(); ++q) {
    os << q << (dfa.accepting[q] ? " accept" : " reject") << ":";
    for (std::size_t s = 0; s < dfa.symbol_count(); ++s)
      os << ' ' << dfa.alphabet[s] << "->" << dfa.next(q, s);
    os << "\n";
  }
  return os.str();
}

namespace {

void check_symbols(TaskId task, std::string_view s) {
  const auto alphabet = pattern_alphabet(task);
  if (s.empty() || s.size() > pattern_max_len(task))
    throw RangeError(std::string(task_name(task)) + ": length " + std::to_string(s.size()) +
                     " outside [1, " + std::to_string(pattern_max_len(task)) + "]");
  for (char c : s)
    if (alphabet.find(c) == std::string_view::npos)
      throw RangeError(std::string(task_name(task)) + ": symbol '" + std::string(1, c) +
                       "' outside the alphabet");
}

}  // namespace

int oracle(TaskId task, const StringInstance& x) {
  if (x.t) throw ConstraintError("regex tasks take a single string");
  return is_member(sampler_for(task).dfa(), x.s) ? 1 : 0;
}

std::string render(TaskId task, const StringInstance& x) {
  if (x.t) throw RangeError("regex tasks take a single string");
  check_symbols(task, x.s);
  return surface::spaced(x.s);
}

StringInstance parse(TaskId task, std::string_view input) {
  StringInstance x{surface::unspaced(input), std::nullopt};
  check_symbols(task, x.s);
  return x;
}

Example generate(TaskId task, int label, Rng& rng) {
  const auto& sampler = sampler_for(task);
  if (label != 0 && label != 1)
    throw ArgumentError(std::string(task_name(task)) + ": label must be 0 or 1");
  StringInstance x{label == 1 ? sampler.sample_member(rng) : sampler.sample_nonmember(rng),
                   std::nullopt};
  return {render(task, x), oracle(task, x)};
}

}  // namespace nilm::regex
