#include "nilm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "nilm/dataset_io.hpp"
#include "nilm/error.hpp"
#include "nilm/kernels.hpp"
#include "nilm/special_functions.hpp"

namespace nilm::corpus {
namespace {

/// Byte offset of the first invalid UTF-8 sequence, or npos.
std::size_t invalid_utf8_at(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xc0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return i;
    i += len;
  }
  return std::string_view::npos;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

Sentence tokenize(std::string_view line, bool lowercase) {
  Sentence out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) {
      std::string token(line.substr(start, i - start));
      if (lowercase)
        for (auto& ch : token)
          if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
      out.push_back(std::move(token));
    }
  }
  return out;
}

Corpus synthesize(const TokenSampler& sampler, const CorpusRecipe& recipe, Exec exec) {
  recipe.validate();
  Corpus corpus;
  corpus.sentences.resize(recipe.sentence_count);
  if (exec == Exec::parallel)
    kernels::synthesize_sentences_omp(sampler, recipe.seed, recipe.min_sentence_length,
                                      recipe.max_sentence_length, corpus.sentences);
  else
    kernels::synthesize_sentences_serial(sampler, recipe.seed, recipe.min_sentence_length,
                                         recipe.max_sentence_length, corpus.sentences);
  return corpus;
}

std::vector<std::string> words_of(const Vocabulary& vocab, std::size_t n) {
  std::vector<std::string> words;
  words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) words.push_back(vocab.entries[i].word);
  return words;
}

Vocabulary source_vocab(const CorpusRecipe& recipe) {
  if (recipe.source.empty()) return placeholder_vocab(recipe.zipf.vocab_size);
  const auto ingested = ingest_text(recipe.source, {recipe.lowercase});
  if (ingested.corpus.token_count() == 0)
    throw ArgumentError("vocabulary source " + recipe.source + " has no tokens");
  return build_vocab(ingested.corpus, recipe.zipf.vocab_size);
}

}  // namespace

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

Vocabulary build_vocab(const Corpus& corpus, std::size_t max_types) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& s : corpus.sentences)
    for (const auto& w : s) ++counts[w];
  if (counts.empty()) throw ArgumentError("cannot build a vocabulary from an empty corpus");

  Vocabulary vocab;
  vocab.entries.reserve(counts.size());
  for (auto& [word, count] : counts) vocab.entries.push_back({word, count});
  std::sort(vocab.entries.begin(), vocab.entries.end(), [](const VocabEntry& a, const VocabEntry& b) {
    return a.count != b.count ? a.count > b.count : a.word < b.word;
  });
  if (vocab.entries.size() > max_types)
    vocab.entries.resize(max_types);
  else if (vocab.entries.size() < max_types)
    vocab.short_of_target = true;
  return vocab;
}

Vocabulary placeholder_vocab(std::size_t size) {
  Vocabulary vocab;
  vocab.entries.reserve(size);
  char buf[32];
  for (std::size_t i = 0; i < size; ++i) {
    std::snprintf(buf, sizeof buf, "w%05zu", i);
    vocab.entries.push_back({buf, 0});
  }
  return vocab;
}

std::vector<std::string> synthetic_vocabulary() {
  std::vector<std::string> words;
  words.reserve(kSyntheticVocabularySize);
  for (char a = 'a'; a <= 'z'; ++a)
    for (char b = 'a'; b <= 'z'; ++b)
      for (char c = 'a'; c <= 'z'; ++c) words.push_back({a, b, c});
  return words;
}

void ZipfConfig::validate() const {
  if (!(alpha > 0.0)) throw ArgumentError("zipf alpha must be > 0");
  if (!(beta >= 0.0)) throw ArgumentError("zipf beta must be >= 0");
  if (vocab_size < 1) throw ArgumentError("zipf vocab_size must be >= 1");
}

std::vector<double> zipf_probabilities(const ZipfConfig& config, std::size_t n) {
  config.validate();
  if (n < 1) throw ArgumentError("zipf distribution needs at least one rank");
  std::vector<double> p(n);
  double total = 0.0;
  for (std::size_t r = 1; r <= n; ++r) {
    p[r - 1] = std::pow(static_cast<double>(r) + config.beta, -config.alpha);
    total += p[r - 1];
  }
  for (auto& v : p) v /= total;
  return p;
}

TokenSampler::TokenSampler(std::vector<std::string> words) : words_(std::move(words)) {
  if (words_.empty()) throw ArgumentError("token sampler needs at least one word");
}

TokenSampler::TokenSampler(std::vector<std::string> words, std::span<const double> probabilities)
    : words_(std::move(words)) {
  if (words_.empty()) throw ArgumentError("token sampler needs at least one word");
  if (probabilities.size() != words_.size())
    throw ArgumentError("token sampler: one probability per word required");
  cumulative_.resize(words_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!(probabilities[i] >= 0.0)) throw ArgumentError("token sampler: negative probability");
    acc += probabilities[i];
    cumulative_[i] = acc;
  }
  if (!(acc > 0.0)) throw ArgumentError("token sampler: probabilities sum to zero");
  for (auto& c : cumulative_) c /= acc;
  cumulative_.back() = 1.0;
}

const std::string& TokenSampler::draw(Rng& rng) const {
  if (cumulative_.empty()) return words_[rng.index(words_.size())];
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return words_[static_cast<std::size_t>(it - cumulative_.begin())];
}

namespace {
constexpr std::pair<CorpusKind, std::string_view> kKindNames[] = {
    {CorpusKind::zipf, "zipf"},
    {CorpusKind::uniform, "uniform"},
    {CorpusKind::synthetic_vocab, "synthetic_vocab"},
    {CorpusKind::perturb_sort, "perturb_sort"},
    {CorpusKind::perturb_shuffle, "perturb_shuffle"},
    {CorpusKind::passthrough, "passthrough"},
};
}  // namespace

std::string_view kind_name(CorpusKind kind) {
  for (auto [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

CorpusKind parse_kind(std::string_view name) {
  for (auto [k, n] : kKindNames)
    if (n == name) return k;
  throw ArgumentError("unknown corpus kind \"" + std::string(name) + "\"");
}

void CorpusRecipe::validate() const {
  zipf.validate();
  if (min_sentence_length < 1) throw ArgumentError("min_sentence_length must be >= 1");
  if (min_sentence_length > max_sentence_length)
    throw ArgumentError("min_sentence_length exceeds max_sentence_length");
  const bool needs_source = kind == CorpusKind::perturb_sort || kind == CorpusKind::perturb_shuffle ||
                            kind == CorpusKind::passthrough;
  if (needs_source && source.empty())
    throw ArgumentError(std::string(kind_name(kind)) + " requires a source corpus");
}

nlohmann::json to_json(const CorpusRecipe& r) {
  return {{"kind", kind_name(r.kind)},
          {"sentence_count", r.sentence_count},
          {"min_sentence_length", r.min_sentence_length},
          {"max_sentence_length", r.max_sentence_length},
          {"seed", r.seed},
          {"source", r.source},
          {"zipf", {{"alpha", r.zipf.alpha}, {"beta", r.zipf.beta}, {"vocab_size", r.zipf.vocab_size}}},
          {"lowercase", r.lowercase}};
}

CorpusRecipe recipe_from_json(const nlohmann::json& j) {
  try {
    CorpusRecipe r;
    r.kind = parse_kind(j.at("kind").get<std::string>());
    r.sentence_count = j.value("sentence_count", r.sentence_count);
    r.min_sentence_length = j.value("min_sentence_length", r.min_sentence_length);
    r.max_sentence_length = j.value("max_sentence_length", r.max_sentence_length);
    r.seed = j.value("seed", r.seed);
    r.source = j.value("source", r.source);
    r.lowercase = j.value("lowercase", r.lowercase);
    if (j.contains("zipf")) {
      const auto& z = j["zipf"];
      r.zipf.alpha = z.value("alpha", r.zipf.alpha);
      r.zipf.beta = z.value("beta", r.zipf.beta);
      r.zipf.vocab_size = z.value("vocab_size", r.zipf.vocab_size);
    }
    r.validate();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed recipe: ") + e.what());
  }
}

Corpus sample_zipf_corpus(const Vocabulary& vocab, const ZipfConfig& config,
                          const CorpusRecipe& recipe, Exec exec) {
  config.validate();
  if (vocab.size() == 0) throw ArgumentError("zipf corpus needs a nonempty vocabulary");
  const std::size_t n = std::min(vocab.size(), config.vocab_size);
  const auto p = zipf_probabilities(config, n);
  return synthesize(TokenSampler(words_of(vocab, n), p), recipe, exec);
}

Corpus sample_uniform_corpus(const Vocabulary& vocab, const CorpusRecipe& recipe, Exec exec) {
  if (vocab.size() == 0) throw ArgumentError("uniform corpus needs a nonempty vocabulary");
  return synthesize(TokenSampler(words_of(vocab, vocab.size())), recipe, exec);
}

Corpus gen_synthetic_vocab_corpus(const CorpusRecipe& recipe, Exec exec) {
  return synthesize(TokenSampler(synthetic_vocabulary()), recipe, exec);
}

Corpus perturb_sort(Corpus corpus, Exec exec) {
  if (exec == Exec::parallel)
    kernels::sort_lines_omp(corpus.sentences);
  else
    kernels::sort_lines_serial(corpus.sentences);
  return corpus;
}

Corpus perturb_shuffle(Corpus corpus, std::uint64_t seed, Exec exec) {
  if (exec == Exec::parallel)
    kernels::shuffle_lines_omp(corpus.sentences, seed);
  else
    kernels::shuffle_lines_serial(corpus.sentences, seed);
  return corpus;
}

IngestResult ingest_string(std::string_view text, const IngestRules& rules) {
  if (const auto bad = invalid_utf8_at(text); bad != std::string_view::npos) {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + bad, '\n'));
    throw ParseError("invalid UTF-8 at byte " + std::to_string(bad), line);
  }
  IngestResult r;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto sentence = tokenize(text.substr(0, nl), rules.lowercase);
    if (sentence.empty()) ++r.empty_lines;
    r.tokens += sentence.size();
    r.corpus.sentences.push_back(std::move(sentence));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  r.lines = r.corpus.sentences.size();
  r.empty_warning = r.tokens == 0;
  return r;
}

IngestResult ingest_text(const std::filesystem::path& path, const IngestRules& rules) {
  const std::string text = io::read_text(path);
  try {
    return ingest_string(text, rules);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string to_text(const Corpus& corpus) {
  std::string out;
  for (const auto& s : corpus.sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) out += ' ';
      out += s[i];
    }
    out += '\n';
  }
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  io::write_text(path, to_text(corpus));
}

std::optional<double> rank_frequency_slope(const Corpus& corpus, std::size_t lo_rank,
                                           std::size_t hi_rank) {
  if (lo_rank < 1 || hi_rank <= lo_rank) throw ArgumentError("rank window must satisfy 1 <= lo < hi");
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& s : corpus.sentences)
    for (const auto& w : s) ++counts[w];
  if (counts.size() < hi_rank) return std::nullopt;
  std::vector<std::uint64_t> freq;
  freq.reserve(counts.size());
  for (const auto& [w, c] : counts) freq.push_back(c);
  std::sort(freq.begin(), freq.end(), std::greater<>());
  std::vector<double> x, y;
  for (std::size_t r = lo_rank; r <= hi_rank; ++r) {
    x.push_back(std::log(static_cast<double>(r)));
    y.push_back(std::log(static_cast<double>(freq[r - 1])));
  }
  return stats::least_squares(x, y).slope;
}

CorpusStats compute_stats(const Corpus& corpus) {
  CorpusStats st;
  st.sentences = corpus.sentences.size();
  st.tokens = corpus.token_count();
  std::unordered_map<std::string_view, bool> types;
  for (const auto& s : corpus.sentences)
    for (const auto& w : s) types.emplace(w, true);
  st.types = types.size();
  st.zipf_slope = rank_frequency_slope(corpus);
  return st;
}

nlohmann::json to_json(const CorpusStats& st) {
  nlohmann::json j{{"sentences", st.sentences}, {"tokens", st.tokens}, {"types", st.types}};
  j["zipf_slope_10_1000"] = st.zipf_slope ? nlohmann::json(*st.zipf_slope) : nlohmann::json(nullptr);
  return j;
}

Corpus run_recipe(const CorpusRecipe& recipe, Exec exec) {
  recipe.validate();
  switch (recipe.kind) {
    case CorpusKind::zipf:
      return sample_zipf_corpus(source_vocab(recipe), recipe.zipf, recipe, exec);
    case CorpusKind::uniform:
      return sample_uniform_corpus(source_vocab(recipe), recipe, exec);
    case CorpusKind::synthetic_vocab:
      return gen_synthetic_vocab_corpus(recipe, exec);
    case CorpusKind::perturb_sort:
      return perturb_sort(ingest_text(recipe.source, {recipe.lowercase}).corpus, exec);
    case CorpusKind::perturb_shuffle:
      return perturb_shuffle(ingest_text(recipe.source, {recipe.lowercase}).corpus, recipe.seed, exec);
    case CorpusKind::passthrough:
      return ingest_text(recipe.source, {recipe.lowercase}).corpus;
  }
  throw ArgumentError("unhandled corpus kind");
}

}  // namespace nilm::corpus
