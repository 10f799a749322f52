#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "nilm/exec.hpp"
#include "nilm/rng.hpp"

// Synthetic and perturbed pretraining corpora.
namespace nilm::corpus {

using Sentence = std::vector<std::string>;

/// One sentence per line, tokens separated by single spaces.
struct Corpus {
  std::vector<Sentence> sentences;

  std::size_t token_count() const;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

inline constexpr std::size_t kVocabularyTarget = 30000;
inline constexpr std::size_t kSyntheticVocabularySize = 26 * 26 * 26;

struct VocabEntry {
  std::string word;
  std::uint64_t count = 0;
};

/// Word types ranked by descending count, ties broken lexicographically.
/// Rank 1 is entries[0].
struct Vocabulary {
  std::vector<VocabEntry> entries;
  /// Set when the source had fewer types than requested.
  bool short_of_target = false;

  std::size_t size() const { return entries.size(); }
};

Vocabulary build_vocab(const Corpus& corpus, std::size_t max_types = kVocabularyTarget);

/// Stand-in vocabulary "w00000", "w00001", ... when no source text is given.
Vocabulary placeholder_vocab(std::size_t size);

/// All 26^3 lowercase three-letter words in lexicographic order.
std::vector<std::string> synthetic_vocabulary();

/// Zipf-Mandelbrot unigram law p(r) ∝ (r + beta)^(-alpha), r = 1..vocab_size.
struct ZipfConfig {
  double alpha = 1.0;
  double beta = 2.7;
  std::size_t vocab_size = kVocabularyTarget;

  /// Throws ArgumentError unless alpha > 0, beta >= 0 and vocab_size >= 1.
  void validate() const;
};

/// Normalized probabilities over ranks 1..n.
std::vector<double> zipf_probabilities(const ZipfConfig& config, std::size_t n);

/// Draws words by inverse CDF, or uniformly when constructed without weights.
class TokenSampler {
public:
  explicit TokenSampler(std::vector<std::string> words);
  TokenSampler(std::vector<std::string> words, std::span<const double> probabilities);

  const std::string& draw(Rng& rng) const;
  std::size_t size() const { return words_.size(); }

private:
  std::vector<std::string> words_;
  std::vector<double> cumulative_;
};

enum class CorpusKind { zipf, uniform, synthetic_vocab, perturb_sort, perturb_shuffle, passthrough };

std::string_view kind_name(CorpusKind kind);
CorpusKind parse_kind(std::string_view name);

struct CorpusRecipe {
  CorpusKind kind = CorpusKind::zipf;
  std::size_t sentence_count = 500000;
  std::size_t min_sentence_length = 5;
  std::size_t max_sentence_length = 30;
  std::uint64_t seed = 0;
  /// Source text: the vocabulary source for zipf/uniform, the corpus for
  /// perturbations and passthrough.
  std::string source;
  ZipfConfig zipf;
  bool lowercase = true;

  /// Throws ArgumentError for inconsistent recipes.
  void validate() const;
};

nlohmann::json to_json(const CorpusRecipe& recipe);
CorpusRecipe recipe_from_json(const nlohmann::json& j);

Corpus sample_zipf_corpus(const Vocabulary& vocab, const ZipfConfig& config,
                          const CorpusRecipe& recipe, Exec exec = Exec::parallel);
Corpus sample_uniform_corpus(const Vocabulary& vocab, const CorpusRecipe& recipe,
                             Exec exec = Exec::parallel);
Corpus gen_synthetic_vocab_corpus(const CorpusRecipe& recipe, Exec exec = Exec::parallel);

/// Byte-wise sort of the tokens of every line.
Corpus perturb_sort(Corpus corpus, Exec exec = Exec::parallel);
/// Uniform permutation of the tokens of every line; line i uses a stream
/// derived from (seed, i).
Corpus perturb_shuffle(Corpus corpus, std::uint64_t seed, Exec exec = Exec::parallel);

struct IngestRules {
  bool lowercase = true;  // ASCII letters only
};

struct IngestResult {
  Corpus corpus;
  std::size_t lines = 0;
  std::size_t tokens = 0;
  std::size_t empty_lines = 0;
  bool empty_warning = false;
};

/// Reads line-segmented UTF-8 text. Each line becomes one sentence (possibly
/// empty) of whitespace-separated tokens. Throws IoError when unreadable and
/// ParseError on invalid UTF-8.
IngestResult ingest_text(const std::filesystem::path& path, const IngestRules& rules = {});
IngestResult ingest_string(std::string_view text, const IngestRules& rules = {});

std::string to_text(const Corpus& corpus);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Least-squares slope of log(frequency) against log(rank) over ranks
/// [lo_rank, hi_rank], ranks ordered by observed frequency. nullopt when the
/// corpus has fewer than hi_rank types.
std::optional<double> rank_frequency_slope(const Corpus& corpus, std::size_t lo_rank = 10,
                                           std::size_t hi_rank = 1000);

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t types = 0;
  std::optional<double> zipf_slope;
};

CorpusStats compute_stats(const Corpus& corpus);
nlohmann::json to_json(const CorpusStats& stats);

/// Builds the corpus a recipe describes, reading `source` where needed.
Corpus run_recipe(const CorpusRecipe& recipe, Exec exec = Exec::parallel);

}  // namespace nilm::corpus
