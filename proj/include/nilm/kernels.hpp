#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "nilm/corpus.hpp"
#include "nilm/exec.hpp"
#include "nilm/task_model.hpp"

// Data-parallel inner loops. Every kernel has an OpenMP version and a serial
// reference; each output element depends only on its own derived stream, so
// the two produce identical results for any thread count.
namespace nilm::kernels {

/// One example position in a dataset being generated.
struct Slot {
  Split split = Split::train;
  std::uint32_t index = 0;
  int label = 0;
  std::uint32_t attempt = 0;
};

/// Seed of the stream that generates `slot` for `task`.
std::uint64_t slot_seed(TaskId task, std::uint64_t seed, const Slot& slot);

/// out[i] = generate_example(task, slots[i].label, Rng(slot_seed(...))).
void generate_candidates_serial(TaskId task, std::uint64_t seed, std::span<const Slot> slots,
                                std::span<Example> out);
void generate_candidates_omp(TaskId task, std::uint64_t seed, std::span<const Slot> slots,
                             std::span<Example> out);

/// out[i] is a sentence of uniform length in [min_len, max_len] with tokens
/// drawn from `sampler`, using a stream derived from (seed, i).
void synthesize_sentences_serial(const corpus::TokenSampler& sampler, std::uint64_t seed,
                                 std::size_t min_len, std::size_t max_len,
                                 std::span<corpus::Sentence> out);
void synthesize_sentences_omp(const corpus::TokenSampler& sampler, std::uint64_t seed,
                              std::size_t min_len, std::size_t max_len,
                              std::span<corpus::Sentence> out);

void sort_lines_serial(std::span<corpus::Sentence> lines);
void sort_lines_omp(std::span<corpus::Sentence> lines);

void shuffle_lines_serial(std::span<corpus::Sentence> lines, std::uint64_t seed);
void shuffle_lines_omp(std::span<corpus::Sentence> lines, std::uint64_t seed);

/// Number of correct predictions; predicted[i] pairs with gold[i].
std::size_t count_correct_serial(std::span<const int> predicted, std::span<const int> gold);
std::size_t count_correct_omp(std::span<const int> predicted, std::span<const int> gold);

}  // namespace nilm::kernels
