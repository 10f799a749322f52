#include "nilm/kernels.hpp"

#include <algorithm>
#include <exception>

#include "nilm/generate.hpp"
#include "nilm/rng.hpp"

namespace nilm::kernels {
namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

corpus::Sentence make_sentence(const corpus::TokenSampler& sampler, std::uint64_t seed,
                               std::size_t i, std::size_t min_len, std::size_t max_len) {
  Rng rng(derive_seed(seed, {tag(StreamPurpose::corpus), i}));
  const auto len = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(max_len)));
  corpus::Sentence s;
  s.reserve(len);
  for (std::size_t t = 0; t < len; ++t) s.push_back(sampler.draw(rng));
  return s;
}

void shuffle_line(corpus::Sentence& line, std::uint64_t seed, std::size_t i) {
  Rng rng(derive_seed(seed, {tag(StreamPurpose::shuffle), i}));
  rng.shuffle(std::span<std::string>(line));
}

}  // namespace

std::uint64_t slot_seed(TaskId task, std::uint64_t seed, const Slot& slot) {
  return derive_seed(seed, {tag(StreamPurpose::example), static_cast<std::uint64_t>(task),
                            static_cast<std::uint64_t>(slot.split), slot.index, slot.attempt});
}

void generate_candidates_serial(TaskId task, std::uint64_t seed, std::span<const Slot> slots,
                                std::span<Example> out) {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Rng rng(slot_seed(task, seed, slots[i]));
    out[i] = generate_example(task, slots[i].label, rng);
  }
}

void generate_candidates_omp(TaskId task, std::uint64_t seed, std::span<const Slot> slots,
                             std::span<Example> out) {
  std::vector<std::exception_ptr> errors(slots.size());
  const auto n = static_cast<std::int64_t>(slots.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      Rng rng(slot_seed(task, seed, slots[static_cast<std::size_t>(i)]));
      out[static_cast<std::size_t>(i)] =
          generate_example(task, slots[static_cast<std::size_t>(i)].label, rng);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(errors);
}

void synthesize_sentences_serial(const corpus::TokenSampler& sampler, std::uint64_t seed,
                                 std::size_t min_len, std::size_t max_len,
                                 std::span<corpus::Sentence> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = make_sentence(sampler, seed, i, min_len, max_len);
}

void synthesize_sentences_omp(const corpus::TokenSampler& sampler, std::uint64_t seed,
                              std::size_t min_len, std::size_t max_len,
                              std::span<corpus::Sentence> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        make_sentence(sampler, seed, static_cast<std::size_t>(i), min_len, max_len);
}

void sort_lines_serial(std::span<corpus::Sentence> lines) {
  for (auto& line : lines) std::sort(line.begin(), line.end());
}

void sort_lines_omp(std::span<corpus::Sentence> lines) {
  const auto n = static_cast<std::int64_t>(lines.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& line = lines[static_cast<std::size_t>(i)];
    std::sort(line.begin(), line.end());
  }
}

void shuffle_lines_serial(std::span<corpus::Sentence> lines, std::uint64_t seed) {
  for (std::size_t i = 0; i < lines.size(); ++i) shuffle_line(lines[i], seed, i);
}

void shuffle_lines_omp(std::span<corpus::Sentence> lines, std::uint64_t seed) {
  const auto n = static_cast<std::int64_t>(lines.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    shuffle_line(lines[static_cast<std::size_t>(i)], seed, static_cast<std::size_t>(i));
}

std::size_t count_correct_serial(std::span<const int> predicted, std::span<const int> gold) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += predicted[i] == gold[i] ? 1 : 0;
  return correct;
}

std::size_t count_correct_omp(std::span<const int> predicted, std::span<const int> gold) {
  const auto n = static_cast<std::int64_t>(gold.size());
  std::int64_t correct = 0;
#pragma omp parallel for reduction(+ : correct) schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    correct += predicted[static_cast<std::size_t>(i)] == gold[static_cast<std::size_t>(i)] ? 1 : 0;
  return static_cast<std::size_t>(correct);
}

}  // namespace nilm::kernels
