// Serial reference vs OpenMP kernels. Set OMP_NUM_THREADS to vary the team.

#include <benchmark/benchmark.h>

#include "nilm/corpus.hpp"
#include "nilm/kernels.hpp"

using namespace nilm;

namespace {

std::vector<kernels::Slot> make_slots(TaskId task, std::size_t n) {
  const auto& labels = task_spec(task).labels;
  std::vector<kernels::Slot> slots;
  slots.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    slots.push_back({Split::train, i, labels.lo + static_cast<int>(i % labels.count()), 0});
  return slots;
}

template <void (*Kernel)(TaskId, std::uint64_t, std::span<const kernels::Slot>, std::span<Example>)>
void BM_candidates(benchmark::State& state) {
  const auto task = static_cast<TaskId>(state.range(0));
  const auto slots = make_slots(task, 10000);
  std::vector<Example> out(slots.size());
  for (auto _ : state) {
    Kernel(task, 7, slots, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(slots.size()));
  state.SetLabel(std::string(task_name(task)));
}

const corpus::TokenSampler& sampler() {
  static const corpus::TokenSampler s(corpus::synthetic_vocabulary());
  return s;
}

template <void (*Kernel)(const corpus::TokenSampler&, std::uint64_t, std::size_t, std::size_t,
                         std::span<corpus::Sentence>)>
void BM_sentences(benchmark::State& state) {
  std::vector<corpus::Sentence> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Kernel(sampler(), 3, 5, 30, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<corpus::Sentence> lines(std::size_t n) {
  std::vector<corpus::Sentence> out(n);
  kernels::synthesize_sentences_omp(sampler(), 11, 5, 30, out);
  return out;
}

template <void (*Kernel)(std::span<corpus::Sentence>)>
void BM_sort(benchmark::State& state) {
  const auto source = lines(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    state.PauseTiming();
    auto work = source;
    state.ResumeTiming();
    Kernel(work);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <void (*Kernel)(std::span<corpus::Sentence>, std::uint64_t)>
void BM_shuffle(benchmark::State& state) {
  auto work = lines(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Kernel(work, 5);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <std::size_t (*Kernel)(std::span<const int>, std::span<const int>)>
void BM_count(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<int> predicted(n), gold(n);
  for (std::size_t i = 0; i < n; ++i) {
    predicted[i] = static_cast<int>(i % 10);
    gold[i] = static_cast<int>((i * 7) % 10);
  }
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(predicted, gold));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void task_args(benchmark::internal::Benchmark* b) {
  for (TaskId t : {TaskId::median, TaskId::decimal_word_op, TaskId::regex_abcde, TaskId::anagram})
    b->Arg(static_cast<int>(t));
}

}  // namespace

BENCHMARK(BM_candidates<kernels::generate_candidates_serial>)->Name("candidates/serial")->Apply(task_args);
BENCHMARK(BM_candidates<kernels::generate_candidates_omp>)->Name("candidates/omp")->Apply(task_args);
BENCHMARK(BM_sentences<kernels::synthesize_sentences_serial>)->Name("sentences/serial")->Arg(50000);
BENCHMARK(BM_sentences<kernels::synthesize_sentences_omp>)->Name("sentences/omp")->Arg(50000);
BENCHMARK(BM_sort<kernels::sort_lines_serial>)->Name("sort/serial")->Arg(50000);
BENCHMARK(BM_sort<kernels::sort_lines_omp>)->Name("sort/omp")->Arg(50000);
BENCHMARK(BM_shuffle<kernels::shuffle_lines_serial>)->Name("shuffle/serial")->Arg(50000);
BENCHMARK(BM_shuffle<kernels::shuffle_lines_omp>)->Name("shuffle/omp")->Arg(50000);
BENCHMARK(BM_count<kernels::count_correct_serial>)->Name("count/serial")->Arg(1 << 20);
BENCHMARK(BM_count<kernels::count_correct_omp>)->Name("count/omp")->Arg(1 << 20);

BENCHMARK_MAIN();
