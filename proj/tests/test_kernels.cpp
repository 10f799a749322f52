#include "doctest.h"
#include "nilm/corpus.hpp"
#include "nilm/kernels.hpp"

using namespace nilm;

TEST_SUITE("kernels") {

TEST_CASE("serial and OpenMP kernels agree") {
  SUBCASE("candidates") {
    std::vector<kernels::Slot> slots;
    for (std::uint32_t i = 0; i < 2000; ++i) slots.push_back({Split::train, i, static_cast<int>(i % 10), i % 3});
    for (TaskId task : {TaskId::median, TaskId::unique_count, TaskId::decimal_word_op}) {
      std::vector<Example> a(slots.size()), b(slots.size());
      kernels::generate_candidates_serial(task, 1, slots, a);
      kernels::generate_candidates_omp(task, 1, slots, b);
      CHECK(a == b);
    }
  }
  SUBCASE("candidate errors propagate") {
    std::vector<kernels::Slot> slots{{Split::train, 0, 5, 0}};
    std::vector<Example> out(1);
    CHECK_THROWS(kernels::generate_candidates_omp(TaskId::odd, 1, slots, out));
  }

  const corpus::TokenSampler sampler(corpus::synthetic_vocabulary());
  std::vector<corpus::Sentence> a(3000), b(3000);
  kernels::synthesize_sentences_serial(sampler, 4, 5, 30, a);
  kernels::synthesize_sentences_omp(sampler, 4, 5, 30, b);
  REQUIRE(a == b);

  SUBCASE("sort") {
    auto x = a, y = a;
    kernels::sort_lines_serial(x);
    kernels::sort_lines_omp(y);
    CHECK(x == y);
  }
  SUBCASE("shuffle") {
    auto x = a, y = a;
    kernels::shuffle_lines_serial(x, 8);
    kernels::shuffle_lines_omp(y, 8);
    CHECK(x == y);
    CHECK(x != a);
  }
  SUBCASE("count") {
    std::vector<int> p(10001), g(10001);
    for (int i = 0; i < 10001; ++i) {
      p[i] = i % 3;
      g[i] = i % 2;
    }
    CHECK(kernels::count_correct_serial(p, g) == kernels::count_correct_omp(p, g));
  }
}

}  // TEST_SUITE
