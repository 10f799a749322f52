#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "nilm/error.hpp"
#include "nilm/generate.hpp"
#include "nilm/task_model.hpp"
#include "support/helpers.hpp"

using namespace nilm;

TEST_SUITE("task_model") {

TEST_CASE("nineteen tasks with stable unique names") {
  CHECK(all_tasks().size() == 19);
  std::set<std::string> names;
  for (TaskId t : all_tasks()) {
    names.insert(std::string(task_name(t)));
    CHECK(parse_task(task_name(t)) == t);
  }
  CHECK(names.size() == 19);
  CHECK(task_name(TaskId::max_freq_char) == "max_freq_char");
  CHECK_FALSE(find_task("nope").has_value());
  CHECK_THROWS_AS(parse_task("nope"), ArgumentError);
}

TEST_CASE("split sizes: regex tasks have a 2000-example test split") {
  for (TaskId t : all_tasks()) {
    const auto& s = task_spec(t).sizes;
    CHECK(s.train == 10000);
    CHECK(s.dev == 1000);
    const bool regex = t == TaskId::regex_012 || t == TaskId::regex_abcde;
    CHECK(s.test == (regex ? 2000u : 1000u));
  }
}

TEST_CASE("label spaces") {
  for (TaskId t : {TaskId::odd, TaskId::even, TaskId::odd_even, TaskId::regex_012, TaskId::palindrome,
                   TaskId::vowels, TaskId::parity})
    CHECK(task_spec(t).labels.binary());
  for (TaskId t : {TaskId::decimal_op, TaskId::mean, TaskId::median, TaskId::mode, TaskId::str_length,
                   TaskId::unique_count, TaskId::max_freq_char}) {
    CHECK(task_spec(t).labels.lo == 0);
    CHECK(task_spec(t).labels.hi == 9);
  }
}

TEST_CASE("render_example surface forms") {
  CHECK(render_example(TaskId::mean, NumberSet{{15, -8, 15, -5, -14, -3}}).input == "15,-8,15,-5,-14,-3 ?");
  const auto pal = render_example(TaskId::palindrome, StringInstance{"aWXXWa", std::nullopt});
  CHECK(pal.input == "a W X X W a");
  CHECK(pal.label == 1);
  const auto odd = render_example(TaskId::odd, ParityQuery{4210, std::nullopt});
  CHECK(odd.input == "4210");
  CHECK(odd.label == 0);
}

TEST_CASE("render_example rejects out-of-range payloads") {
  CHECK_THROWS_AS(render_input(TaskId::odd, ParityQuery{20001, std::nullopt}), RangeError);
  CHECK_THROWS_AS(render_input(TaskId::mean, NumberSet{{16, 1, 1, 1, 1}}), RangeError);
  CHECK_THROWS_AS(render_input(TaskId::str_length, StringInstance{"abcdefghijk", std::nullopt}), RangeError);
}

TEST_CASE("parse_example") {
  CHECK(parse_example(TaskId::odd, R"({"input":"4210","label":0})") == Example{"4210", 0});
  CHECK(parse_example(TaskId::str_length, R"({"input":"t e e o","label":4})") == Example{"t e e o", 4});
  CHECK(parse_example(TaskId::str_length, "t e e o\t4") == Example{"t e e o", 4});

  SUBCASE("missing label is a parse error with the line number") {
    try {
      parse_example(TaskId::odd, R"({"input":"4210"})", 17);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 17);
      CHECK(std::string(e.what()).find("line 17") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(parse_example(TaskId::odd, R"({"input":"4210","label":2})"), ParseError);
  CHECK_THROWS_AS(parse_example(TaskId::odd, R"({"input":"04210","label":0})"), ParseError);
  CHECK_THROWS_AS(parse_example(TaskId::odd, "not json"), ParseError);
  CHECK_THROWS_AS(parse_example(TaskId::palindrome, R"({"input":"aWXXWa","label":1})"), ParseError);
}

TEST_CASE("render/parse round trip over 10^4 random payloads per task") {
  for (TaskId task : all_tasks()) {
    CAPTURE(task_name(task));
    Rng rng(derive_seed(99, {static_cast<std::uint64_t>(task)}));
    for (int i = 0; i < 10000; ++i) {
      const Example ex = generate_example(task, testing::random_label(task, rng), rng);
      const Payload payload = parse_input(task, ex.input);
      REQUIRE(render_input(task, payload) == ex.input);
      REQUIRE(oracle_label(task, payload) == ex.label);
      for (Format f : {Format::jsonl, Format::tsv})
        REQUIRE(parse_example(task, format_record(ex, f)) == ex);
    }
  }
}

TEST_CASE("sweep plan") {
  const auto plan = SweepPlan::standard(3);
  const std::vector<std::size_t> sizes{10,   20,   40,   80,   160,  320,  640, 1280,
                                       2560, 5120, 6000, 7000, 8000, 9000, 10000};
  CHECK(plan.sizes == sizes);
  for (std::size_t i = 0; i < sizes.size(); ++i) CHECK(plan.runs[i] == (sizes[i] < 1000 ? 10u : 5u));
  CHECK(plan.runs_for(640) == 10);
  CHECK(plan.runs_for(1280) == 5);
  CHECK(plan.base_seed == 3);
}

namespace {
Dataset numbered_pool(std::size_t n) {
  Dataset ds;
  ds.task = TaskId::odd;
  for (std::size_t i = 0; i < n; ++i) ds[Split::train].push_back({std::to_string(i + 1), 0});
  return ds;
}
}  // namespace

TEST_CASE("subsample_training_set") {
  const Dataset ds = numbered_pool(10000);

  SUBCASE("full-size draw is the pool in order") {
    CHECK(subsample_training_set(ds, 10000, 0, 5) == ds[Split::train]);
  }
  SUBCASE("deterministic and in pool order") {
    const auto a = subsample_training_set(ds, 640, 3, 5);
    CHECK(a == subsample_training_set(ds, 640, 3, 5));
    CHECK(a.size() == 640);
    CHECK(std::is_sorted(a.begin(), a.end(),
                         [](const Example& x, const Example& y) { return std::stoi(x.input) < std::stoi(y.input); }));
    std::set<std::string> unique;
    for (const auto& e : a) unique.insert(e.input);
    CHECK(unique.size() == 640);
  }
  SUBCASE("too large") { CHECK_THROWS_AS(subsample_training_set(ds, 10001, 0, 5), RangeError); }

  SUBCASE("runs are independent draws") {
    // Two independent 10-of-10000 draws share 10*10/10000 = 0.01 elements on
    // average (hypergeometric mean); variance is just under that.
    double overlap_sum = 0.0;
    int identical = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto a = subsample_training_set(ds, 10, 0, seed);
      const auto b = subsample_training_set(ds, 10, 1, seed);
      std::set<std::string> sa;
      for (const auto& e : a) sa.insert(e.input);
      int shared = 0;
      for (const auto& e : b) shared += static_cast<int>(sa.count(e.input));
      overlap_sum += shared;
      identical += a == b ? 1 : 0;
    }
    CHECK(identical == 0);
    const double mean_overlap = overlap_sum / 1000.0;
    const double sd_of_mean = std::sqrt(0.0099 / 1000.0);
    CHECK(mean_overlap <= 0.01 + 5 * sd_of_mean);
  }
}

TEST_CASE("validate_dataset") {
  SUBCASE("conforming regex dataset") {
    const auto ds = generate_dataset(TaskId::regex_012, 1, task_spec(TaskId::regex_012).sizes);
    const auto report = validate_dataset(ds, task_spec(TaskId::regex_012));
    CHECK(report.ok);
    CHECK(ds.sizes() == SplitSizes{10000, 1000, 2000});
  }

  const SplitSizes small{200, 50, 50};
  TaskSpec spec = task_spec(TaskId::palindrome);
  spec.sizes = small;
  const auto ds = generate_dataset(TaskId::palindrome, 2, small);
  REQUIRE(validate_dataset(ds, spec).ok);

  SUBCASE("leakage between train and test") {
    auto bad = ds;
    bad[Split::test][0] = bad[Split::train][0];
    const auto report = validate_dataset(bad, spec);
    CHECK_FALSE(report.ok);
    CHECK(report.duplicates_across >= 1);
  }
  SUBCASE("duplicate within a split") {
    auto bad = ds;
    bad[Split::train][1] = bad[Split::train][0];
    CHECK(validate_dataset(bad, spec).duplicates_within >= 1);
  }
  SUBCASE("70/30 binary split fails balance") {
    TaskSpec parity_spec = task_spec(TaskId::odd);
    parity_spec.sizes = {1000, 10, 10};
    Dataset skewed;
    skewed.task = TaskId::odd;
    // 700 odd numbers (label 1) and 300 even ones.
    for (int n = 1; n < 1400; n += 2) skewed[Split::train].push_back({std::to_string(n), 1});
    for (int n = 2; n <= 600; n += 2) skewed[Split::train].push_back({std::to_string(n), 0});
    for (int i = 0; i < 10; ++i) {
      skewed[Split::dev].push_back({std::to_string(2001 + i), (2001 + i) % 2});
      skewed[Split::test].push_back({std::to_string(3001 + i), (3001 + i) % 2});
    }
    const auto report = validate_dataset(skewed, parity_spec);
    CHECK_FALSE(report.ok);
    const bool mentions_balance = std::any_of(report.failures.begin(), report.failures.end(), [](const std::string& f) {
      return f.find("balance") != std::string::npos;
    });
    CHECK(mentions_balance);
  }
  SUBCASE("wrong label") {
    auto bad = ds;
    bad[Split::dev][0].label = 1 - bad[Split::dev][0].label;
    CHECK(validate_dataset(bad, spec).oracle_mismatches == 1);
  }
  SUBCASE("wrong size") {
    auto bad = ds;
    bad[Split::train].pop_back();
    CHECK_FALSE(validate_dataset(bad, spec).ok);
  }
}

TEST_CASE("generation is deterministic and independent of execution mode") {
  const SplitSizes sizes{500, 100, 100};
  for (TaskId task : all_tasks()) {
    CAPTURE(task_name(task));
    const auto a = generate_dataset(task, 42, sizes, Exec::parallel);
    const auto b = generate_dataset(task, 42, sizes, Exec::serial);
    CHECK(a.splits == b.splits);
    CHECK(generate_dataset(task, 43, sizes).splits != a.splits);
  }
}

}  // TEST_SUITE
