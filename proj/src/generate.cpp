#include "nilm/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "nilm/error.hpp"
#include "nilm/kernels.hpp"
#include "nilm/numeric_tasks.hpp"
#include "nilm/regular_language.hpp"
#include "nilm/string_tasks.hpp"

namespace nilm {
namespace {

// Capacities above this never bind for any split size we generate.
constexpr long double kUnbounded = 1e12L;

std::optional<std::uint64_t> bounded(long double count) {
  if (count > kUnbounded) return std::nullopt;
  return static_cast<std::uint64_t>(std::llround(count));
}

long double binomial(int n, int k) {
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Strings of length len over exactly d given symbols, each used at least once.
long double surjections(int len, int d) {
  long double total = 0;
  for (int j = 0; j <= d; ++j) {
    const long double term = binomial(d, j) * std::pow(static_cast<long double>(d - j), len);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

}  // namespace

Example generate_example(TaskId task, int label, Rng& rng) {
  switch (family_of(task)) {
    case TaskFamily::numeric: return numeric::generate(task, label, rng);
    case TaskFamily::regular_language: return regex::generate(task, label, rng);
    case TaskFamily::string: return strings::generate(task, label, rng);
  }
  throw ArgumentError("unreachable");
}

std::optional<std::uint64_t> label_capacity(TaskId task, int label) {
  const auto& spec = task_spec(task);
  if (!spec.labels.contains(label)) throw ArgumentError("label outside label space");
  switch (task) {
    case TaskId::str_length: {
      const int len = label == 0 ? 10 : label;
      return bounded(std::pow(26.0L, len));
    }
    case TaskId::unique_count: {
      const int distinct = label == 0 ? 10 : label;
      long double total = 0;
      for (int len = 10; len <= 30; ++len) total += binomial(10, distinct) * surjections(len, distinct);
      return bounded(total);
    }
    default:
      return std::nullopt;
  }
}

std::vector<std::size_t> label_quota(TaskId task, Split split, const SplitSizes& sizes) {
  const auto& labels = task_spec(task).labels;
  const auto k = static_cast<std::size_t>(labels.count());
  const std::size_t n = sizes[split];
  const std::size_t total = sizes.total();

  constexpr auto kNoCap = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> cap(k, kNoCap);
  for (std::size_t l = 0; l < k; ++l) {
    if (auto c = label_capacity(task, labels.lo + static_cast<int>(l)))
      cap[l] = static_cast<std::size_t>(
          (static_cast<long double>(*c) * static_cast<long double>(n)) / static_cast<long double>(total));
  }

  std::vector<std::size_t> quota(k, 0);
  std::vector<bool> fixed(k, false);
  std::size_t remaining = n;
  std::size_t free_labels = k;
  for (bool changed = true; changed && free_labels > 0;) {
    changed = false;
    for (std::size_t l = 0; l < k; ++l) {
      // cap < remaining / free_labels, compared without division.
      if (!fixed[l] && cap[l] != kNoCap && cap[l] * free_labels < remaining) {
        quota[l] = cap[l];
        fixed[l] = true;
        remaining -= cap[l];
        --free_labels;
        changed = true;
      }
    }
  }
  if (free_labels == 0) {
    if (remaining > 0)
      throw GenerationError(std::string(task_name(task)) + ": input space too small for " +
                            std::to_string(n) + " examples");
    return quota;
  }
  const std::size_t base = remaining / free_labels;
  std::size_t extra = remaining % free_labels;
  for (std::size_t l = 0; l < k; ++l) {
    if (fixed[l]) continue;
    quota[l] = base;
    if (extra > 0) {
      ++quota[l];
      --extra;
    }
  }
  return quota;
}

Dataset generate_dataset(TaskId task, std::uint64_t seed, const SplitSizes& sizes, Exec exec) {
  const auto& labels = task_spec(task).labels;

  std::vector<kernels::Slot> slots;
  slots.reserve(sizes.total());
  for (Split split : kSplits) {
    const auto quota = label_quota(task, split, sizes);
    std::vector<int> plan;
    plan.reserve(sizes[split]);
    for (std::size_t l = 0; l < quota.size(); ++l) plan.insert(plan.end(), quota[l], labels.lo + static_cast<int>(l));
    Rng rng(derive_seed(seed, {tag(StreamPurpose::label_plan), static_cast<std::uint64_t>(task),
                               static_cast<std::uint64_t>(split)}));
    rng.shuffle(std::span<int>(plan));
    for (std::size_t i = 0; i < plan.size(); ++i)
      slots.push_back({split, static_cast<std::uint32_t>(i), plan[i], 0});
  }

  std::vector<Example> accepted(slots.size());
  std::vector<std::size_t> pending(slots.size());
  for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;
  std::unordered_set<std::string> seen;
  seen.reserve(slots.size() * 2);

  std::vector<kernels::Slot> batch;
  std::vector<Example> candidates;
  while (!pending.empty()) {
    batch.clear();
    for (auto i : pending) batch.push_back(slots[i]);
    candidates.assign(batch.size(), Example{});
    if (exec == Exec::parallel)
      kernels::generate_candidates_omp(task, seed, batch, candidates);
    else
      kernels::generate_candidates_serial(task, seed, batch, candidates);

    // Resolve collisions in slot order so the result is schedule-independent.
    std::vector<std::size_t> retry;
    for (std::size_t j = 0; j < pending.size(); ++j) {
      const auto i = pending[j];
      if (seen.insert(candidates[j].input).second) {
        accepted[i] = std::move(candidates[j]);
      } else {
        if (++slots[i].attempt >= kDedupBudget)
          throw GenerationError(std::string(task_name(task)) +
                                ": could not draw a unique input for label " +
                                std::to_string(slots[i].label));
        retry.push_back(i);
      }
    }
    pending = std::move(retry);
  }

  Dataset ds;
  ds.task = task;
  for (std::size_t i = 0; i < slots.size(); ++i) ds[slots[i].split].push_back(std::move(accepted[i]));
  return ds;
}

}  // namespace nilm
