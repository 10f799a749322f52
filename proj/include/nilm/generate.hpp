#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nilm/exec.hpp"
#include "nilm/rng.hpp"
#include "nilm/task_model.hpp"

namespace nilm {

/// Recorded in manifests. Bump when generated bytes change for a fixed seed.
inline constexpr std::string_view kGeneratorVersion = "nilm-gen/1";

/// Draws one example with the given label from the task's family generator.
Example generate_example(TaskId task, int label, Rng& rng);

/// Number of distinct inputs carrying `label`, or nullopt when the input
/// space is large enough never to constrain a split.
std::optional<std::uint64_t> label_capacity(TaskId task, int label);

/// Per-label example counts for one split, indexed by label - labels.lo.
///
/// Labels are balanced (binary exactly 50/50, 10-way uniform, remainders to
/// the lowest labels). A label whose capacity cannot cover its share is
/// capped at floor(capacity * split_size / total_size) and the rest is spread
/// evenly over the other labels.
std::vector<std::size_t> label_quota(TaskId task, Split split, const SplitSizes& sizes);

/// Generates all three splits. Inputs are unique across the whole dataset:
/// a colliding candidate is redrawn from its slot's next stream attempt.
/// Output depends only on (task, seed, sizes), never on `exec` or threads.
Dataset generate_dataset(TaskId task, std::uint64_t seed, const SplitSizes& sizes,
                         Exec exec = Exec::parallel);

/// Maximum redraws of one slot before GenerationError.
inline constexpr std::uint32_t kDedupBudget = 1'000'000;

}  // namespace nilm
