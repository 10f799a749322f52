#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nilm/task_model.hpp"

// On-disk layout: <root>/<task>/{train,dev,test}.{jsonl,tsv} + manifest.json.
namespace nilm::io {

std::string sha256_hex(std::string_view data);

std::string serialize_split(std::span<const Example> examples, Format format);

/// Parses every line with parse_example; errors carry the line number.
std::vector<Example> parse_split(TaskId task, std::string_view text);
std::vector<Example> read_split(TaskId task, const std::filesystem::path& path);

struct SplitRecord {
  std::string file;
  std::size_t count = 0;
  std::string sha256;
};

struct Manifest {
  TaskId task = TaskId::odd;
  std::uint64_t seed = 0;
  std::string generator_version;
  Format format = Format::jsonl;
  std::array<SplitRecord, 3> splits;
  /// Resolved command configuration that produced the files.
  nlohmann::json config = nlohmann::json::object();

  SplitSizes sizes() const { return {splits[0].count, splits[1].count, splits[2].count}; }
};

nlohmann::json to_json(const Manifest& manifest);
Manifest manifest_from_json(const nlohmann::json& j);

/// Writes the split files and manifest.json under root/<task>/ and returns
/// the manifest. File bytes depend only on the dataset, format and config.
Manifest write_dataset(const Dataset& dataset, const std::filesystem::path& root, Format format,
                       std::uint64_t seed, const nlohmann::json& config = nlohmann::json::object());

Manifest read_manifest(const std::filesystem::path& task_dir);
Dataset read_dataset(const std::filesystem::path& task_dir);

/// Recomputes split checksums and compares them with the manifest. Returns
/// one message per mismatch or missing file.
std::vector<std::string> verify_checksums(const std::filesystem::path& task_dir);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

nlohmann::json to_json(const SweepPlan& plan);
SweepPlan sweep_plan_from_json(const nlohmann::json& j);

}  // namespace nilm::io
