#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nilm/rng.hpp"
#include "nilm/task_model.hpp"

namespace testing {

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / ("nilm-test-" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

/// A label drawn uniformly from the task's label space.
inline int random_label(nilm::TaskId task, nilm::Rng& rng) {
  const auto& labels = nilm::task_spec(task).labels;
  return static_cast<int>(rng.uniform_int(labels.lo, labels.hi));
}

}  // namespace testing
