#include "nilm/dataset_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "nilm/error.hpp"
#include "nilm/generate.hpp"

namespace nilm::io {
namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
    throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string serialize_split(std::span<const Example> examples, Format format) {
  std::string out;
  for (const auto& ex : examples) {
    out += format_record(ex, format);
    out += '\n';
  }
  return out;
}

std::vector<Example> parse_split(TaskId task, std::string_view text) {
  std::vector<Example> out;
  std::size_t line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    out.push_back(parse_example(task, line, line_number));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::vector<Example> read_split(TaskId task, const fs::path& path) {
  try {
    return parse_split(task, read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json to_json(const Manifest& m) {
  nlohmann::json j;
  j["task"] = task_name(m.task);
  j["seed"] = m.seed;
  j["generator_version"] = m.generator_version;
  j["format"] = format_name(m.format);
  nlohmann::json splits;
  for (Split s : kSplits) {
    const auto& r = m.splits[static_cast<std::size_t>(s)];
    splits[std::string(split_name(s))] = {{"file", r.file}, {"count", r.count}, {"sha256", r.sha256}};
  }
  j["splits"] = splits;
  j["config"] = m.config;
  return j;
}

Manifest manifest_from_json(const nlohmann::json& j) {
  try {
    Manifest m;
    m.task = parse_task(j.at("task").get<std::string>());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.generator_version = j.at("generator_version").get<std::string>();
    m.format = parse_format(j.at("format").get<std::string>());
    for (Split s : kSplits) {
      const auto& r = j.at("splits").at(std::string(split_name(s)));
      auto& rec = m.splits[static_cast<std::size_t>(s)];
      rec.file = r.at("file").get<std::string>();
      rec.count = r.at("count").get<std::size_t>();
      rec.sha256 = r.at("sha256").get<std::string>();
    }
    if (j.contains("config")) m.config = j["config"];
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
}

Manifest write_dataset(const Dataset& dataset, const fs::path& root, Format format,
                       std::uint64_t seed, const nlohmann::json& config) {
  const fs::path dir = root / std::string(task_name(dataset.task));
  fs::create_directories(dir);

  Manifest m;
  m.task = dataset.task;
  m.seed = seed;
  m.generator_version = std::string(kGeneratorVersion);
  m.format = format;
  m.config = config;
  for (Split s : kSplits) {
    const std::string text = serialize_split(dataset[s], format);
    auto& rec = m.splits[static_cast<std::size_t>(s)];
    rec.file = std::string(split_name(s)) + "." + std::string(format_name(format));
    rec.count = dataset[s].size();
    rec.sha256 = sha256_hex(text);
    write_text(dir / rec.file, text);
  }
  write_text(dir / "manifest.json", to_json(m).dump(2) + "\n");
  return m;
}

Manifest read_manifest(const fs::path& task_dir) {
  const std::string text = read_text(task_dir / "manifest.json");
  try {
    return manifest_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError((task_dir / "manifest.json").string() + ": " + e.what());
  }
}

Dataset read_dataset(const fs::path& task_dir) {
  const Manifest m = read_manifest(task_dir);
  Dataset ds;
  ds.task = m.task;
  for (Split s : kSplits) ds[s] = read_split(m.task, task_dir / m.splits[static_cast<std::size_t>(s)].file);
  return ds;
}

std::vector<std::string> verify_checksums(const fs::path& task_dir) {
  std::vector<std::string> problems;
  const Manifest m = read_manifest(task_dir);
  for (Split s : kSplits) {
    const auto& rec = m.splits[static_cast<std::size_t>(s)];
    const fs::path path = task_dir / rec.file;
    if (!fs::exists(path)) {
      problems.push_back("missing split file " + path.string());
      continue;
    }
    const std::string actual = sha256_hex(read_text(path));
    if (actual != rec.sha256)
      problems.push_back("checksum mismatch for " + path.string() + ": manifest " + rec.sha256 +
                         ", file " + actual);
  }
  return problems;
}

nlohmann::json to_json(const SweepPlan& plan) {
  nlohmann::json j;
  j["base_seed"] = plan.base_seed;
  j["sizes"] = plan.sizes;
  j["runs"] = plan.runs;
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t i = 0; i < plan.sizes.size(); ++i)
    cells.push_back({{"size", plan.sizes[i]}, {"runs", plan.runs[i]}});
  j["cells"] = cells;
  return j;
}

SweepPlan sweep_plan_from_json(const nlohmann::json& j) {
  try {
    SweepPlan plan;
    plan.base_seed = j.at("base_seed").get<std::uint64_t>();
    plan.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    plan.runs = j.at("runs").get<std::vector<std::size_t>>();
    if (plan.sizes.size() != plan.runs.size())
      throw ParseError("sweep plan: sizes and runs differ in length");
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed sweep plan: ") + e.what());
  }
}

}  // namespace nilm::io
