#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "nilm/cli.hpp"
#include "nilm/dataset_io.hpp"
#include "nilm/eval.hpp"
#include "support/helpers.hpp"

using namespace nilm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result nilm_run(std::vector<std::string> args) {
  args.insert(args.begin(), "nilm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

/// Relative path -> file bytes for every regular file under `root`.
std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = io::read_text(e.path());
  return files;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen-task writes splits and a manifest") {
  testing::TempDir dir("cli-gen");
  const auto r = nilm_run({"gen-task", "--task", "median", "--seed", "7", "--out", dir.path().string()});
  REQUIRE(r.code == 0);
  for (const char* f : {"train.jsonl", "dev.jsonl", "test.jsonl", "manifest.json"})
    CHECK(fs::exists(dir.path() / "median" / f));
  const auto m = io::read_manifest(dir.path() / "median");
  CHECK(m.sizes() == SplitSizes{10000, 1000, 1000});
  CHECK(m.config["command"] == "gen-task");
  CHECK(m.config["seed"] == 7);
  CHECK(nilm_run({"validate", "--data", (dir.path() / "median").string()}).code == 0);
}

TEST_CASE("gen-all emits 19 task directories, reproducibly") {
  testing::TempDir dir("cli-all");
  const auto a = dir.path() / "a";
  const auto b = dir.path() / "b";
  REQUIRE(nilm_run({"gen-all", "--seed", "7", "--out", a.string()}).code == 0);
  REQUIRE(nilm_run({"gen-all", "--seed", "7", "--out", b.string()}).code == 0);
  std::size_t dirs = 0;
  for (const auto& e : fs::directory_iterator(a)) dirs += e.is_directory() ? 1 : 0;
  CHECK(dirs == 19);
  CHECK(tree(a) == tree(b));

  const auto v = nilm_run({"validate", "--data", a.string()});
  CHECK(v.code == 0);

  SUBCASE("tampered file fails validation") {
    auto text = io::read_text(a / "palindrome" / "test.jsonl");
    text.insert(text.begin() + 12, 'x');
    io::write_text(a / "palindrome" / "test.jsonl", text);
    const auto bad = nilm_run({"validate", "--data", (a / "palindrome").string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("checksum mismatch") != std::string::npos);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(nilm_run({"gen-task", "--task", "median", "--bogus"}).code == 2);
  CHECK(nilm_run({"gen-task"}).code == 2);
  CHECK(nilm_run({"frobnicate"}).code == 2);
  CHECK(nilm_run({}).code == 2);
  CHECK(nilm_run({"gen-task", "--task", "nope"}).code == 2);
  CHECK(nilm_run({"gen-task", "--task", "odd", "--format", "xml"}).code == 2);
  CHECK(nilm_run({"dump-dfa", "--task", "odd"}).code == 2);
  CHECK(nilm_run({"--help"}).code == 0);
}

TEST_CASE("output root from the environment") {
  testing::TempDir dir("cli-env");
  ::setenv(cli::kOutputRootEnv, dir.path().string().c_str(), 1);
  const auto r = nilm_run({"gen-task", "--task", "vowels", "--train-size", "50", "--dev-size", "10",
                           "--test-size", "10", "--format", "tsv"});
  ::unsetenv(cli::kOutputRootEnv);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir.path() / "vowels" / "train.tsv"));
  CHECK(nilm_run({"validate", "--data", (dir.path() / "vowels").string()}).code == 0);
}

TEST_CASE("sweep-plan") {
  const auto r = nilm_run({"sweep-plan", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto plan = io::sweep_plan_from_json(nlohmann::json::parse(r.out));
  CHECK(plan.sizes.size() == 15);
  CHECK(plan.runs_for(10) == 10);
  CHECK(plan.runs_for(10000) == 5);
  const auto r2 = nilm_run({"sweep-plan", "--runs", "2"});
  CHECK(io::sweep_plan_from_json(nlohmann::json::parse(r2.out)).runs_for(10) == 2);
}

TEST_CASE("score, subsample, curve and ttest") {
  testing::TempDir dir("cli-eval");
  REQUIRE(nilm_run({"gen-task", "--task", "odd", "--seed", "1", "--out", dir.path().string(), "--train-size",
                    "200", "--dev-size", "20", "--test-size", "40"})
              .code == 0);
  const auto task_dir = dir.path() / "odd";
  const auto gold = io::read_dataset(task_dir)[Split::test];

  // A predictor that is right on the first k test examples.
  auto write_preds = [&](const fs::path& path, std::size_t k) {
    eval::PredictionFile p;
    for (std::size_t i = 0; i < gold.size(); ++i) p.records.push_back({i, i < k ? gold[i].label : 1 - gold[i].label});
    io::write_text(path, eval::format_predictions(p));
  };

  write_preds(dir.path() / "p.tsv", 30);
  const auto s = nilm_run({"score", "--data", task_dir.string(), "--predictions", (dir.path() / "p.tsv").string()});
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["accuracy"] == 0.75);

  io::write_text(dir.path() / "short.tsv", "0\t1\n");
  CHECK(nilm_run({"score", "--data", task_dir.string(), "--predictions", (dir.path() / "short.tsv").string()}).code == 1);

  const auto sub = nilm_run({"subsample", "--data", task_dir.string(), "--train-size", "20", "--run", "1", "--seed",
                             "4", "--out", (dir.path() / "sub.jsonl").string()});
  REQUIRE(sub.code == 0);
  CHECK(io::parse_split(TaskId::odd, io::read_text(dir.path() / "sub.jsonl")).size() == 20);

  REQUIRE(nilm_run({"sweep-plan", "--runs", "2", "--out", (dir.path() / "plan.json").string()}).code == 0);
  const auto plan = io::sweep_plan_from_json(nlohmann::json::parse(io::read_text(dir.path() / "plan.json")));
  for (const char* model : {"a", "b"}) {
    const auto pred_dir = dir.path() / model;
    for (std::size_t i = 0; i < plan.sizes.size(); ++i)
      for (std::size_t r = 0; r < 2; ++r)
        write_preds(pred_dir / ("size" + std::to_string(plan.sizes[i]) + "_run" + std::to_string(r) + ".tsv"),
                    (model[0] == 'a' ? 20 : 10) + i + r);
    const auto c = nilm_run({"curve", "--data", task_dir.string(), "--predictions", pred_dir.string(), "--plan",
                             (dir.path() / "plan.json").string(), "--model", model, "--out",
                             (dir.path() / model).string() + "_curve"});
    REQUIRE(c.code == 0);
  }
  const auto csv = io::read_text(dir.path() / "a_curve.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);

  const auto t = nilm_run({"ttest", "--a", (dir.path() / "a_curve.json").string(), "--b",
                           (dir.path() / "b_curve.json").string(), "--baseline", "np"});
  REQUIRE(t.code == 0);
  const auto j = nlohmann::json::parse(t.out);
  CHECK(j[0]["baseline"] == "np");
  CHECK(j[0]["t"].is_number() == !j[0]["degenerate_variance"].get<bool>());
  CHECK(j[0]["p_two_tailed"].get<double>() < 1e-10);

  // A missing cell is a completeness failure.
  fs::remove(dir.path() / "a" / "size640_run1.tsv");
  const auto incomplete = nilm_run({"curve", "--data", task_dir.string(), "--predictions",
                                    (dir.path() / "a").string(), "--plan", (dir.path() / "plan.json").string(),
                                    "--out", (dir.path() / "x").string()});
  CHECK(incomplete.code == 1);
  CHECK(incomplete.err.find("(640, 1)") != std::string::npos);
}

TEST_CASE("gen-corpus and perturb") {
  testing::TempDir dir("cli-corpus");
  const auto r = nilm_run({"gen-corpus", "--recipe", R"({"kind":"synthetic_vocab","sentence_count":200,"seed":3})",
                           "--out", (dir.path() / "syn").string()});
  REQUIRE(r.code == 0);
  const auto manifest = nlohmann::json::parse(io::read_text(dir.path() / "syn" / "manifest.json"));
  CHECK(manifest["stats"]["sentences"] == 200);
  CHECK(manifest["config"]["recipe"]["kind"] == "synthetic_vocab");

  const auto src = (dir.path() / "syn" / "corpus.txt").string();
  REQUIRE(nilm_run({"perturb", "--mode", "sort", "--source", src, "--out", (dir.path() / "sorted").string()}).code == 0);
  REQUIRE(nilm_run({"perturb", "--mode", "shuffle", "--source", src, "--seed", "2", "--out",
                    (dir.path() / "shuf").string()})
              .code == 0);
  CHECK(io::read_text(dir.path() / "sorted" / "corpus.txt").size() == io::read_text(src).size());
  CHECK(nilm_run({"perturb", "--mode", "reverse", "--source", src, "--out", "x"}).code == 2);
  CHECK(nilm_run({"gen-corpus", "--recipe", R"({"kind":"perturb_sort"})", "--out", "x"}).code == 2);
}

TEST_CASE("dump-dfa") {
  const auto r = nilm_run({"dump-dfa", "--task", "regex_abcde"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("alphabet abcde") != std::string::npos);
}

}  // TEST_SUITE
