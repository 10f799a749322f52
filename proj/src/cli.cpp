#include "nilm/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilm/corpus.hpp"
#include "nilm/dataset_io.hpp"
#include "nilm/error.hpp"
#include "nilm/eval.hpp"
#include "nilm/generate.hpp"
#include "nilm/regular_language.hpp"
#include "nilm/task_model.hpp"

namespace nilm::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Raised for semantically invalid arguments found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_output_root() {
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
  return "nilm-out";
}

TaskId task_arg(const std::string& name) {
  if (auto t = find_task(name)) return *t;
  try {
    return parse_task(name);
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
}

Format format_arg(const std::string& name) {
  try {
    return parse_format(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

json sizes_json(const SplitSizes& s) { return {{"train", s.train}, {"dev", s.dev}, {"test", s.test}}; }

struct GenOptions {
  std::vector<std::string> tasks;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "jsonl";
  std::optional<std::size_t> train_size;
  std::optional<std::size_t> dev_size;
  std::optional<std::size_t> test_size;
  bool serial = false;
};

void add_gen_flags(CLI::App* cmd, GenOptions& o) {
  cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  cmd->add_option("--out", o.out, "Output root (default: $NILM_OUTPUT_ROOT or ./nilm-out)");
  cmd->add_option("--format", o.format, "jsonl or tsv")->capture_default_str();
  cmd->add_option("--train-size", o.train_size, "Override the train split size");
  cmd->add_option("--dev-size", o.dev_size, "Override the dev split size");
  cmd->add_option("--test-size", o.test_size, "Override the test split size");
  cmd->add_flag("--serial", o.serial, "Use the serial reference kernels");
}

int generate_tasks(const std::vector<TaskId>& tasks, const GenOptions& o, const std::string& command,
                   std::ostream& out) {
  const Format format = format_arg(o.format);
  const fs::path root = o.out.empty() ? default_output_root() : o.out;
  for (TaskId task : tasks) {
    SplitSizes sizes = task_spec(task).sizes;
    if (o.train_size) sizes.train = *o.train_size;
    if (o.dev_size) sizes.dev = *o.dev_size;
    if (o.test_size) sizes.test = *o.test_size;
    const Dataset ds = generate_dataset(task, o.seed, sizes, o.serial ? Exec::serial : Exec::parallel);
    const json config = {{"command", command},
                         {"task", task_name(task)},
                         {"seed", o.seed},
                         {"format", format_name(format)},
                         {"sizes", sizes_json(sizes)},
                         {"generator_version", kGeneratorVersion}};
    const auto manifest = io::write_dataset(ds, root, format, o.seed, config);
    out << task_name(task) << ": " << manifest.splits[0].count << '/' << manifest.splits[1].count << '/'
        << manifest.splits[2].count << " -> " << (root / std::string(task_name(task))).string() << '\n';
  }
  return kOk;
}

json load_json_arg(const std::string& arg) {
  // Inline JSON or a path to a JSON file.
  const std::string text = !arg.empty() && arg.front() == '{' ? arg : io::read_text(arg);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void write_corpus_outputs(const corpus::Corpus& c, const corpus::CorpusRecipe& recipe,
                          const std::string& command, const fs::path& dir, std::ostream& out) {
  const std::string text = corpus::to_text(c);
  io::write_text(dir / "corpus.txt", text);
  const auto stats = corpus::compute_stats(c);
  json manifest = {{"config", {{"command", command}, {"recipe", corpus::to_json(recipe)}}},
                   {"file", "corpus.txt"},
                   {"sha256", io::sha256_hex(text)},
                   {"stats", corpus::to_json(stats)}};
  io::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  out << kind_name(recipe.kind) << ": " << stats.sentences << " sentences, " << stats.tokens
      << " tokens, " << stats.types << " types -> " << (dir / "corpus.txt").string() << '\n';
}

/// Task directories under `path`: the path itself when it holds a manifest,
/// otherwise each child that does, in name order.
std::vector<fs::path> task_dirs(const fs::path& path) {
  if (fs::exists(path / "manifest.json")) return {path};
  std::vector<fs::path> dirs;
  if (fs::is_directory(path))
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw IoError("no dataset manifest under " + path.string());
  return dirs;
}

bool validate_dir(const fs::path& dir, std::ostream& out, std::ostream& err) {
  const auto problems = io::verify_checksums(dir);
  const auto manifest = io::read_manifest(dir);
  bool ok = problems.empty();
  for (const auto& p : problems) err << "error: " << p << '\n';
  if (ok) {
    TaskSpec spec = task_spec(manifest.task);
    if (manifest.config.contains("sizes")) {
      const auto& s = manifest.config["sizes"];
      spec.sizes = {s.at("train").get<std::size_t>(), s.at("dev").get<std::size_t>(),
                    s.at("test").get<std::size_t>()};
    }
    const auto report = validate_dataset(io::read_dataset(dir), spec);
    for (const auto& f : report.failures) err << "error: " << task_name(manifest.task) << ": " << f << '\n';
    ok = report.ok;
  }
  out << task_name(manifest.task) << ": " << (ok ? "ok" : "FAILED") << '\n';
  return ok;
}

eval::Curve load_curve(const std::string& path) {
  if (fs::path(path).extension() == ".csv")
    return eval::parse_curve_csv(io::read_text(path), fs::path(path).stem().string());
  return eval::curve_from_json(load_json_arg(path));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic task datasets, corpora and learning-curve statistics", "nilm"};
  app.require_subcommand(1);

  GenOptions task_opts;
  std::string task_name_arg;
  auto* gen_task = app.add_subcommand("gen-task", "Generate one task's train/dev/test splits");
  gen_task->add_option("--task", task_name_arg, "Task name")->required();
  add_gen_flags(gen_task, task_opts);

  GenOptions all_opts;
  auto* gen_all = app.add_subcommand("gen-all", "Generate every task");
  add_gen_flags(gen_all, all_opts);

  std::string recipe_arg;
  std::string corpus_out;
  std::optional<std::uint64_t> corpus_seed;
  std::optional<std::size_t> corpus_sentences;
  auto* gen_corpus = app.add_subcommand("gen-corpus", "Build a pretraining corpus from a recipe");
  gen_corpus->add_option("--recipe", recipe_arg, "Recipe JSON (inline or file)")->required();
  gen_corpus->add_option("--out", corpus_out, "Output directory")->required();
  gen_corpus->add_option("--seed", corpus_seed, "Override the recipe seed");
  gen_corpus->add_option("--sentences", corpus_sentences, "Override the sentence count");

  std::string perturb_mode;
  std::string perturb_source;
  std::string perturb_out;
  std::uint64_t perturb_seed = 0;
  bool perturb_keep_case = false;
  auto* perturb = app.add_subcommand("perturb", "Sort or shuffle the words of every line of a corpus");
  perturb->add_option("--mode", perturb_mode, "sort or shuffle")
      ->required()
      ->check(CLI::IsMember({"sort", "shuffle"}));
  perturb->add_option("--source", perturb_source, "Source text, one sentence per line")->required();
  perturb->add_option("--out", perturb_out, "Output directory")->required();
  perturb->add_option("--seed", perturb_seed, "Shuffle seed")->capture_default_str();
  perturb->add_flag("--keep-case", perturb_keep_case, "Do not lowercase ASCII letters");

  std::uint64_t plan_seed = 0;
  std::string plan_out;
  std::optional<std::size_t> plan_runs;
  auto* sweep = app.add_subcommand("sweep-plan", "Write the training-size sweep plan");
  sweep->add_option("--seed", plan_seed, "Base seed for subsampling")->capture_default_str();
  sweep->add_option("--out", plan_out, "Output file (default: stdout)");
  sweep->add_option("--runs", plan_runs, "Use this many runs for every size");

  std::string score_data;
  std::string score_preds;
  std::string score_split = "test";
  auto* score = app.add_subcommand("score", "Accuracy of one prediction file");
  score->add_option("--data", score_data, "Task dataset directory")->required();
  score->add_option("--predictions", score_preds, "Prediction TSV")->required();
  score->add_option("--split", score_split, "Gold split")->capture_default_str()->check(
      CLI::IsMember({"train", "dev", "test"}));

  std::string curve_data;
  std::string curve_preds;
  std::string curve_plan;
  std::string curve_model = "model";
  std::string curve_out;
  auto* curve = app.add_subcommand("curve", "Learning curve from a directory of prediction files");
  curve->add_option("--data", curve_data, "Task dataset directory")->required();
  curve->add_option("--predictions", curve_preds, "Directory of size<N>_run<R>.tsv files")->required();
  curve->add_option("--plan", curve_plan, "Sweep plan JSON")->required();
  curve->add_option("--model", curve_model, "Model label")->capture_default_str();
  curve->add_option("--out", curve_out, "Output prefix; writes <prefix>.csv and <prefix>.json")->required();

  std::vector<std::string> ttest_a;
  std::vector<std::string> ttest_b;
  std::string ttest_baseline = "baseline";
  std::string ttest_out;
  auto* ttest = app.add_subcommand("ttest", "Paired t-test between two sets of curves");
  ttest->add_option("--a", ttest_a, "Curves of the model (JSON or CSV)")->required();
  ttest->add_option("--b", ttest_b, "Curves of the baseline, same order")->required();
  ttest->add_option("--baseline", ttest_baseline, "Baseline label")->capture_default_str();
  ttest->add_option("--out", ttest_out, "Output JSON (default: stdout)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check checksums, split sizes, labels and balance");
  validate->add_option("--data", validate_path, "Task directory or output root")->required();

  std::string sub_data;
  std::size_t sub_size = 0;
  std::size_t sub_run = 0;
  std::uint64_t sub_seed = 0;
  std::string sub_out;
  std::string sub_format = "jsonl";
  auto* subsample = app.add_subcommand("subsample", "Write the training subset for one sweep cell");
  subsample->add_option("--data", sub_data, "Task dataset directory")->required();
  subsample->add_option("--train-size", sub_size, "Subset size")->required();
  subsample->add_option("--run", sub_run, "Run index")->capture_default_str();
  subsample->add_option("--seed", sub_seed, "Sweep base seed")->capture_default_str();
  subsample->add_option("--out", sub_out, "Output file")->required();
  subsample->add_option("--format", sub_format, "jsonl or tsv")->capture_default_str();

  std::string dfa_task;
  auto* dump_dfa = app.add_subcommand("dump-dfa", "Print the minimal DFA of a regex task");
  dump_dfa->add_option("--task", dfa_task, "regex_012 or regex_abcde")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_task) return generate_tasks({task_arg(task_name_arg)}, task_opts, "gen-task", out);

    if (*gen_all) {
      const auto tasks = all_tasks();
      return generate_tasks({tasks.begin(), tasks.end()}, all_opts, "gen-all", out);
    }

    if (*gen_corpus) {
      auto recipe = corpus::recipe_from_json(load_json_arg(recipe_arg));
      if (corpus_seed) recipe.seed = *corpus_seed;
      if (corpus_sentences) recipe.sentence_count = *corpus_sentences;
      write_corpus_outputs(corpus::run_recipe(recipe), recipe, "gen-corpus", corpus_out, out);
      return kOk;
    }

    if (*perturb) {
      corpus::CorpusRecipe recipe;
      recipe.kind = perturb_mode == "sort" ? corpus::CorpusKind::perturb_sort
                                           : corpus::CorpusKind::perturb_shuffle;
      recipe.source = perturb_source;
      recipe.seed = perturb_seed;
      recipe.lowercase = !perturb_keep_case;
      const auto ingested = corpus::ingest_text(perturb_source, {recipe.lowercase});
      if (ingested.empty_warning) err << "warning: " << perturb_source << " contains no tokens\n";
      write_corpus_outputs(corpus::run_recipe(recipe), recipe, "perturb", perturb_out, out);
      return kOk;
    }

    if (*sweep) {
      SweepPlan plan = SweepPlan::standard(plan_seed);
      if (plan_runs) {
        if (*plan_runs == 0) throw UsageError("--runs must be positive");
        for (auto& r : plan.runs) r = *plan_runs;
      }
      const std::string text = io::to_json(plan).dump(2) + "\n";
      if (plan_out.empty())
        out << text;
      else
        io::write_text(plan_out, text);
      return kOk;
    }

    if (*score) {
      const Dataset ds = io::read_dataset(score_data);
      Split split = Split::test;
      for (Split s : kSplits)
        if (split_name(s) == score_split) split = s;
      const double acc = eval::accuracy(eval::read_predictions(score_preds), ds[split],
                                        task_spec(ds.task).labels);
      out << json{{"task", task_name(ds.task)}, {"split", score_split}, {"n", ds[split].size()},
                  {"accuracy", acc}}
                 .dump()
          << '\n';
      return kOk;
    }

    if (*curve) {
      const Dataset ds = io::read_dataset(curve_data);
      const SweepPlan plan = io::sweep_plan_from_json(load_json_arg(curve_plan));
      const auto labels = task_spec(ds.task).labels;
      eval::CellAccuracies cells;
      for (std::size_t i = 0; i < plan.sizes.size(); ++i)
        for (std::size_t run = 0; run < plan.runs[i]; ++run) {
          const fs::path file = fs::path(curve_preds) /
                                ("size" + std::to_string(plan.sizes[i]) + "_run" + std::to_string(run) + ".tsv");
          if (!fs::exists(file)) continue;
          cells[{plan.sizes[i], run}] = eval::accuracy(eval::read_predictions(file), ds[Split::test], labels);
        }
      const auto c = eval::build_curve(curve_model, std::string(task_name(ds.task)), cells, plan);
      io::write_text(curve_out + ".csv", eval::curve_csv(c));
      io::write_text(curve_out + ".json", eval::to_json(c).dump(2) + "\n");
      out << curve_model << '/' << task_name(ds.task) << ": " << c.points.size() << " points -> "
          << curve_out << ".csv\n";
      return kOk;
    }

    if (*ttest) {
      std::vector<eval::Curve> a, b;
      for (const auto& p : ttest_a) a.push_back(load_curve(p));
      for (const auto& p : ttest_b) b.push_back(load_curve(p));
      auto [ma, mb] = eval::paired_means(a, b);
      const std::vector<eval::Comparison> rows{{ttest_baseline, eval::paired_ttest(ma, mb)}};
      const std::string text = eval::ttest_table_json(rows).dump(2) + "\n";
      if (ttest_out.empty())
        out << text;
      else
        io::write_text(ttest_out, text);
      return kOk;
    }

    if (*validate) {
      bool ok = true;
      for (const auto& dir : task_dirs(validate_path)) ok = validate_dir(dir, out, err) && ok;
      return ok ? kOk : kFailure;
    }

    if (*subsample) {
      const Dataset ds = io::read_dataset(sub_data);
      const Format format = format_arg(sub_format);
      const auto subset = subsample_training_set(ds, sub_size, sub_run, sub_seed);
      io::write_text(sub_out, io::serialize_split(subset, format));
      out << task_name(ds.task) << ": " << subset.size() << " examples -> " << sub_out << '\n';
      return kOk;
    }

    if (*dump_dfa) {
      const TaskId task = task_arg(dfa_task);
      if (family_of(task) != TaskFamily::regular_language)
        throw UsageError(std::string(task_name(task)) + " is not a regex task");
      out << regex::to_text(regex::sampler_for(task).dfa());
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace nilm::cli
