#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adeff/pipeline.hpp"
#include "adeff/synthetic.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::uint64_t> seed_list;
};

adeff::Config load(const CommonArgs& args) {
  adeff::Config config = adeff::load_config(args.config_path);
  if (!args.seed_list.empty()) config.seeds = args.seed_list;
  return config;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to the JSON config file")
      ->required();
  cmd->add_option("--seed-list", args.seed_list,
                  "Override the config's seed list (space separated)");
}

int finish(const adeff::CommandResult& result) {
  if (result.warnings > 0 || result.errors > 0) {
    std::fprintf(stderr, "completed with %zu warning(s), %zu per-video error(s)\n",
                 result.warnings, result.errors);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Advertisement-effectiveness batch toolkit"};
  app.require_subcommand(1);

  CommonArgs clean_args, features_args, analyze_args, train_args;
  std::string task = "all";
  std::string synth_out = "synth_corpus";
  adeff::SynthOptions synth_options;

  CLI::App* clean = app.add_subcommand("clean", "Aggregate labels and balance classes");
  add_common(clean, clean_args);

  CLI::App* features = app.add_subcommand("features", "Extract per-video feature blocks");
  add_common(features, features_args);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Correlations, reliability and extremes reports");
  add_common(analyze, analyze_args);

  CLI::App* train_eval = app.add_subcommand(
      "train-eval", "Train the 25 classifiers and the ensemble, report accuracies");
  add_common(train_eval, train_args);
  train_eval->add_option("--task", task, "binary, four, five or all")
      ->check(CLI::IsMember({"binary", "four", "five", "all"}));

  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic demo corpus with a planted signal");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--videos", synth_options.videos, "Corpus size (multiple of 5)");
  synth->add_option("--seed", synth_options.seed, "Generator seed");
  synth->add_option("--noise", synth_options.label_noise, "Label noise fraction");

  CLI11_PARSE(app, argc, argv);

  try {
    if (clean->parsed()) return finish(adeff::cmd_clean(load(clean_args)));
    if (features->parsed()) return finish(adeff::cmd_features(load(features_args)));
    if (analyze->parsed()) return finish(adeff::cmd_analyze(load(analyze_args)));
    if (train_eval->parsed()) {
      std::optional<adeff::TaskKind> kind;
      if (task != "all") kind = adeff::task_from_string(task);
      return finish(adeff::cmd_train_eval(load(train_args), kind));
    }
    if (synth->parsed()) {
      const std::string raw = adeff::generate_corpus(synth_out, synth_options);
      std::printf("wrote %s\n", raw.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
