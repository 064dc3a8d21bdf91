#include "adeff/config.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace adeff {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

SvmParams svm_from_json(const json& j, SvmParams base) {
  if (j.contains("lambda")) base.lambda = j.at("lambda").get<double>();
  if (j.contains("epochs")) base.epochs = j.at("epochs").get<int>();
  if (j.contains("degree")) base.degree = j.at("degree").get<int>();
  return base;
}

TreeParams tree_from_json(const json& j, TreeParams base) {
  if (j.contains("min_split")) base.min_split = j.at("min_split").get<int>();
  if (j.contains("max_depth")) base.max_depth = j.at("max_depth").get<int>();
  return base;
}

LogRegParams logreg_from_json(const json& j, LogRegParams base) {
  if (j.contains("lambda")) base.lambda = j.at("lambda").get<double>();
  if (j.contains("epochs")) base.epochs = j.at("epochs").get<int>();
  if (j.contains("step")) base.step = j.at("step").get<double>();
  return base;
}

}  // namespace

std::string Config::resolve_asset(const std::string& path) const {
  fs::path p(path);
  if (p.is_absolute() || assets_root.empty()) return path;
  return (fs::path(assets_root) / p).string();
}

std::vector<ClassifierSettings> Config::classifier_settings(
    const std::vector<FeatureBinding>& bindings) const {
  std::vector<ClassifierSettings> settings;
  settings.reserve(bindings.size());
  for (const FeatureBinding& binding : bindings) {
    ClassifierSettings s;
    s.svm = svm_defaults;
    s.tree = tree_defaults;
    s.logreg = logreg_defaults;
    if (const auto it = svm_overrides.find(binding.feature);
        it != svm_overrides.end() && binding.kind == ClassifierKind::kSvm) {
      s.svm = it->second;
    }
    if (const auto it = tree_overrides.find(binding.feature);
        it != tree_overrides.end() && binding.kind == ClassifierKind::kTree) {
      s.tree = it->second;
    }
    if (const auto it = logreg_overrides.find(binding.feature);
        it != logreg_overrides.end() && binding.kind == ClassifierKind::kLogReg) {
      s.logreg = it->second;
    }
    settings.push_back(s);
  }
  return settings;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }

  Config c;
  c.profile = j.value("profile", std::string("default"));
  if (c.profile == "paper_replication") {
    c.priors_on_full_dataset = true;
    c.out_of_fold_bins = false;
  } else if (c.profile != "default") {
    throw std::runtime_error(path + ": unknown profile '" + c.profile + "'");
  }

  const json& paths = j.at("paths");
  c.raw_records = paths.at("raw_records").get<std::string>();
  c.assets_root = paths.value("assets_root", std::string{});
  c.output_dir = paths.at("output_dir").get<std::string>();

  if (j.contains("seeds")) {
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (c.seeds.empty()) throw std::runtime_error(path + ": seeds must be non-empty");
  }

  if (j.contains("features")) {
    const json& f = j.at("features");
    if (f.contains("flow_block_size"))
      c.visual.flow_block_size = f.at("flow_block_size").get<int>();
    if (f.contains("flow_search_radius"))
      c.visual.flow_search_radius = f.at("flow_search_radius").get<int>();
    if (f.contains("shot_threshold"))
      c.visual.shot_threshold = f.at("shot_threshold").get<double>();
    if (f.contains("hist_bins_per_channel"))
      c.visual.hist_bins_per_channel = f.at("hist_bins_per_channel").get<int>();
    if (f.contains("frame_rate")) c.frame_rate = f.at("frame_rate").get<double>();
    if (f.contains("hash_buckets")) c.hash_buckets = f.at("hash_buckets").get<int>();
    if (c.hash_buckets != 32) {
      throw std::runtime_error(path +
                               ": hash_buckets is fixed at 32 by the feature schema");
    }
  }

  if (j.contains("learners")) {
    const json& l = j.at("learners");
    if (l.contains("svm")) {
      c.svm_defaults = svm_from_json(l.at("svm"), c.svm_defaults);
      if (l.at("svm").contains("per_feature")) {
        for (const auto& [name, over] : l.at("svm").at("per_feature").items()) {
          c.svm_overrides[name] = svm_from_json(over, c.svm_defaults);
        }
      }
    }
    if (l.contains("tree")) {
      c.tree_defaults = tree_from_json(l.at("tree"), c.tree_defaults);
      if (l.at("tree").contains("per_feature")) {
        for (const auto& [name, over] : l.at("tree").at("per_feature").items()) {
          c.tree_overrides[name] = tree_from_json(over, c.tree_defaults);
        }
      }
    }
    if (l.contains("logreg")) {
      c.logreg_defaults = logreg_from_json(l.at("logreg"), c.logreg_defaults);
      if (l.at("logreg").contains("per_feature")) {
        for (const auto& [name, over] : l.at("logreg").at("per_feature").items()) {
          c.logreg_overrides[name] = logreg_from_json(over, c.logreg_defaults);
        }
      }
    }
  }

  if (j.contains("flags")) {
    const json& f = j.at("flags");
    if (f.contains("priors_on_full_dataset"))
      c.priors_on_full_dataset = f.at("priors_on_full_dataset").get<bool>();
    if (f.contains("out_of_fold_bins"))
      c.out_of_fold_bins = f.at("out_of_fold_bins").get<bool>();
    if (f.contains("oof_folds")) c.oof_folds = f.at("oof_folds").get<int>();
  }

  if (j.contains("analysis") && j.at("analysis").contains("extremes_k")) {
    c.extremes_k = j.at("analysis").at("extremes_k").get<std::size_t>();
  }
  c.workers = j.value("workers", 0u);

  if (j.contains("vocab")) {
    const json& v = j.at("vocab");
    if (v.contains("topics")) c.topics_vocab = v.at("topics").get<std::string>();
    if (v.contains("sentiments"))
      c.sentiments_vocab = v.at("sentiments").get<std::string>();
  }
  return c;
}

void save_config(const std::string& path, const Config& c) {
  json j;
  j["profile"] = c.profile;
  j["paths"] = {{"raw_records", c.raw_records},
                {"assets_root", c.assets_root},
                {"output_dir", c.output_dir}};
  j["seeds"] = c.seeds;
  j["features"] = {{"flow_block_size", c.visual.flow_block_size},
                   {"flow_search_radius", c.visual.flow_search_radius},
                   {"shot_threshold", c.visual.shot_threshold},
                   {"hist_bins_per_channel", c.visual.hist_bins_per_channel},
                   {"frame_rate", c.frame_rate},
                   {"hash_buckets", c.hash_buckets}};
  j["learners"] = {
      {"svm",
       {{"lambda", c.svm_defaults.lambda},
        {"epochs", c.svm_defaults.epochs},
        {"degree", c.svm_defaults.degree}}},
      {"tree",
       {{"min_split", c.tree_defaults.min_split},
        {"max_depth", c.tree_defaults.max_depth}}},
      {"logreg",
       {{"lambda", c.logreg_defaults.lambda},
        {"epochs", c.logreg_defaults.epochs},
        {"step", c.logreg_defaults.step}}}};
  j["flags"] = {{"priors_on_full_dataset", c.priors_on_full_dataset},
                {"out_of_fold_bins", c.out_of_fold_bins},
                {"oof_folds", c.oof_folds}};
  j["analysis"] = {{"extremes_k", c.extremes_k}};
  j["workers"] = c.workers;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config " + path);
  out << j.dump(2) << '\n';
}

}  // namespace adeff
