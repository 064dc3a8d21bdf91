#include "adeff/feature_store.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace adeff {

using nlohmann::json;

namespace {

std::vector<FeatureBinding> make_table1() {
  const auto svm = [](const std::string& feature, std::vector<std::string> blocks) {
    return FeatureBinding{"SVM", feature, ClassifierKind::kSvm, std::move(blocks)};
  };
  std::vector<FeatureBinding> rows;
  rows.push_back(svm("Topics", {"topic_onehot"}));
  rows.push_back(svm("Sentiments", {"sentiment_onehot"}));
  rows.push_back(svm("Memorability", {"avg_memorability"}));
  rows.push_back(svm("Optical Flow", {"flow_hist"}));
  rows.push_back(svm("Cropped 30%", {"avg_intensity_mid30"}));
  rows.push_back(svm("Cropped 60%", {"avg_intensity_mid60"}));
  rows.push_back(svm("Average Hue", {"avg_hue"}));
  rows.push_back(svm("Median Hue", {"median_hue"}));
  rows.push_back(svm("Duration", {"duration_seconds"}));
  rows.push_back(svm("Text Length", {"text_length"}));
  rows.push_back(svm("Meaningful Words", {"meaningful_word_count"}));
  rows.push_back(svm("Average Word Length", {"avg_word_length"}));
  rows.push_back(svm("Word Count", {"word_count"}));
  rows.push_back(svm("Sentiment Analysis", {"sentiment_polarity"}));
  rows.push_back(svm("Audio", {"audio_loudness"}));
  rows.push_back(svm("Objects", {"objects_ratio"}));
  rows.push_back(svm("Places", {"places_ratio"}));
  rows.push_back(svm("Expressions", {"expressions_ratio"}));
  rows.push_back(svm("Emotions", {"emotions_ratio"}));
  rows.push_back(svm("Climax", {"climax_count"}));
  // Concatenation of the 20 single-feature rows above, 594 dimensions.
  std::vector<std::string> all;
  for (const FeatureBinding& row : rows) all.push_back(row.blocks.front());
  rows.push_back(svm("All Features Aggregated", std::move(all)));
  rows.push_back(svm("All Text Features Aggregated",
                     {"text_length", "word_count", "meaningful_word_count",
                      "avg_word_length", "avg_sentence_length",
                      "sentiment_polarity", "common_word_hash"}));
  rows.push_back(FeatureBinding{"Decision Tree", "Topics", ClassifierKind::kTree,
                                {"topic_onehot"}});
  rows.push_back(FeatureBinding{"Decision Tree", "Sentiments",
                                ClassifierKind::kTree, {"sentiment_onehot"}});
  rows.push_back(FeatureBinding{"Logistic Regression", "Exciting",
                                ClassifierKind::kLogReg, {"exciting"}});
  return rows;
}

}  // namespace

const std::vector<FeatureBinding>& table1_bindings() {
  static const std::vector<FeatureBinding> rows = make_table1();
  return rows;
}

int table1_fallback_index() { return 20; }

std::vector<double> assemble_features(const VideoFeatures& features,
                                      const std::vector<std::string>& blocks) {
  std::vector<double> out;
  for (const std::string& name : blocks) {
    const auto it = features.blocks.find(name);
    if (it == features.blocks.end()) {
      throw std::invalid_argument("video " + features.video_id +
                                  ": missing feature block '" + name + "'");
    }
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

namespace {

void accumulate_block(std::vector<double>& sum, const VideoFeatures& v,
                      const char* name, std::size_t size) {
  const auto it = v.blocks.find(name);
  if (it == v.blocks.end()) return;
  if (it->second.size() != size) {
    throw std::invalid_argument("video " + v.video_id + ": block '" + name +
                                "' has wrong size");
  }
  if (sum.empty()) sum.assign(size, 0.0);
  for (std::size_t k = 0; k < size; ++k) sum[k] += it->second[k];
}

}  // namespace

PriorTable priors_from_store(const std::vector<const VideoFeatures*>& train) {
  PriorTable priors;
  priors.objects.assign(kNumObjects, 0.0);
  priors.places.assign(kNumPlaces, 0.0);
  priors.expressions.assign(kNumExpressions, 0.0);
  priors.emotions.assign(kNumEmotions, 0.0);
  for (const VideoFeatures* v : train) {
    accumulate_block(priors.objects, *v, "objects_counts", kNumObjects);
    accumulate_block(priors.places, *v, "places_counts", kNumPlaces);
    accumulate_block(priors.expressions, *v, "expressions_counts", kNumExpressions);
    accumulate_block(priors.emotions, *v, "emotions_counts", kNumEmotions);
  }
  normalize_counts(priors.objects);
  normalize_counts(priors.places);
  normalize_counts(priors.expressions);
  normalize_counts(priors.emotions);
  return priors;
}

namespace {

void derive_ratio(VideoFeatures& features, const char* counts_name,
                  const char* ratio_name, const std::vector<double>& prior) {
  std::vector<double> dist(prior.size(), 0.0);
  const auto it = features.blocks.find(counts_name);
  if (it != features.blocks.end()) {
    dist = it->second;
    normalize_counts(dist);
  }
  features.blocks[ratio_name] = ratio_from_distribution(dist, prior);
}

}  // namespace

void add_ratio_blocks(VideoFeatures& features, const PriorTable& priors) {
  derive_ratio(features, "objects_counts", "objects_ratio", priors.objects);
  derive_ratio(features, "places_counts", "places_ratio", priors.places);
  derive_ratio(features, "expressions_counts", "expressions_ratio",
               priors.expressions);
  derive_ratio(features, "emotions_counts", "emotions_ratio", priors.emotions);
}

void write_features(const std::string& path, const VideoFeatures& features) {
  json j;
  j["format_version"] = 1;
  j["video_id"] = features.video_id;
  json blocks = json::object();
  for (const auto& [name, values] : features.blocks) blocks[name] = values;
  j["blocks"] = std::move(blocks);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

VideoFeatures read_features(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  VideoFeatures features;
  features.video_id = j.at("video_id").get<std::string>();
  for (const auto& [name, values] : j.at("blocks").items()) {
    features.blocks[name] = values.get<std::vector<double>>();
  }
  return features;
}

std::vector<double> one_hot(int value, int size) {
  if (value < 0 || value >= size) {
    throw std::invalid_argument("one_hot: value " + std::to_string(value) +
                                " outside [0, " + std::to_string(size) + ")");
  }
  std::vector<double> v(size, 0.0);
  v[value] = 1.0;
  return v;
}

}  // namespace adeff
