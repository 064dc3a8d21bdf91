#ifndef ADEFF_FEATURE_STORE_HPP
#define ADEFF_FEATURE_STORE_HPP

#include <map>
#include <string>
#include <vector>

#include "adeff/detection_features.hpp"
#include "adeff/learners.hpp"

namespace adeff {

/// Named, fixed-dimension numeric blocks for one video. Detection families
/// are stored as raw label-count vectors (objects_counts, ...); the
/// prior-ratio blocks (objects_ratio, ...) are derived once the priors of a
/// training corpus are known.
struct VideoFeatures {
  std::string video_id;
  std::map<std::string, std::vector<double>> blocks;
};

/// One classifier row: display names plus the feature blocks it consumes,
/// concatenated in order.
struct FeatureBinding {
  std::string classifier;  // "SVM", "Decision Tree", "Logistic Regression"
  std::string feature;     // Table-style display name, e.g. "Topics"
  ClassifierKind kind = ClassifierKind::kSvm;
  std::vector<std::string> blocks;
};

/// The fixed 25-classifier roster: 22 SVM rows, 2 decision-tree rows, one
/// logistic-regression row.
const std::vector<FeatureBinding>& table1_bindings();

/// Index of the "All Features Aggregated" SVM, the selection fallback.
int table1_fallback_index();

/// Concatenates the named blocks; throws naming the first missing block.
std::vector<double> assemble_features(const VideoFeatures& features,
                                      const std::vector<std::string>& blocks);

/// Sums the *_counts blocks over a training corpus and normalizes per family.
PriorTable priors_from_store(const std::vector<const VideoFeatures*>& train);

/// Derives objects_ratio / places_ratio / expressions_ratio / emotions_ratio
/// from the stored count blocks and the given priors.
void add_ratio_blocks(VideoFeatures& features, const PriorTable& priors);

// Per-video JSON persistence (deterministic key order).
void write_features(const std::string& path, const VideoFeatures& features);
VideoFeatures read_features(const std::string& path);

/// One-hot helper for categorical labels.
std::vector<double> one_hot(int value, int size);

}  // namespace adeff

#endif
