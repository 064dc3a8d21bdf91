#ifndef ADEFF_ENSEMBLE_HPP
#define ADEFF_ENSEMBLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adeff/feature_store.hpp"
#include "adeff/learners.hpp"

namespace adeff {

/// Sentinel for a (classifier, bin) pair with no training samples.
inline constexpr double kUnseenAccuracy = -1.0;

/// One training/test sample as the ensemble sees it.
struct EnsembleSample {
  const VideoFeatures* features = nullptr;
  int topic = 0;
  int sentiment = 0;
  int label = 0;  // task class
};

/// Per-classifier accuracy bins over topics (38) and sentiments (30), with
/// the raw counters kept so totals can be reconciled.
struct BinTables {
  std::vector<std::vector<double>> topic_acc;   // n_classifiers x 38
  std::vector<std::vector<double>> sent_acc;    // n_classifiers x 30
  std::vector<std::vector<std::size_t>> topic_correct;
  std::vector<std::vector<std::size_t>> topic_total;
  std::vector<std::vector<std::size_t>> sent_correct;
  std::vector<std::vector<std::size_t>> sent_total;
};

struct EnsembleModel {
  std::vector<TrainedClassifier> classifiers;  // Table-I order in production
  std::vector<FeatureBinding> bindings;        // same length
  BinTables bins;
  int fallback_index = 0;  // "All Features Aggregated" SVM
};

/// Resubstitution bins: every classifier predicts every training sample; a
/// correct prediction increments the (classifier, topic) and (classifier,
/// sentiment) counters, totals increment regardless. Bins with no samples
/// hold kUnseenAccuracy. Throws on an empty training set. workers > 1
/// parallelizes over classifiers; counters merge in classifier order either
/// way.
BinTables fit_bins(const std::vector<TrainedClassifier>& classifiers,
                   const std::vector<FeatureBinding>& bindings,
                   const std::vector<EnsembleSample>& train,
                   unsigned workers = 1);

/// Out-of-fold variant: samples are assigned round-robin to folds and each
/// fold is predicted by classifiers retrained on the other folds via the
/// trainer callback (classifier index, fold training data) -> model.
BinTables fit_bins_out_of_fold(
    const std::vector<FeatureBinding>& bindings,
    const std::vector<EnsembleSample>& train, int folds,
    const std::function<TrainedClassifier(std::size_t, const LabeledSet&)>& trainer,
    unsigned workers = 1);

/// score(i) = max(topic_acc[i][topic], sent_acc[i][sentiment]) with UNSEEN as
/// -1; smallest index wins ties; when every score is -1 the fallback index is
/// returned.
int select_classifier(const EnsembleModel& model, int topic, int sentiment);

/// Delegates to the selected classifier on its bound feature blocks.
int ensemble_predict(const EnsembleModel& model, const VideoFeatures& features,
                     int topic, int sentiment);

/// Writes ensemble.json plus one classifier_<NN>.json per member into dir.
void save_ensemble(const std::string& dir, const EnsembleModel& model);
EnsembleModel load_ensemble(const std::string& dir);

}  // namespace adeff

#endif
