#ifndef ADEFF_EVALUATION_HPP
#define ADEFF_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "adeff/ensemble.hpp"
#include "adeff/feature_store.hpp"
#include "adeff/learners.hpp"

namespace adeff {

enum class TaskKind { kBinary, kFourWay, kFiveWay };

const char* to_string(TaskKind task);
TaskKind task_from_string(const std::string& s);

/// Maps effectiveness 1..5 onto task classes. Binary: {1,2} -> 0, {4,5} -> 1,
/// 3 dropped; four-way: {1,2,4,5} -> 0..3, 3 dropped; five-way: identity.
struct TaskSpec {
  TaskKind kind = TaskKind::kFiveWay;

  static TaskSpec binary();
  static TaskSpec four_way();
  static TaskSpec five_way();
  static TaskSpec of(TaskKind kind);

  /// Task class, or -1 when the rating is dropped.
  int map(int effectiveness) const;
  int num_classes() const;
  double baseline() const { return 1.0 / num_classes(); }
};

/// Fraction of equal entries; throws on length mismatch or empty input.
double accuracy(const std::vector<int>& truth, const std::vector<int>& predicted);

struct ConfusionMatrix {
  int classes = 0;
  std::vector<std::vector<std::size_t>> counts;  // rows true, columns predicted

  std::size_t total() const;
  std::size_t trace() const;
};

ConfusionMatrix confusion(const std::vector<int>& truth,
                          const std::vector<int>& predicted, int classes);

/// Everything run_experiment needs to know about one video.
struct ExperimentVideo {
  std::string video_id;
  const VideoFeatures* features = nullptr;
  int effectiveness = 1;  // 1..5
  int topic = 0;
  int sentiment = 0;
};

/// Hyperparameters for one classifier slot; the binding's kind picks which
/// member applies.
struct ClassifierSettings {
  SvmParams svm;
  TreeParams tree;
  LogRegParams logreg;
};

struct ExperimentOptions {
  double train_fraction = 0.8;
  bool priors_on_full_dataset = false;
  bool out_of_fold_bins = false;
  int oof_folds = 5;
  unsigned workers = 0;
};

struct ExperimentReport {
  TaskKind task = TaskKind::kFiveWay;
  double baseline = 0.0;
  std::vector<std::uint64_t> seeds;
  // Mean over seeds, one entry per classifier slot.
  std::vector<double> classifier_accuracy;
  double ensemble_accuracy = 0.0;
  // Per-seed detail, seeds x classifiers.
  std::vector<std::vector<double>> per_seed_classifier;
  std::vector<double> per_seed_ensemble;
  // Ensemble confusion summed over the seeds.
  ConfusionMatrix ensemble_confusion;
  // Ensemble models, one per seed (ownership passed to the caller).
  std::vector<EnsembleModel> models;
  // Priors used per seed (training-split or full-corpus per options).
  std::vector<PriorTable> priors;
};

/// One full experiment: per seed, map labels (dropping rating 3 when the
/// task says so), split 80/20, derive detection priors, train every
/// classifier slot, fit the accuracy bins, and evaluate classifiers and the
/// ensemble on the test split. Throws when a task class is absent after
/// mapping.
ExperimentReport run_experiment(const std::vector<ExperimentVideo>& dataset,
                                const TaskSpec& task,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<FeatureBinding>& bindings,
                                const std::vector<ClassifierSettings>& settings,
                                int fallback_index,
                                const ExperimentOptions& options);

/// Trains the binding's kind of classifier with the slot's settings.
TrainedClassifier train_for_binding(const FeatureBinding& binding,
                                    const ClassifierSettings& settings,
                                    const LabeledSet& data);

std::string confusion_to_json(const ConfusionMatrix& matrix, TaskKind task,
                              const std::vector<std::uint64_t>& seeds);

}  // namespace adeff

#endif
