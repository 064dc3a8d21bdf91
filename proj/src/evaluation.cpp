#include "adeff/evaluation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adeff/dataset.hpp"
#include "adeff/rng.hpp"
#include "adeff/util.hpp"

namespace adeff {

const char* to_string(TaskKind task) {
  switch (task) {
    case TaskKind::kBinary:
      return "binary";
    case TaskKind::kFourWay:
      return "four_way";
    case TaskKind::kFiveWay:
      return "five_way";
  }
  return "unknown";
}

TaskKind task_from_string(const std::string& s) {
  if (s == "binary") return TaskKind::kBinary;
  if (s == "four" || s == "four_way") return TaskKind::kFourWay;
  if (s == "five" || s == "five_way") return TaskKind::kFiveWay;
  throw std::invalid_argument("unknown task '" + s + "'");
}

TaskSpec TaskSpec::binary() { return TaskSpec{TaskKind::kBinary}; }
TaskSpec TaskSpec::four_way() { return TaskSpec{TaskKind::kFourWay}; }
TaskSpec TaskSpec::five_way() { return TaskSpec{TaskKind::kFiveWay}; }
TaskSpec TaskSpec::of(TaskKind kind) { return TaskSpec{kind}; }

int TaskSpec::map(int effectiveness) const {
  if (effectiveness < 1 || effectiveness > 5) {
    throw std::invalid_argument("TaskSpec::map: effectiveness outside 1..5");
  }
  switch (kind) {
    case TaskKind::kBinary:
      if (effectiveness <= 2) return 0;
      if (effectiveness >= 4) return 1;
      return -1;
    case TaskKind::kFourWay:
      if (effectiveness == 3) return -1;
      return effectiveness < 3 ? effectiveness - 1 : effectiveness - 2;
    case TaskKind::kFiveWay:
      return effectiveness - 1;
  }
  return -1;
}

int TaskSpec::num_classes() const {
  switch (kind) {
    case TaskKind::kBinary:
      return 2;
    case TaskKind::kFourWay:
      return 4;
    case TaskKind::kFiveWay:
      return 5;
  }
  return 0;
}

double accuracy(const std::vector<int>& truth, const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("accuracy: length mismatch");
  }
  if (truth.empty()) {
    throw std::invalid_argument("accuracy: empty input");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == predicted[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::size_t ConfusionMatrix::total() const {
  std::size_t sum = 0;
  for (const auto& row : counts) {
    for (std::size_t v : row) sum += v;
  }
  return sum;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t sum = 0;
  for (int c = 0; c < classes; ++c) sum += counts[c][c];
  return sum;
}

ConfusionMatrix confusion(const std::vector<int>& truth,
                          const std::vector<int>& predicted, int classes) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("confusion: length mismatch");
  }
  ConfusionMatrix m;
  m.classes = classes;
  m.counts.assign(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= classes || predicted[i] < 0 ||
        predicted[i] >= classes) {
      throw std::invalid_argument("confusion: label outside 0..C-1");
    }
    ++m.counts[truth[i]][predicted[i]];
  }
  return m;
}

TrainedClassifier train_for_binding(const FeatureBinding& binding,
                                    const ClassifierSettings& settings,
                                    const LabeledSet& data) {
  switch (binding.kind) {
    case ClassifierKind::kSvm:
      return train_svm(data, settings.svm);
    case ClassifierKind::kTree:
      return train_tree(data, settings.tree);
    case ClassifierKind::kLogReg:
      return train_logreg(data, settings.logreg);
  }
  throw std::invalid_argument("train_for_binding: unknown classifier kind");
}

namespace {

struct MappedVideo {
  const ExperimentVideo* video = nullptr;
  int label = 0;
};

struct SeedResult {
  std::vector<double> classifier_accuracy;
  double ensemble_accuracy = 0.0;
  ConfusionMatrix ensemble_confusion;
  EnsembleModel model;
  PriorTable priors;
};

SeedResult run_one_seed(const std::vector<MappedVideo>& mapped,
                        const TaskSpec& task, std::uint64_t seed,
                        const std::vector<FeatureBinding>& bindings,
                        const std::vector<ClassifierSettings>& settings,
                        int fallback_index, const ExperimentOptions& options) {
  // Split on video ids, deterministically per seed.
  std::vector<std::string> ids;
  ids.reserve(mapped.size());
  for (const MappedVideo& m : mapped) ids.push_back(m.video->video_id);
  const DatasetSplit split = split_dataset(ids, options.train_fraction, seed);
  std::set<std::string> train_ids(split.train.begin(), split.train.end());

  std::vector<const MappedVideo*> train, test;
  for (const MappedVideo& m : mapped) {
    (train_ids.count(m.video->video_id) ? train : test).push_back(&m);
  }

  // Detection priors come from the training split unless the replication
  // profile asks for the full corpus.
  std::vector<const VideoFeatures*> prior_sources;
  if (options.priors_on_full_dataset) {
    for (const MappedVideo& m : mapped) prior_sources.push_back(m.video->features);
  } else {
    for (const MappedVideo* m : train) prior_sources.push_back(m->video->features);
  }
  const PriorTable priors = priors_from_store(prior_sources);

  // Materialized copies with the ratio blocks for this seed's priors.
  std::vector<VideoFeatures> storage;
  storage.reserve(mapped.size());
  std::map<const ExperimentVideo*, const VideoFeatures*> materialized;
  for (const MappedVideo& m : mapped) {
    VideoFeatures f = *m.video->features;
    add_ratio_blocks(f, priors);
    storage.push_back(std::move(f));
    materialized[m.video] = &storage.back();
  }

  auto sample_of = [&](const MappedVideo* m) {
    EnsembleSample s;
    s.features = materialized.at(m->video);
    s.topic = m->video->topic;
    s.sentiment = m->video->sentiment;
    s.label = m->label;
    return s;
  };
  std::vector<EnsembleSample> train_samples, test_samples;
  for (const MappedVideo* m : train) train_samples.push_back(sample_of(m));
  for (const MappedVideo* m : test) test_samples.push_back(sample_of(m));

  // Train every classifier slot on its bound blocks.
  std::vector<ClassifierSettings> seeded = settings;
  for (std::size_t i = 0; i < seeded.size(); ++i) {
    seeded[i].svm.seed = derive_seed(seed, 1000 + i);
    seeded[i].logreg.seed = derive_seed(seed, 2000 + i);
  }
  std::vector<TrainedClassifier> classifiers(bindings.size());
  parallel_for(bindings.size(), options.workers, [&](std::size_t i) {
    LabeledSet data;
    data.feature_name = bindings[i].feature;
    for (const EnsembleSample& s : train_samples) {
      data.X.push_back(assemble_features(*s.features, bindings[i].blocks));
      data.y.push_back(s.label);
    }
    classifiers[i] = train_for_binding(bindings[i], seeded[i], data);
  });

  SeedResult result;
  result.priors = priors;
  result.model.classifiers = std::move(classifiers);
  result.model.bindings = bindings;
  result.model.fallback_index = fallback_index;
  if (options.out_of_fold_bins) {
    result.model.bins = fit_bins_out_of_fold(
        bindings, train_samples, options.oof_folds,
        [&](std::size_t i, const LabeledSet& data) {
          return train_for_binding(bindings[i], seeded[i], data);
        },
        options.workers);
  } else {
    result.model.bins = fit_bins(result.model.classifiers, bindings,
                                 train_samples, options.workers);
  }

  // Evaluate every classifier and the ensemble on the held-out split.
  result.classifier_accuracy.assign(bindings.size(), 0.0);
  std::vector<int> truth;
  for (const EnsembleSample& s : test_samples) truth.push_back(s.label);
  parallel_for(bindings.size(), options.workers, [&](std::size_t i) {
    std::vector<int> predicted;
    predicted.reserve(test_samples.size());
    for (const EnsembleSample& s : test_samples) {
      predicted.push_back(predict(result.model.classifiers[i],
                                  assemble_features(*s.features, bindings[i].blocks)));
    }
    result.classifier_accuracy[i] = accuracy(truth, predicted);
  });
  std::vector<int> ensemble_pred;
  ensemble_pred.reserve(test_samples.size());
  for (const EnsembleSample& s : test_samples) {
    ensemble_pred.push_back(
        ensemble_predict(result.model, *s.features, s.topic, s.sentiment));
  }
  result.ensemble_accuracy = accuracy(truth, ensemble_pred);
  result.ensemble_confusion = confusion(truth, ensemble_pred, task.num_classes());
  return result;
}

}  // namespace

ExperimentReport run_experiment(const std::vector<ExperimentVideo>& dataset,
                                const TaskSpec& task,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<FeatureBinding>& bindings,
                                const std::vector<ClassifierSettings>& settings,
                                int fallback_index,
                                const ExperimentOptions& options) {
  if (bindings.size() != settings.size()) {
    throw std::invalid_argument("run_experiment: bindings/settings size mismatch");
  }
  if (seeds.empty()) {
    throw std::invalid_argument("run_experiment: need at least one seed");
  }
  std::vector<MappedVideo> mapped;
  for (const ExperimentVideo& v : dataset) {
    const int label = task.map(v.effectiveness);
    if (label >= 0) mapped.push_back(MappedVideo{&v, label});
  }
  std::vector<std::size_t> class_counts(task.num_classes(), 0);
  for (const MappedVideo& m : mapped) ++class_counts[m.label];
  for (int c = 0; c < task.num_classes(); ++c) {
    if (class_counts[c] == 0) {
      std::ostringstream os;
      os << "run_experiment: task class " << c << " absent after label mapping";
      throw std::invalid_argument(os.str());
    }
  }

  ExperimentReport report;
  report.task = task.kind;
  report.baseline = task.baseline();
  report.seeds = seeds;
  report.classifier_accuracy.assign(bindings.size(), 0.0);
  report.ensemble_confusion.classes = task.num_classes();
  report.ensemble_confusion.counts.assign(
      task.num_classes(), std::vector<std::size_t>(task.num_classes(), 0));

  for (std::uint64_t seed : seeds) {
    SeedResult r = run_one_seed(mapped, task, seed, bindings, settings,
                                fallback_index, options);
    report.per_seed_classifier.push_back(r.classifier_accuracy);
    report.per_seed_ensemble.push_back(r.ensemble_accuracy);
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      report.classifier_accuracy[i] += r.classifier_accuracy[i];
    }
    report.ensemble_accuracy += r.ensemble_accuracy;
    for (int a = 0; a < task.num_classes(); ++a) {
      for (int b = 0; b < task.num_classes(); ++b) {
        report.ensemble_confusion.counts[a][b] += r.ensemble_confusion.counts[a][b];
      }
    }
    report.models.push_back(std::move(r.model));
    report.priors.push_back(std::move(r.priors));
  }
  const double n_seeds = static_cast<double>(seeds.size());
  for (double& acc : report.classifier_accuracy) acc /= n_seeds;
  report.ensemble_accuracy /= n_seeds;
  return report;
}

std::string confusion_to_json(const ConfusionMatrix& matrix, TaskKind task,
                              const std::vector<std::uint64_t>& seeds) {
  nlohmann::json j;
  j["task"] = to_string(task);
  j["classes"] = matrix.classes;
  j["seeds"] = seeds;
  j["rows_are_true_labels"] = true;
  j["matrix"] = matrix.counts;
  return j.dump(2);
}

}  // namespace adeff
