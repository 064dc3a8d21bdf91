#include "adeff/ensemble.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adeff/records.hpp"
#include "adeff/util.hpp"

namespace adeff {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

BinTables make_tables(std::size_t n_classifiers) {
  BinTables t;
  t.topic_acc.assign(n_classifiers, std::vector<double>(kNumTopics, kUnseenAccuracy));
  t.sent_acc.assign(n_classifiers,
                    std::vector<double>(kNumSentiments, kUnseenAccuracy));
  t.topic_correct.assign(n_classifiers, std::vector<std::size_t>(kNumTopics, 0));
  t.topic_total.assign(n_classifiers, std::vector<std::size_t>(kNumTopics, 0));
  t.sent_correct.assign(n_classifiers, std::vector<std::size_t>(kNumSentiments, 0));
  t.sent_total.assign(n_classifiers, std::vector<std::size_t>(kNumSentiments, 0));
  return t;
}

void finalize_accuracies(BinTables& t) {
  for (std::size_t i = 0; i < t.topic_acc.size(); ++i) {
    for (int k = 0; k < kNumTopics; ++k) {
      if (t.topic_total[i][k] > 0) {
        t.topic_acc[i][k] = static_cast<double>(t.topic_correct[i][k]) /
                            static_cast<double>(t.topic_total[i][k]);
      }
    }
    for (int k = 0; k < kNumSentiments; ++k) {
      if (t.sent_total[i][k] > 0) {
        t.sent_acc[i][k] = static_cast<double>(t.sent_correct[i][k]) /
                           static_cast<double>(t.sent_total[i][k]);
      }
    }
  }
}

void tally(BinTables& t, std::size_t classifier, const EnsembleSample& sample,
           bool correct) {
  ++t.topic_total[classifier][sample.topic];
  ++t.sent_total[classifier][sample.sentiment];
  if (correct) {
    ++t.topic_correct[classifier][sample.topic];
    ++t.sent_correct[classifier][sample.sentiment];
  }
}

}  // namespace

BinTables fit_bins(const std::vector<TrainedClassifier>& classifiers,
                   const std::vector<FeatureBinding>& bindings,
                   const std::vector<EnsembleSample>& train, unsigned workers) {
  if (train.empty()) {
    throw std::invalid_argument("fit_bins: empty training set");
  }
  if (classifiers.size() != bindings.size()) {
    throw std::invalid_argument("fit_bins: classifier/binding count mismatch");
  }
  BinTables tables = make_tables(classifiers.size());
  parallel_for(classifiers.size(), workers, [&](std::size_t i) {
    for (const EnsembleSample& sample : train) {
      const std::vector<double> x =
          assemble_features(*sample.features, bindings[i].blocks);
      const bool correct = predict(classifiers[i], x) == sample.label;
      tally(tables, i, sample, correct);
    }
  });
  finalize_accuracies(tables);
  return tables;
}

BinTables fit_bins_out_of_fold(
    const std::vector<FeatureBinding>& bindings,
    const std::vector<EnsembleSample>& train, int folds,
    const std::function<TrainedClassifier(std::size_t, const LabeledSet&)>& trainer,
    unsigned workers) {
  if (train.empty()) {
    throw std::invalid_argument("fit_bins_out_of_fold: empty training set");
  }
  if (folds < 2) {
    throw std::invalid_argument("fit_bins_out_of_fold: need at least 2 folds");
  }
  BinTables tables = make_tables(bindings.size());
  parallel_for(bindings.size(), workers, [&](std::size_t i) {
    for (int fold = 0; fold < folds; ++fold) {
      LabeledSet fit;
      fit.feature_name = bindings[i].feature;
      std::vector<std::size_t> held_out;
      for (std::size_t n = 0; n < train.size(); ++n) {
        if (static_cast<int>(n % folds) == fold) {
          held_out.push_back(n);
        } else {
          fit.X.push_back(assemble_features(*train[n].features, bindings[i].blocks));
          fit.y.push_back(train[n].label);
        }
      }
      if (fit.X.empty() || held_out.empty()) continue;
      const TrainedClassifier model = trainer(i, fit);
      for (std::size_t n : held_out) {
        const std::vector<double> x =
            assemble_features(*train[n].features, bindings[i].blocks);
        tally(tables, i, train[n], predict(model, x) == train[n].label);
      }
    }
  });
  finalize_accuracies(tables);
  return tables;
}

int select_classifier(const EnsembleModel& model, int topic, int sentiment) {
  if (topic < 0 || topic >= kNumTopics || sentiment < 0 ||
      sentiment >= kNumSentiments) {
    throw std::invalid_argument("select_classifier: topic/sentiment out of range");
  }
  int best = -1;
  double best_score = kUnseenAccuracy;
  for (std::size_t i = 0; i < model.classifiers.size(); ++i) {
    const double score =
        std::max(model.bins.topic_acc[i][topic], model.bins.sent_acc[i][sentiment]);
    if (score > best_score) {
      best = static_cast<int>(i);
      best_score = score;
    }
  }
  if (best < 0 || best_score <= kUnseenAccuracy) return model.fallback_index;
  return best;
}

int ensemble_predict(const EnsembleModel& model, const VideoFeatures& features,
                     int topic, int sentiment) {
  const int c = select_classifier(model, topic, sentiment);
  const std::vector<double> x =
      assemble_features(features, model.bindings[c].blocks);
  return predict(model.classifiers[c], x);
}

namespace {

json acc_table_to_json(const std::vector<std::vector<double>>& table) {
  json rows = json::array();
  for (const std::vector<double>& row : table) {
    json r = json::array();
    for (double v : row) {
      if (v == kUnseenAccuracy) {
        r.push_back(nullptr);  // UNSEEN persists as null
      } else {
        r.push_back(v);
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::vector<double>> acc_table_from_json(const json& rows) {
  std::vector<std::vector<double>> table;
  for (const json& row : rows) {
    std::vector<double> r;
    for (const json& v : row) {
      r.push_back(v.is_null() ? kUnseenAccuracy : v.get<double>());
    }
    table.push_back(std::move(r));
  }
  return table;
}

template <typename T>
json count_table_to_json(const std::vector<std::vector<T>>& table) {
  json rows = json::array();
  for (const auto& row : table) rows.push_back(row);
  return rows;
}

std::string classifier_file_name(std::size_t index) {
  std::ostringstream os;
  os << "classifier_" << std::setfill('0') << std::setw(2) << index << ".json";
  return os.str();
}

}  // namespace

void save_ensemble(const std::string& dir, const EnsembleModel& model) {
  fs::create_directories(dir);
  json j;
  j["format_version"] = 1;
  j["fallback_index"] = model.fallback_index;
  json members = json::array();
  for (std::size_t i = 0; i < model.classifiers.size(); ++i) {
    const std::string file = classifier_file_name(i);
    save_classifier((fs::path(dir) / file).string(), model.classifiers[i]);
    members.push_back({{"file", file},
                       {"classifier", model.bindings[i].classifier},
                       {"feature", model.bindings[i].feature},
                       {"kind", to_string(model.bindings[i].kind)},
                       {"blocks", model.bindings[i].blocks}});
  }
  j["classifiers"] = std::move(members);
  j["topic_accuracy"] = acc_table_to_json(model.bins.topic_acc);
  j["sentiment_accuracy"] = acc_table_to_json(model.bins.sent_acc);
  j["topic_correct"] = count_table_to_json(model.bins.topic_correct);
  j["topic_total"] = count_table_to_json(model.bins.topic_total);
  j["sentiment_correct"] = count_table_to_json(model.bins.sent_correct);
  j["sentiment_total"] = count_table_to_json(model.bins.sent_total);
  std::ofstream out(fs::path(dir) / "ensemble.json");
  if (!out) throw std::runtime_error("cannot write ensemble.json in " + dir);
  out << j.dump(2) << '\n';
}

EnsembleModel load_ensemble(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "ensemble.json");
  if (!in) throw std::runtime_error("cannot open ensemble.json in " + dir);
  json j;
  in >> j;
  EnsembleModel model;
  model.fallback_index = j.at("fallback_index").get<int>();
  for (const json& member : j.at("classifiers")) {
    FeatureBinding binding;
    binding.classifier = member.at("classifier").get<std::string>();
    binding.feature = member.at("feature").get<std::string>();
    binding.kind = classifier_kind_from_string(member.at("kind").get<std::string>());
    binding.blocks = member.at("blocks").get<std::vector<std::string>>();
    model.bindings.push_back(std::move(binding));
    model.classifiers.push_back(load_classifier(
        (fs::path(dir) / member.at("file").get<std::string>()).string()));
  }
  model.bins.topic_acc = acc_table_from_json(j.at("topic_accuracy"));
  model.bins.sent_acc = acc_table_from_json(j.at("sentiment_accuracy"));
  const auto counts = [&](const char* key) {
    return j.at(key).get<std::vector<std::vector<std::size_t>>>();
  };
  model.bins.topic_correct = counts("topic_correct");
  model.bins.topic_total = counts("topic_total");
  model.bins.sent_correct = counts("sentiment_correct");
  model.bins.sent_total = counts("sentiment_total");
  return model;
}

}  // namespace adeff
