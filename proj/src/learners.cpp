#include "adeff/learners.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adeff/rng.hpp"

namespace adeff {

using nlohmann::json;

const char* to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kSvm:
      return "svm";
    case ClassifierKind::kTree:
      return "tree";
    case ClassifierKind::kLogReg:
      return "logreg";
  }
  return "unknown";
}

ClassifierKind classifier_kind_from_string(const std::string& s) {
  if (s == "svm") return ClassifierKind::kSvm;
  if (s == "tree") return ClassifierKind::kTree;
  if (s == "logreg") return ClassifierKind::kLogReg;
  throw std::invalid_argument("unknown classifier kind '" + s + "'");
}

std::vector<double> expand_features(const std::vector<double>& x, int degree) {
  if (degree <= 1) return x;
  if (degree != 2) {
    throw std::invalid_argument("expand_features: only degrees 1 and 2 supported");
  }
  std::vector<double> z = x;
  z.reserve(x.size() + x.size() * (x.size() + 1) / 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i; j < x.size(); ++j) z.push_back(x[i] * x[j]);
  }
  return z;
}

namespace {

void check_training_input(const LabeledSet& data, bool needs_two_classes) {
  if (data.X.empty()) throw std::invalid_argument("training data is empty");
  if (data.X.size() != data.y.size()) {
    throw std::invalid_argument("X and y row counts differ");
  }
  const std::size_t dim = data.X.front().size();
  for (const std::vector<double>& row : data.X) {
    if (row.size() != dim) throw std::invalid_argument("ragged design matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
    }
  }
  for (int label : data.y) {
    if (label < 0) throw std::invalid_argument("negative class label");
  }
  if (needs_two_classes) {
    const std::set<int> distinct(data.y.begin(), data.y.end());
    if (distinct.size() < 2) {
      throw std::invalid_argument("training data contains a single class");
    }
  }
}

int num_classes_of(const std::vector<int>& y) {
  return *std::max_element(y.begin(), y.end()) + 1;
}

struct Standardization {
  std::vector<double> mean;
  std::vector<double> scale;
};

Standardization fit_standardization(const std::vector<std::vector<double>>& X) {
  const std::size_t n = X.size();
  const std::size_t d = X.front().size();
  Standardization s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (const std::vector<double>& row : X) {
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (double& m : s.mean) m /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (const std::vector<double>& row : X) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dlt = row[j] - s.mean[j];
      var[j] += dlt * dlt;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(n));
    s.scale[j] = sd > 0.0 ? sd : 1.0;  // constant columns become exactly 0
  }
  return s;
}

std::vector<std::vector<double>> apply_standardization(
    const std::vector<std::vector<double>>& X, const Standardization& s) {
  std::vector<std::vector<double>> out = X;
  for (std::vector<double>& row : out) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = (row[j] - s.mean[j]) / s.scale[j];
    }
  }
  return out;
}

std::vector<std::vector<double>> expand_matrix(
    const std::vector<std::vector<double>>& X, int degree) {
  if (degree <= 1) return X;
  std::vector<std::vector<double>> out;
  out.reserve(X.size());
  for (const std::vector<double>& row : X) out.push_back(expand_features(row, degree));
  return out;
}

}  // namespace

double gini_impurity(const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) return 0.0;
  double g = 1.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    g -= p * p;
  }
  return g;
}

TrainedClassifier train_svm(const LabeledSet& data, const SvmParams& params) {
  check_training_input(data, /*needs_two_classes=*/true);
  if (!(params.lambda > 0.0)) {
    throw std::invalid_argument("train_svm: lambda must be > 0");
  }
  const std::vector<std::vector<double>> Z = expand_matrix(data.X, params.degree);
  const Standardization stats = fit_standardization(Z);
  const std::vector<std::vector<double>> S = apply_standardization(Z, stats);
  const std::size_t n = S.size();
  const std::size_t d = S.front().size();
  const int classes = num_classes_of(data.y);
  const double w_cap = 1.0 / std::sqrt(params.lambda);

  TrainedClassifier model;
  model.kind = ClassifierKind::kSvm;
  model.feature_name = data.feature_name;
  model.num_classes = classes;
  model.input_dim = static_cast<int>(data.X.front().size());
  model.degree = params.degree;
  model.mean = stats.mean;
  model.scale = stats.scale;
  model.lambda = params.lambda;
  model.epochs = params.epochs;
  model.seed = params.seed;
  model.weights.assign(classes, std::vector<double>(d, 0.0));
  model.bias.assign(classes, 0.0);

  for (int c = 0; c < classes; ++c) {
    std::vector<double>& w = model.weights[c];
    double& b = model.bias[c];
    std::mt19937_64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(c)));
    // one fixed shuffle per class, reused every epoch
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(order, rng);
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      for (std::size_t idx : order) {
        ++t;
        const double eta = 1.0 / (params.lambda * static_cast<double>(t));
        const std::vector<double>& x = S[idx];
        const double yc = data.y[idx] == c ? 1.0 : -1.0;
        double margin = b;
        for (std::size_t j = 0; j < d; ++j) margin += w[j] * x[j];
        margin *= yc;
        const double shrink = 1.0 - eta * params.lambda;  // = 1 - 1/t
        if (margin < 1.0) {
          for (std::size_t j = 0; j < d; ++j) w[j] = shrink * w[j] + eta * yc * x[j];
          b += eta * yc;
        } else {
          for (std::size_t j = 0; j < d; ++j) w[j] *= shrink;
        }
        double norm_sq = 0.0;
        for (double v : w) norm_sq += v * v;
        if (norm_sq > w_cap * w_cap) {
          const double factor = w_cap / std::sqrt(norm_sq);
          for (double& v : w) v *= factor;
        }
      }
    }
  }
  return model;
}

namespace {

int majority_label(const std::vector<std::size_t>& counts) {
  int best = 0;
  std::size_t best_count = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > best_count) {  // strict: ties keep the smallest class
      best = static_cast<int>(c);
      best_count = counts[c];
    }
  }
  return best;
}

struct SplitChoice {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;
};

// Weighted child Gini of the best (feature, threshold) pair, scanning
// features then midpoint thresholds in ascending order; first strictly
// better score wins.
SplitChoice best_split(const std::vector<std::vector<double>>& X,
                       const std::vector<int>& y,
                       const std::vector<std::size_t>& indices, int classes) {
  SplitChoice best;
  const std::size_t d = X.front().size();
  const double n = static_cast<double>(indices.size());
  for (std::size_t f = 0; f < d; ++f) {
    std::vector<double> values;
    values.reserve(indices.size());
    for (std::size_t i : indices) values.push_back(X[i][f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      const double threshold = (values[v] + values[v + 1]) / 2.0;
      std::vector<std::size_t> left_counts(classes, 0), right_counts(classes, 0);
      std::size_t n_left = 0;
      for (std::size_t i : indices) {
        if (X[i][f] <= threshold) {
          ++left_counts[y[i]];
          ++n_left;
        } else {
          ++right_counts[y[i]];
        }
      }
      const std::size_t n_right = indices.size() - n_left;
      const double score = (static_cast<double>(n_left) * gini_impurity(left_counts) +
                            static_cast<double>(n_right) * gini_impurity(right_counts)) /
                           n;
      if (!best.found || score < best.score) {
        best.found = true;
        best.feature = static_cast<int>(f);
        best.threshold = threshold;
        best.score = score;
      }
    }
  }
  return best;
}

int build_tree(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
               std::vector<std::size_t> indices, int depth, int classes,
               const TreeParams& params, std::vector<TreeNode>* nodes) {
  std::vector<std::size_t> counts(classes, 0);
  for (std::size_t i : indices) ++counts[y[i]];
  const bool pure = std::count_if(counts.begin(), counts.end(),
                                  [](std::size_t c) { return c > 0; }) <= 1;

  const int node_index = static_cast<int>(nodes->size());
  nodes->push_back(TreeNode{});
  TreeNode& node = (*nodes)[node_index];
  node.label = majority_label(counts);

  if (pure || indices.size() < static_cast<std::size_t>(params.min_split) ||
      depth >= params.max_depth) {
    return node_index;
  }
  const SplitChoice split = best_split(X, y, indices, classes);
  if (!split.found) return node_index;  // constant features, mixed labels

  std::vector<std::size_t> left, right;
  for (std::size_t i : indices) {
    (X[i][split.feature] <= split.threshold ? left : right).push_back(i);
  }
  (*nodes)[node_index].feature = split.feature;
  (*nodes)[node_index].threshold = split.threshold;
  const int l = build_tree(X, y, std::move(left), depth + 1, classes, params, nodes);
  (*nodes)[node_index].left = l;
  const int r = build_tree(X, y, std::move(right), depth + 1, classes, params, nodes);
  (*nodes)[node_index].right = r;
  return node_index;
}

}  // namespace

TrainedClassifier train_tree(const LabeledSet& data, const TreeParams& params) {
  check_training_input(data, /*needs_two_classes=*/false);
  if (params.min_split < 2) {
    throw std::invalid_argument("train_tree: min_split must be >= 2");
  }
  if (params.max_depth < 0) {
    throw std::invalid_argument("train_tree: max_depth must be >= 0");
  }
  TrainedClassifier model;
  model.kind = ClassifierKind::kTree;
  model.feature_name = data.feature_name;
  model.num_classes = num_classes_of(data.y);
  model.input_dim = static_cast<int>(data.X.front().size());
  model.min_split = params.min_split;
  model.max_depth = params.max_depth;
  std::vector<std::size_t> all(data.X.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  build_tree(data.X, data.y, std::move(all), 0, model.num_classes, params,
             &model.nodes);
  return model;
}

double svm_objective(const std::vector<std::vector<double>>& X,
                     const std::vector<int>& y_pm, const std::vector<double>& w,
                     double b, double lambda) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double score = b;
    for (std::size_t j = 0; j < w.size(); ++j) score += w[j] * X[i][j];
    hinge += std::max(0.0, 1.0 - y_pm[i] * score);
  }
  double norm_sq = 0.0;
  for (double v : w) norm_sq += v * v;
  return lambda / 2.0 * norm_sq + hinge / static_cast<double>(X.size());
}

namespace {

// log(1 + exp(-m)) without overflow.
double log1p_exp_neg(double m) {
  return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

}  // namespace

double logreg_objective(const std::vector<std::vector<double>>& X,
                        const std::vector<int>& y_pm,
                        const std::vector<double>& w, double b, double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double score = b;
    for (std::size_t j = 0; j < w.size(); ++j) score += w[j] * X[i][j];
    loss += log1p_exp_neg(y_pm[i] * score);
  }
  double norm_sq = 0.0;
  for (double v : w) norm_sq += v * v;
  return lambda / 2.0 * norm_sq + loss / static_cast<double>(X.size());
}

void logreg_gradient(const std::vector<std::vector<double>>& X,
                     const std::vector<int>& y_pm, const std::vector<double>& w,
                     double b, double lambda, std::vector<double>* grad_w,
                     double* grad_b) {
  const double n = static_cast<double>(X.size());
  grad_w->assign(w.size(), 0.0);
  *grad_b = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double score = b;
    for (std::size_t j = 0; j < w.size(); ++j) score += w[j] * X[i][j];
    const double m = y_pm[i] * score;
    // d/dm log(1+exp(-m)) = -sigmoid(-m)
    const double p = m > 0.0 ? std::exp(-m) / (1.0 + std::exp(-m))
                             : 1.0 / (1.0 + std::exp(m));
    const double coeff = -p * y_pm[i] / n;
    for (std::size_t j = 0; j < w.size(); ++j) (*grad_w)[j] += coeff * X[i][j];
    *grad_b += coeff;
  }
  for (std::size_t j = 0; j < w.size(); ++j) (*grad_w)[j] += lambda * w[j];
}

TrainedClassifier train_logreg(const LabeledSet& data, const LogRegParams& params) {
  check_training_input(data, /*needs_two_classes=*/true);
  if (!(params.lambda >= 0.0)) {
    throw std::invalid_argument("train_logreg: lambda must be >= 0");
  }
  const Standardization stats = fit_standardization(data.X);
  const std::vector<std::vector<double>> S = apply_standardization(data.X, stats);
  const int classes = num_classes_of(data.y);
  const std::size_t d = S.front().size();

  TrainedClassifier model;
  model.kind = ClassifierKind::kLogReg;
  model.feature_name = data.feature_name;
  model.num_classes = classes;
  model.input_dim = static_cast<int>(d);
  model.mean = stats.mean;
  model.scale = stats.scale;
  model.lambda = params.lambda;
  model.epochs = params.epochs;
  model.step = params.step;
  model.seed = params.seed;
  model.weights.assign(classes, std::vector<double>(d, 0.0));
  model.bias.assign(classes, 0.0);

  for (int c = 0; c < classes; ++c) {
    std::vector<int> y_pm(data.y.size());
    for (std::size_t i = 0; i < data.y.size(); ++i) {
      y_pm[i] = data.y[i] == c ? 1 : -1;
    }
    std::vector<double>& w = model.weights[c];
    double& b = model.bias[c];
    std::vector<double> grad_w;
    double grad_b = 0.0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      logreg_gradient(S, y_pm, w, b, params.lambda, &grad_w, &grad_b);
      for (std::size_t j = 0; j < d; ++j) w[j] -= params.step * grad_w[j];
      b -= params.step * grad_b;
      const double loss = logreg_objective(S, y_pm, w, b, params.lambda);
      if (!std::isfinite(loss)) {
        throw std::runtime_error(
            "train_logreg: loss became non-finite (step too large)");
      }
    }
  }
  return model;
}

std::vector<double> decision_scores(const TrainedClassifier& model,
                                    const std::vector<double>& x) {
  if (model.kind == ClassifierKind::kTree) {
    throw std::invalid_argument("decision_scores: tree models have no scores");
  }
  if (static_cast<int>(x.size()) != model.input_dim) {
    std::ostringstream os;
    os << "predict: expected " << model.input_dim << " features, got " << x.size();
    throw std::invalid_argument(os.str());
  }
  const std::vector<double> z = expand_features(x, model.degree);
  std::vector<double> scores(model.num_classes, 0.0);
  for (int c = 0; c < model.num_classes; ++c) {
    double s = model.bias[c];
    const std::vector<double>& w = model.weights[c];
    for (std::size_t j = 0; j < z.size(); ++j) {
      s += w[j] * (z[j] - model.mean[j]) / model.scale[j];
    }
    scores[c] = s;
  }
  return scores;
}

int predict(const TrainedClassifier& model, const std::vector<double>& x) {
  if (model.kind == ClassifierKind::kTree) {
    if (static_cast<int>(x.size()) != model.input_dim) {
      std::ostringstream os;
      os << "predict: expected " << model.input_dim << " features, got " << x.size();
      throw std::invalid_argument(os.str());
    }
    int node = 0;
    while (model.nodes[node].feature >= 0) {
      const TreeNode& n = model.nodes[node];
      node = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return model.nodes[node].label;
  }
  const std::vector<double> scores = decision_scores(model, x);
  int best = 0;
  for (int c = 1; c < model.num_classes; ++c) {
    if (scores[c] > scores[best]) best = c;  // ties keep the smallest class
  }
  return best;
}

std::string classifier_to_json(const TrainedClassifier& model) {
  json j;
  j["format_version"] = 1;
  j["kind"] = to_string(model.kind);
  j["feature_name"] = model.feature_name;
  j["num_classes"] = model.num_classes;
  j["input_dim"] = model.input_dim;
  j["degree"] = model.degree;
  j["hyperparameters"] = {{"lambda", model.lambda}, {"epochs", model.epochs},
                          {"step", model.step},     {"min_split", model.min_split},
                          {"max_depth", model.max_depth}, {"seed", model.seed}};
  if (model.kind == ClassifierKind::kTree) {
    json nodes = json::array();
    for (const TreeNode& n : model.nodes) {
      nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold},
                       {"left", n.left}, {"right", n.right}, {"label", n.label}});
    }
    j["nodes"] = std::move(nodes);
  } else {
    j["standardization"] = {{"mean", model.mean}, {"scale", model.scale}};
    j["weights"] = model.weights;
    j["bias"] = model.bias;
  }
  return j.dump(2);
}

TrainedClassifier classifier_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("format_version").get<int>() != 1) {
    throw std::runtime_error("unsupported model format version");
  }
  TrainedClassifier model;
  model.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
  model.feature_name = j.value("feature_name", std::string{});
  model.num_classes = j.at("num_classes").get<int>();
  model.input_dim = j.at("input_dim").get<int>();
  model.degree = j.at("degree").get<int>();
  const json& h = j.at("hyperparameters");
  model.lambda = h.at("lambda").get<double>();
  model.epochs = h.at("epochs").get<int>();
  model.step = h.at("step").get<double>();
  model.min_split = h.at("min_split").get<int>();
  model.max_depth = h.at("max_depth").get<int>();
  model.seed = h.at("seed").get<std::uint64_t>();
  if (model.kind == ClassifierKind::kTree) {
    for (const json& n : j.at("nodes")) {
      TreeNode node;
      node.feature = n.at("feature").get<int>();
      node.threshold = n.at("threshold").get<double>();
      node.left = n.at("left").get<int>();
      node.right = n.at("right").get<int>();
      node.label = n.at("label").get<int>();
      model.nodes.push_back(node);
    }
  } else {
    model.mean = j.at("standardization").at("mean").get<std::vector<double>>();
    model.scale = j.at("standardization").at("scale").get<std::vector<double>>();
    model.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    model.bias = j.at("bias").get<std::vector<double>>();
  }
  return model;
}

void save_classifier(const std::string& path, const TrainedClassifier& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << classifier_to_json(model) << '\n';
}

TrainedClassifier load_classifier(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return classifier_from_json(buf.str());
}

}  // namespace adeff
