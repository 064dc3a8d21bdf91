#ifndef ADEFF_LEARNERS_HPP
#define ADEFF_LEARNERS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace adeff {

/// One design matrix with labels in 0..C-1.
struct LabeledSet {
  std::vector<std::vector<double>> X;
  std::vector<int> y;
  std::string feature_name;
};

enum class ClassifierKind { kSvm, kTree, kLogReg };

const char* to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& s);

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
};

struct SvmParams {
  double lambda = 1e-4;
  int epochs = 50;
  int degree = 1;  // 1 = linear, 2 = explicit quadratic feature map
  std::uint64_t seed = 0;
};

struct TreeParams {
  int min_split = 2;
  int max_depth = 16;
};

struct LogRegParams {
  double lambda = 1e-4;
  int epochs = 200;
  double step = 0.5;
  std::uint64_t seed = 0;
};

struct TrainedClassifier {
  ClassifierKind kind = ClassifierKind::kSvm;
  std::string feature_name;
  int num_classes = 0;
  int input_dim = 0;
  int degree = 1;
  // Linear models: one (w, b) per class over the standardized, expanded
  // feature space.
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  // Tree models: nodes[0] is the root.
  std::vector<TreeNode> nodes;
  // Training metadata.
  double lambda = 0.0;
  int epochs = 0;
  double step = 0.0;
  int min_split = 0;
  int max_depth = 0;
  std::uint64_t seed = 0;
};

/// x -> [x, x_i * x_j for i <= j]; degree 1 returns x unchanged.
std::vector<double> expand_features(const std::vector<double>& x, int degree);

/// One-vs-rest hinge-loss linear classifiers trained by Pegasos-style
/// subgradient descent: step 1/(lambda t), one seeded Fisher-Yates shuffle
/// per class reused across epochs, projection onto ||w|| <= 1/sqrt(lambda).
/// Features are expanded, then standardized with statistics stored in the
/// model.
TrainedClassifier train_svm(const LabeledSet& data, const SvmParams& params);

/// CART with Gini impurity. Thresholds are midpoints of consecutive sorted
/// unique values; the search scans features then thresholds in ascending
/// order and keeps the first strictly best split. Leaves form when a node is
/// pure, smaller than min_split, or at max_depth; leaf labels are the
/// majority with ties to the smallest class.
TrainedClassifier train_tree(const LabeledSet& data, const TreeParams& params);

/// One-vs-rest L2-regularized logistic regression by full-batch gradient
/// descent with a fixed step. Throws when the loss turns non-finite.
TrainedClassifier train_logreg(const LabeledSet& data, const LogRegParams& params);

/// Per-class decision scores of a linear model (tree models throw).
std::vector<double> decision_scores(const TrainedClassifier& model,
                                    const std::vector<double>& x);

/// Argmax of scores with ties to the smallest class; trees descend from the
/// root (x[feature] <= threshold goes left). Throws on dimension mismatch.
int predict(const TrainedClassifier& model, const std::vector<double>& x);

/// Gini impurity of a label count vector: 1 - sum (c_k / n)^2.
double gini_impurity(const std::vector<std::size_t>& counts);

// Objectives and gradients on the raw (already standardized) inputs; exposed
// so tests can check them against finite differences and monotonicity.
double svm_objective(const std::vector<std::vector<double>>& X,
                     const std::vector<int>& y_pm, const std::vector<double>& w,
                     double b, double lambda);
double logreg_objective(const std::vector<std::vector<double>>& X,
                        const std::vector<int>& y_pm,
                        const std::vector<double>& w, double b, double lambda);
void logreg_gradient(const std::vector<std::vector<double>>& X,
                     const std::vector<int>& y_pm, const std::vector<double>& w,
                     double b, double lambda, std::vector<double>* grad_w,
                     double* grad_b);

// Versioned JSON persistence; a round-trip reproduces bit-identical
// predictions.
std::string classifier_to_json(const TrainedClassifier& model);
TrainedClassifier classifier_from_json(const std::string& text);
void save_classifier(const std::string& path, const TrainedClassifier& model);
TrainedClassifier load_classifier(const std::string& path);

}  // namespace adeff

#endif
