#include "adeff/detection_features.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace adeff {

namespace {

void check_labels(const std::vector<int>& labels, int vocab_size,
                  const char* family) {
  for (int label : labels) {
    if (label < 0 || label >= vocab_size) {
      std::ostringstream os;
      os << family << " label " << label << " outside [0, " << vocab_size << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

void accumulate(std::vector<double>& counts, const std::vector<int>& labels) {
  for (int label : labels) counts[label] += 1.0;
}

}  // namespace

void normalize_counts(std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (total == 0.0) return;
  for (double& c : counts) c /= total;
}

std::vector<double> ratio_from_distribution(const std::vector<double>& dist,
                                            const std::vector<double>& prior) {
  std::vector<double> out(dist.size(), 0.0);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (prior[k] > 0.0) out[k] = dist[k] / prior[k];
  }
  return out;
}

std::vector<double> label_counts(const std::vector<int>& labels, int vocab_size) {
  std::vector<double> counts(vocab_size, 0.0);
  accumulate(counts, labels);
  return counts;
}

void validate(const DetectionFile& d) {
  check_labels(d.objects, kNumObjects, "objects");
  check_labels(d.places, kNumPlaces, "places");
  check_labels(d.expressions, kNumExpressions, "expressions");
  check_labels(d.emotions, kNumEmotions, "emotions");
}

std::vector<double> label_distribution(const std::vector<int>& labels,
                                       int vocab_size) {
  std::vector<double> counts = label_counts(labels, vocab_size);
  normalize_counts(counts);
  return counts;
}

PriorTable compute_priors(const std::vector<DetectionFile>& corpus) {
  PriorTable priors;
  priors.objects.assign(kNumObjects, 0.0);
  priors.places.assign(kNumPlaces, 0.0);
  priors.expressions.assign(kNumExpressions, 0.0);
  priors.emotions.assign(kNumEmotions, 0.0);
  for (const DetectionFile& d : corpus) {
    accumulate(priors.objects, d.objects);
    accumulate(priors.places, d.places);
    accumulate(priors.expressions, d.expressions);
    accumulate(priors.emotions, d.emotions);
  }
  normalize_counts(priors.objects);
  normalize_counts(priors.places);
  normalize_counts(priors.expressions);
  normalize_counts(priors.emotions);
  return priors;
}

double audio_loudness(const std::vector<double>& amplitudes) {
  if (amplitudes.empty()) return 0.0;
  double sum = 0.0;
  for (double a : amplitudes) sum += std::abs(a);
  return sum / static_cast<double>(amplitudes.size());
}

DetectionFeatureBlock ratio_features(const DetectionFile& video,
                                     const PriorTable& priors) {
  DetectionFeatureBlock block;
  block.objects_ratio = ratio_from_distribution(
      label_distribution(video.objects, kNumObjects), priors.objects);
  block.places_ratio = ratio_from_distribution(
      label_distribution(video.places, kNumPlaces), priors.places);
  block.expressions_ratio = ratio_from_distribution(
      label_distribution(video.expressions, kNumExpressions), priors.expressions);
  block.emotions_ratio = ratio_from_distribution(
      label_distribution(video.emotions, kNumEmotions), priors.emotions);
  block.audio_loudness = audio_loudness(video.audio);
  block.climax_count = video.climaxes.size();
  return block;
}

DetectionFile read_detections(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  DetectionFile d;
  if (j.contains("objects")) d.objects = j.at("objects").get<std::vector<int>>();
  if (j.contains("places")) d.places = j.at("places").get<std::vector<int>>();
  if (j.contains("expressions"))
    d.expressions = j.at("expressions").get<std::vector<int>>();
  if (j.contains("emotions")) d.emotions = j.at("emotions").get<std::vector<int>>();
  if (j.contains("audio")) d.audio = j.at("audio").get<std::vector<double>>();
  if (j.contains("climaxes"))
    d.climaxes = j.at("climaxes").get<std::vector<double>>();
  validate(d);
  return d;
}

std::vector<std::string> read_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

}  // namespace adeff
