#ifndef ADEFF_DETECTION_FEATURES_HPP
#define ADEFF_DETECTION_FEATURES_HPP

#include <string>
#include <vector>

namespace adeff {

inline constexpr int kNumObjects = 80;
inline constexpr int kNumPlaces = 365;
inline constexpr int kNumExpressions = 8;
inline constexpr int kNumEmotions = 26;

/// Upstream per-video detections: label indices per family plus the audio
/// amplitudes and climax timestamps.
struct DetectionFile {
  std::vector<int> objects;      // indices < 80
  std::vector<int> places;       // indices < 365
  std::vector<int> expressions;  // indices < 8
  std::vector<int> emotions;     // indices < 26
  std::vector<double> audio;     // per-frame amplitudes
  std::vector<double> climaxes;  // seconds
};

/// Corpus-wide label distributions, one probability vector per family. A
/// family with no detections anywhere is the zero vector.
struct PriorTable {
  std::vector<double> objects;
  std::vector<double> places;
  std::vector<double> expressions;
  std::vector<double> emotions;
};

struct DetectionFeatureBlock {
  std::vector<double> objects_ratio;      // 80
  std::vector<double> places_ratio;       // 365
  std::vector<double> expressions_ratio;  // 8
  std::vector<double> emotions_ratio;     // 26
  double audio_loudness = 0.0;            // mean absolute amplitude
  std::size_t climax_count = 0;
};

/// Validates label ranges.
void validate(const DetectionFile& d);

/// Raw label counts for one family.
std::vector<double> label_counts(const std::vector<int>& labels, int vocab_size);

/// Normalized label counts for one family; total 0 gives the zero vector.
std::vector<double> label_distribution(const std::vector<int>& labels,
                                       int vocab_size);

/// In-place L1 normalization; an all-zero vector stays zero.
void normalize_counts(std::vector<double>& counts);

/// Elementwise dist / prior where the prior is positive, 0 elsewhere.
std::vector<double> ratio_from_distribution(const std::vector<double>& dist,
                                            const std::vector<double>& prior);

/// prior[k] = count(k) / total detections of the family, over the given
/// corpus (training split by default, full corpus under the replication
/// profile).
PriorTable compute_priors(const std::vector<DetectionFile>& corpus);

/// ratio(k) = p_video(k) / prior(k) when prior(k) > 0, else 0. Also fills
/// audio loudness and climax count.
DetectionFeatureBlock ratio_features(const DetectionFile& video,
                                     const PriorTable& priors);

/// Mean absolute amplitude; empty input is 0.
double audio_loudness(const std::vector<double>& amplitudes);

/// Reads the per-video detection JSON (arrays "objects", "places",
/// "expressions", "emotions", "audio", "climaxes"; all optional).
DetectionFile read_detections(const std::string& path);

/// One label name per line; index = line number. Used only to pretty-print
/// reports; absent files fall back to "<family>_<index>" names.
std::vector<std::string> read_vocabulary(const std::string& path);

}  // namespace adeff

#endif
