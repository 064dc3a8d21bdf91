#ifndef ADEFF_RECORDS_HPP
#define ADEFF_RECORDS_HPP

#include <optional>
#include <string>
#include <vector>

namespace adeff {

inline constexpr int kNumTopics = 38;
inline constexpr int kNumSentiments = 30;
inline constexpr int kNumEffectiveness = 5;
inline constexpr int kAnnotatorsPerVideo = 5;

/// One annotator's label set for a video.
struct AnnotationSet {
  int effectiveness = 1;  // 1..5
  int topic = 0;          // 0..37
  int sentiment = 0;      // 0..29
  int exciting = 0;       // {0,1}
  int funny = 0;          // {0,1}
  int language = 0;       // {-1,0,1}
};

/// Paths to the per-video asset files; every entry is optional.
struct AssetPaths {
  std::optional<std::string> frames;        // directory of PPM/PNG frames
  std::optional<std::string> transcript;    // JSON array of {frame, text}
  std::optional<std::string> detections;    // JSON detection file
  std::optional<std::string> memorability;  // one float per line
  std::optional<std::string> audio;         // one amplitude per line
};

struct RawVideoRecord {
  std::string video_id;
  std::vector<AnnotationSet> ratings;  // exactly 5
  double duration_seconds = 0.0;
  AssetPaths assets;
  // Action/reason statements ("... because ..."), when the corpus provides
  // them. Consumed by the analysis module only.
  std::vector<std::string> statements;
};

/// Mode-aggregated labels for one video.
struct CleanVideoRecord {
  std::string video_id;
  int effectiveness = 1;
  int topic = 0;
  int sentiment = 0;
  int exciting = 0;
  int funny = 0;
  int language = 0;
  double duration_seconds = 0.0;
};

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when a field is outside its legal range.
void validate(const AnnotationSet& a);
/// Checks the 5-annotator invariant, duration > 0 and each annotation set.
void validate(const RawVideoRecord& r);

// JSON-Lines I/O. Parse errors carry the 1-based line number.
std::vector<RawVideoRecord> read_raw_records(const std::string& path);
void write_raw_records(const std::string& path,
                       const std::vector<RawVideoRecord>& records);
std::vector<CleanVideoRecord> read_clean_records(const std::string& path);
void write_clean_records(const std::string& path,
                         const std::vector<CleanVideoRecord>& records);

}  // namespace adeff

#endif
