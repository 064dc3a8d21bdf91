#ifndef ADEFF_ANALYSIS_HPP
#define ADEFF_ANALYSIS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "adeff/records.hpp"

namespace adeff {

/// Sample Pearson correlation. Throws on length mismatch, fewer than two
/// points, or zero variance in either argument.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Population standard deviation over mean, in percent. Length is not fixed
/// to five so annotator subsets can be analyzed too.
double coefficient_of_variation(const std::vector<int>& ratings);

/// Shannon entropy in nats of a non-negative vector summing to one
/// (0 * ln 0 == 0). Throws when the input is not a distribution.
double flow_entropy(const std::vector<double>& hist);

struct ReliabilityReport {
  std::vector<double> cv_values;          // per video, in percent
  std::array<double, 3> thresholds{30.0, 40.0, 50.0};
  std::array<std::size_t, 3> counts{};    // videos with c_v <= threshold
  std::array<double, 3> fractions{};
};

/// Annotator-agreement statistics over the raw (pre-balancing) corpus.
ReliabilityReport reliability_report(const std::vector<RawVideoRecord>& records);

/// One video as seen by the correlation report; absent optionals drop the
/// video from that feature's row.
struct AnalysisVideo {
  std::string video_id;
  double effectiveness = 0.0;  // mode-aggregated label
  double mean_effectiveness = 0.0;
  int topic = 0;
  int sentiment = 0;
  double duration_seconds = 0.0;
  double exciting = 0.0;
  double language = 0.0;
  double funny = 0.0;
  double unique_sentiments = 0.0;  // distinct values among the 5 annotations
  std::optional<double> climax_count;
  std::optional<double> shot_boundaries;
  std::optional<double> flow_entropy;
  std::optional<double> audio_loudness;
  std::optional<double> action_length;
  std::optional<double> reason_length;
};

struct CorrelationRow {
  std::string feature;
  double pearson_r = 0.0;
  bool defined = false;  // false when variance vanished or n < 2
  std::size_t n = 0;
};

struct CorrelationReport {
  std::vector<CorrelationRow> rows;
};

/// Rows cover duration, exciting, language, funny, climax count, unique
/// annotated sentiments, shot boundary count, flow-bin entropy, action
/// length, audio and reason length, correlated against the aggregated
/// effectiveness label.
CorrelationReport correlation_report(const std::vector<AnalysisVideo>& videos);

/// Token counts of the statement halves around the literal word "because"
/// (first occurrence); a statement without it is all action. Returns averages
/// over the statements, or nullopt when the list is empty.
struct StatementLengths {
  double action = 0.0;
  double reason = 0.0;
};
std::optional<StatementLengths> statement_lengths(
    const std::vector<std::string>& statements);

enum class GroupBy { kTopic, kSentiment };

struct ExtremesRow {
  int group = 0;
  std::size_t count_full = 0;
  std::size_t count_top = 0;
  std::size_t count_bottom = 0;
  double share_full = 0.0;
  double share_top = 0.0;
  double share_bottom = 0.0;
  double lift_top = 0.0;     // share_top / share_full
  double lift_bottom = 0.0;  // share_bottom / share_full
};

struct ExtremesReport {
  GroupBy group_by = GroupBy::kTopic;
  std::size_t k = 0;
  std::vector<ExtremesRow> rows;  // every group present in the full dataset
};

/// Top-k / bottom-k by mean effectiveness (ties broken by video_id), shares
/// within each extreme set and lift against the full-corpus share. Throws
/// when k > N/2 or k == 0.
ExtremesReport extremes_distribution(const std::vector<AnalysisVideo>& videos,
                                     std::size_t k, GroupBy group_by);

// Stable CSV renderings (schemas documented in the README).
std::string correlation_csv(const CorrelationReport& report);
std::string reliability_csv(const ReliabilityReport& report);
std::string extremes_csv(const ExtremesReport& report,
                         const std::vector<std::string>& group_names = {});

}  // namespace adeff

#endif
