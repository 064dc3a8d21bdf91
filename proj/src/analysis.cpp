#include "adeff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "adeff/text_features.hpp"
#include "adeff/util.hpp"

namespace adeff {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("pearson: length mismatch");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("pearson: need at least 2 points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("pearson: zero variance, correlation undefined");
  }
  return sxy / std::sqrt(sxx * syy);
}

double coefficient_of_variation(const std::vector<int>& ratings) {
  if (ratings.empty()) {
    throw std::invalid_argument("coefficient_of_variation: empty rating list");
  }
  const double n = static_cast<double>(ratings.size());
  double mean = 0.0;
  for (int r : ratings) mean += r;
  mean /= n;
  if (!(mean > 0.0)) {
    throw std::invalid_argument("coefficient_of_variation: mean must be > 0");
  }
  double var = 0.0;
  for (int r : ratings) {
    const double d = r - mean;
    var += d * d;
  }
  var /= n;  // population variance
  return std::sqrt(var) / mean * 100.0;
}

double flow_entropy(const std::vector<double>& hist) {
  double total = 0.0;
  for (double p : hist) {
    if (p < 0.0) {
      throw std::invalid_argument("flow_entropy: negative bin value");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("flow_entropy: bins do not sum to 1");
  }
  double h = 0.0;
  for (double p : hist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

ReliabilityReport reliability_report(const std::vector<RawVideoRecord>& records) {
  ReliabilityReport report;
  report.cv_values.reserve(records.size());
  for (const RawVideoRecord& r : records) {
    std::vector<int> ratings;
    for (const AnnotationSet& a : r.ratings) ratings.push_back(a.effectiveness);
    const double cv = coefficient_of_variation(ratings);
    report.cv_values.push_back(cv);
    for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
      if (cv <= report.thresholds[t]) ++report.counts[t];
    }
  }
  for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
    report.fractions[t] = records.empty()
                              ? 0.0
                              : static_cast<double>(report.counts[t]) /
                                    static_cast<double>(records.size());
  }
  return report;
}

namespace {

CorrelationRow make_row(const std::string& name,
                        const std::vector<AnalysisVideo>& videos,
                        const std::function<std::optional<double>(const AnalysisVideo&)>& get) {
  CorrelationRow row;
  row.feature = name;
  std::vector<double> x, y;
  for (const AnalysisVideo& v : videos) {
    const std::optional<double> value = get(v);
    if (!value) continue;
    x.push_back(*value);
    y.push_back(v.effectiveness);
  }
  row.n = x.size();
  try {
    row.pearson_r = pearson(x, y);
    row.defined = true;
  } catch (const std::invalid_argument&) {
    row.defined = false;
  }
  return row;
}

}  // namespace

CorrelationReport correlation_report(const std::vector<AnalysisVideo>& videos) {
  using V = AnalysisVideo;
  auto opt = [](double v) { return std::optional<double>(v); };
  CorrelationReport report;
  report.rows.push_back(make_row("duration", videos, [&](const V& v) { return opt(v.duration_seconds); }));
  report.rows.push_back(make_row("exciting", videos, [&](const V& v) { return opt(v.exciting); }));
  report.rows.push_back(make_row("language", videos, [&](const V& v) { return opt(v.language); }));
  report.rows.push_back(make_row("funny", videos, [&](const V& v) { return opt(v.funny); }));
  report.rows.push_back(make_row("climax_count", videos, [](const V& v) { return v.climax_count; }));
  report.rows.push_back(make_row("unique_annotated_sentiments", videos,
                                 [&](const V& v) { return opt(v.unique_sentiments); }));
  report.rows.push_back(make_row("shot_boundary_count", videos,
                                 [](const V& v) { return v.shot_boundaries; }));
  report.rows.push_back(make_row("flow_bin_entropy", videos,
                                 [](const V& v) { return v.flow_entropy; }));
  report.rows.push_back(make_row("action_response_length", videos,
                                 [](const V& v) { return v.action_length; }));
  report.rows.push_back(make_row("audio_signal", videos,
                                 [](const V& v) { return v.audio_loudness; }));
  report.rows.push_back(make_row("reason_response_length", videos,
                                 [](const V& v) { return v.reason_length; }));
  return report;
}

std::optional<StatementLengths> statement_lengths(
    const std::vector<std::string>& statements) {
  if (statements.empty()) return std::nullopt;
  double action_sum = 0.0, reason_sum = 0.0;
  for (const std::string& s : statements) {
    const std::vector<std::string> tokens = tokenize(s);
    auto split = std::find(tokens.begin(), tokens.end(), "because");
    action_sum += static_cast<double>(std::distance(tokens.begin(), split));
    reason_sum += split == tokens.end()
                      ? 0.0
                      : static_cast<double>(std::distance(split + 1, tokens.end()));
  }
  StatementLengths lengths;
  lengths.action = action_sum / static_cast<double>(statements.size());
  lengths.reason = reason_sum / static_cast<double>(statements.size());
  return lengths;
}

ExtremesReport extremes_distribution(const std::vector<AnalysisVideo>& videos,
                                     std::size_t k, GroupBy group_by) {
  if (k == 0 || 2 * k > videos.size()) {
    std::ostringstream os;
    os << "extremes_distribution: k = " << k << " must satisfy 0 < k <= N/2 (N = "
       << videos.size() << ")";
    throw std::invalid_argument(os.str());
  }
  auto group_of = [group_by](const AnalysisVideo& v) {
    return group_by == GroupBy::kTopic ? v.topic : v.sentiment;
  };

  std::vector<const AnalysisVideo*> sorted;
  sorted.reserve(videos.size());
  for (const AnalysisVideo& v : videos) sorted.push_back(&v);
  std::sort(sorted.begin(), sorted.end(),
            [](const AnalysisVideo* a, const AnalysisVideo* b) {
              if (a->mean_effectiveness != b->mean_effectiveness)
                return a->mean_effectiveness > b->mean_effectiveness;
              return a->video_id < b->video_id;
            });

  std::map<int, ExtremesRow> rows;
  for (const AnalysisVideo& v : videos) {
    ExtremesRow& row = rows[group_of(v)];
    row.group = group_of(v);
    ++row.count_full;
  }
  for (std::size_t i = 0; i < k; ++i) ++rows[group_of(*sorted[i])].count_top;
  for (std::size_t i = 0; i < k; ++i) {
    ++rows[group_of(*sorted[sorted.size() - 1 - i])].count_bottom;
  }

  ExtremesReport report;
  report.group_by = group_by;
  report.k = k;
  const double n = static_cast<double>(videos.size());
  const double kk = static_cast<double>(k);
  for (auto& [group, row] : rows) {
    row.share_full = static_cast<double>(row.count_full) / n;
    row.share_top = static_cast<double>(row.count_top) / kk;
    row.share_bottom = static_cast<double>(row.count_bottom) / kk;
    row.lift_top = row.share_top / row.share_full;
    row.lift_bottom = row.share_bottom / row.share_full;
    report.rows.push_back(row);
  }
  return report;
}

std::string correlation_csv(const CorrelationReport& report) {
  std::string out = "feature,pearson_r,n\n";
  for (const CorrelationRow& row : report.rows) {
    out += row.feature;
    out += ',';
    out += row.defined ? format_double(row.pearson_r) : "nan";
    out += ',';
    out += std::to_string(row.n);
    out += '\n';
  }
  return out;
}

std::string reliability_csv(const ReliabilityReport& report) {
  std::string out = "threshold_percent,count,fraction\n";
  for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
    out += format_double(report.thresholds[t]);
    out += ',';
    out += std::to_string(report.counts[t]);
    out += ',';
    out += format_double(report.fractions[t]);
    out += '\n';
  }
  return out;
}

std::string extremes_csv(const ExtremesReport& report,
                         const std::vector<std::string>& group_names) {
  const char* family = report.group_by == GroupBy::kTopic ? "topic" : "sentiment";
  std::string out =
      "group,name,count_full,share_full,share_top,share_bottom,lift_top,lift_bottom\n";
  for (const ExtremesRow& row : report.rows) {
    const std::string name =
        static_cast<std::size_t>(row.group) < group_names.size()
            ? group_names[row.group]
            : std::string(family) + "_" + std::to_string(row.group);
    out += std::to_string(row.group);
    out += ',';
    out += name;
    out += ',';
    out += std::to_string(row.count_full);
    out += ',';
    out += format_double(row.share_full);
    out += ',';
    out += format_double(row.share_top);
    out += ',';
    out += format_double(row.share_bottom);
    out += ',';
    out += format_double(row.lift_top);
    out += ',';
    out += format_double(row.lift_bottom);
    out += '\n';
  }
  return out;
}

}  // namespace adeff
