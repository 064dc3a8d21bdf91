#ifndef ADEFF_PIPELINE_HPP
#define ADEFF_PIPELINE_HPP

#include <optional>
#include <string>

#include "adeff/config.hpp"
#include "adeff/evaluation.hpp"

namespace adeff {

/// Exit policy shared by the subcommands: 0 clean run, 2 completed with
/// per-video warnings or recorded per-video errors; hard failures throw and
/// the CLI maps them to 1.
struct CommandResult {
  int exit_code = 0;
  std::size_t warnings = 0;
  std::size_t errors = 0;
};

/// Aggregates the raw records (clean_full.jsonl), balances the effectiveness
/// classes (clean_balanced.jsonl) and writes balance_report.json.
CommandResult cmd_clean(const Config& config);

/// Extracts every feature block per video into features/<video_id>.json plus
/// features_summary.json. Missing optional assets produce documented zero
/// blocks and a warning; unreadable frame data is a per-video error. Both
/// complete the run with exit code 2.
CommandResult cmd_features(const Config& config);

/// Correlations, reliability and extremes reports over the full
/// (pre-balancing) corpus.
CommandResult cmd_analyze(const Config& config);

/// Runs the multi-seed experiment for one task (or all three), writing the
/// accuracy table CSV, confusion JSONs and the per-seed models.
CommandResult cmd_train_eval(const Config& config,
                             std::optional<TaskKind> task = std::nullopt);

// Output locations under config.output_dir.
std::string clean_full_path(const Config& config);
std::string clean_balanced_path(const Config& config);
std::string features_dir(const Config& config);

}  // namespace adeff

#endif
