#ifndef ADEFF_DATASET_HPP
#define ADEFF_DATASET_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "adeff/records.hpp"

namespace adeff {

/// Most frequent value; equally frequent values resolve to the smallest.
/// Throws std::invalid_argument on an empty list.
int aggregate_mode(const std::vector<int>& values);

/// Collapses the five annotation sets of a raw record into clean labels.
CleanVideoRecord aggregate_record(const RawVideoRecord& raw);

/// Class counts keyed by effectiveness value 1..5.
std::map<int, std::size_t> class_histogram(
    const std::vector<CleanVideoRecord>& records);

/// Undersamples every effectiveness class to the size of the rarest one.
/// Sampling is without replacement and deterministic per seed; the output is
/// sorted by (effectiveness, video_id). Throws when a class 1..5 is absent.
std::vector<CleanVideoRecord> balance_classes(
    const std::vector<CleanVideoRecord>& records, std::uint64_t seed);

/// Shuffles ids and cuts at round(fraction * N). Throws when N < 2 or the
/// fraction is outside (0, 1).
DatasetSplit split_dataset(const std::vector<std::string>& video_ids,
                           double fraction, std::uint64_t seed);

}  // namespace adeff

#endif
