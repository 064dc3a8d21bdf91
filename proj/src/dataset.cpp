#include "adeff/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "adeff/rng.hpp"

namespace adeff {

int aggregate_mode(const std::vector<int>& values) {
  if (values.empty()) {
    throw std::invalid_argument("aggregate_mode: empty value list");
  }
  std::map<int, int> counts;
  for (int v : values) ++counts[v];
  // std::map iterates keys in ascending order, so the first key with maximal
  // count is the smallest one -- the tie rule falls out of the iteration.
  int best_value = counts.begin()->first;
  int best_count = 0;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {
      best_value = value;
      best_count = count;
    }
  }
  return best_value;
}

CleanVideoRecord aggregate_record(const RawVideoRecord& raw) {
  validate(raw);
  std::vector<int> eff, top, sen, exc, fun, lan;
  for (const AnnotationSet& a : raw.ratings) {
    eff.push_back(a.effectiveness);
    top.push_back(a.topic);
    sen.push_back(a.sentiment);
    exc.push_back(a.exciting);
    fun.push_back(a.funny);
    lan.push_back(a.language);
  }
  CleanVideoRecord c;
  c.video_id = raw.video_id;
  c.effectiveness = aggregate_mode(eff);
  c.topic = aggregate_mode(top);
  c.sentiment = aggregate_mode(sen);
  c.exciting = aggregate_mode(exc);
  c.funny = aggregate_mode(fun);
  c.language = aggregate_mode(lan);
  c.duration_seconds = raw.duration_seconds;
  return c;
}

std::map<int, std::size_t> class_histogram(
    const std::vector<CleanVideoRecord>& records) {
  std::map<int, std::size_t> hist;
  for (int c = 1; c <= kNumEffectiveness; ++c) hist[c] = 0;
  for (const CleanVideoRecord& r : records) ++hist[r.effectiveness];
  return hist;
}

std::vector<CleanVideoRecord> balance_classes(
    const std::vector<CleanVideoRecord>& records, std::uint64_t seed) {
  std::map<int, std::vector<CleanVideoRecord>> by_class;
  for (const CleanVideoRecord& r : records) by_class[r.effectiveness].push_back(r);

  std::size_t min_count = 0;
  bool first = true;
  for (int c = 1; c <= kNumEffectiveness; ++c) {
    auto it = by_class.find(c);
    const std::size_t n = it == by_class.end() ? 0 : it->second.size();
    if (n == 0) {
      std::ostringstream os;
      os << "balance_classes: effectiveness class " << c << " has no records";
      throw std::invalid_argument(os.str());
    }
    if (first || n < min_count) min_count = n;
    first = false;
  }

  std::mt19937_64 rng(seed);
  std::vector<CleanVideoRecord> out;
  out.reserve(min_count * kNumEffectiveness);
  for (int c = 1; c <= kNumEffectiveness; ++c) {
    std::vector<CleanVideoRecord>& group = by_class[c];
    // Canonical pre-shuffle order makes the draw independent of input order.
    std::sort(group.begin(), group.end(),
              [](const CleanVideoRecord& a, const CleanVideoRecord& b) {
                return a.video_id < b.video_id;
              });
    shuffle(group, rng);
    out.insert(out.end(), group.begin(), group.begin() + min_count);
  }
  std::sort(out.begin(), out.end(),
            [](const CleanVideoRecord& a, const CleanVideoRecord& b) {
              if (a.effectiveness != b.effectiveness)
                return a.effectiveness < b.effectiveness;
              return a.video_id < b.video_id;
            });
  return out;
}

DatasetSplit split_dataset(const std::vector<std::string>& video_ids,
                           double fraction, std::uint64_t seed) {
  if (video_ids.size() < 2) {
    throw std::invalid_argument("split_dataset: need at least 2 records");
  }
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("split_dataset: fraction must be in (0, 1)");
  }
  std::vector<std::string> ids = video_ids;
  std::mt19937_64 rng(seed);
  shuffle(ids, rng);
  const auto n_train = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(ids.size())));
  DatasetSplit split;
  split.seed = seed;
  split.train.assign(ids.begin(), ids.begin() + n_train);
  split.test.assign(ids.begin() + n_train, ids.end());
  return split;
}

}  // namespace adeff
