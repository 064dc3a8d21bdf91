#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "adeff/dataset.hpp"
#include "adeff/records.hpp"
#include "testutil.hpp"

using namespace adeff;

namespace {

// Exhaustive-count oracle: scan candidate values in ascending order, keep the
// first with maximal count.
int mode_oracle(const std::vector<int>& values) {
  std::map<int, int> counts;
  for (int v : values) ++counts[v];
  int best = 0, best_count = -1;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  }
  return best;
}

std::vector<CleanVideoRecord> records_with_counts(const std::vector<std::size_t>& counts) {
  std::vector<CleanVideoRecord> records;
  int serial = 0;
  for (std::size_t cls = 0; cls < counts.size(); ++cls) {
    for (std::size_t i = 0; i < counts[cls]; ++i) {
      CleanVideoRecord r;
      char buf[16];
      std::snprintf(buf, sizeof(buf), "v%05d", serial++);
      r.video_id = buf;
      r.effectiveness = static_cast<int>(cls) + 1;
      r.duration_seconds = 10.0;
      records.push_back(r);
    }
  }
  return records;
}

}  // namespace

TEST_CASE("aggregate_mode resolves ties to the lowest value") {
  CHECK(aggregate_mode({5, 3, 3, 4, 5}) == 3);
  CHECK(aggregate_mode({2, 2, 2, 2, 2}) == 2);
  CHECK(aggregate_mode({1, 2, 3, 4, 5}) == 1);
  // language takes negative values; lowest means numerically lowest
  CHECK(aggregate_mode({-1, 0, 1, 1, -1}) == -1);
  CHECK_THROWS_AS(aggregate_mode({}), std::invalid_argument);
}

TEST_CASE("aggregate_mode matches the counting oracle on all 5-tuples over {1..3}") {
  std::vector<int> t(5);
  for (t[0] = 1; t[0] <= 3; ++t[0])
    for (t[1] = 1; t[1] <= 3; ++t[1])
      for (t[2] = 1; t[2] <= 3; ++t[2])
        for (t[3] = 1; t[3] <= 3; ++t[3])
          for (t[4] = 1; t[4] <= 3; ++t[4]) CHECK(aggregate_mode(t) == mode_oracle(t));
}

TEST_CASE("aggregate_record applies the mode to every label") {
  RawVideoRecord raw = testutil::unanimous_record("v1", 4, 7, 3, 30.0);
  raw.ratings[0].topic = 9;
  raw.ratings[1].topic = 9;
  raw.ratings[2].topic = 9;
  raw.ratings[3].sentiment = 5;
  const CleanVideoRecord clean = aggregate_record(raw);
  CHECK(clean.effectiveness == 4);
  CHECK(clean.topic == 9);
  CHECK(clean.sentiment == 3);
  CHECK(clean.exciting == 1);
  CHECK(clean.duration_seconds == 30.0);
}

TEST_CASE("raw record validation") {
  RawVideoRecord r = testutil::unanimous_record("v1", 3, 0, 0, 12.0);
  r.ratings.pop_back();
  CHECK_THROWS_AS(validate(r), std::invalid_argument);

  RawVideoRecord zero_duration = testutil::unanimous_record("v2", 3, 0, 0, 12.0);
  zero_duration.duration_seconds = 0.0;
  CHECK_THROWS_AS(validate(zero_duration), std::invalid_argument);

  RawVideoRecord bad_topic = testutil::unanimous_record("v3", 3, 0, 0, 12.0);
  bad_topic.ratings[2].topic = kNumTopics;
  CHECK_THROWS_AS(validate(bad_topic), std::invalid_argument);
}

TEST_CASE("balance_classes reproduces the paper-shaped counts") {
  const auto records = records_with_counts({193, 261, 1319, 426, 1278});
  const auto balanced = balance_classes(records, 11);
  CHECK(balanced.size() == 965);
  const auto hist = class_histogram(balanced);
  for (int c = 1; c <= 5; ++c) CHECK(hist.at(c) == 193);

  // deterministic per seed, different across seeds
  const auto again = balance_classes(records, 11);
  REQUIRE(again.size() == balanced.size());
  for (std::size_t i = 0; i < balanced.size(); ++i) {
    CHECK(again[i].video_id == balanced[i].video_id);
  }
  const auto other = balance_classes(records, 12);
  bool any_diff = false;
  for (std::size_t i = 0; i < balanced.size(); ++i) {
    if (other[i].video_id != balanced[i].video_id) any_diff = true;
  }
  CHECK(any_diff);

  // every output record existed in the input
  std::set<std::string> input_ids;
  for (const auto& r : records) input_ids.insert(r.video_id);
  for (const auto& r : balanced) CHECK(input_ids.count(r.video_id) == 1);
}

TEST_CASE("balance_classes keeps an already balanced input") {
  const auto records = records_with_counts({4, 4, 4, 4, 4});
  const auto balanced = balance_classes(records, 99);
  REQUIRE(balanced.size() == records.size());
  std::multiset<std::string> in_ids, out_ids;
  for (const auto& r : records) in_ids.insert(r.video_id);
  for (const auto& r : balanced) out_ids.insert(r.video_id);
  CHECK(in_ids == out_ids);

  const auto tiny = records_with_counts({2, 2, 2, 2, 2});
  CHECK(balance_classes(tiny, 123).size() == 10);
}

TEST_CASE("balance_classes names the missing class") {
  auto records = records_with_counts({3, 3, 0, 3, 3});
  try {
    balance_classes(records, 1);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("class 3") != std::string::npos);
  }
}

TEST_CASE("balance_classes output order is sorted by class then id") {
  const auto records = records_with_counts({5, 3, 4, 3, 6});
  const auto balanced = balance_classes(records, 5);
  for (std::size_t i = 1; i < balanced.size(); ++i) {
    const bool ordered =
        balanced[i - 1].effectiveness < balanced[i].effectiveness ||
        (balanced[i - 1].effectiveness == balanced[i].effectiveness &&
         balanced[i - 1].video_id < balanced[i].video_id);
    CHECK(ordered);
  }
}

TEST_CASE("split_dataset honors the paper-sized cut") {
  std::vector<std::string> ids;
  for (int i = 0; i < 965; ++i) ids.push_back("v" + std::to_string(i));
  const DatasetSplit split = split_dataset(ids, 0.8, 17);
  CHECK(split.train.size() == 772);
  CHECK(split.test.size() == 193);

  // exact partition
  std::set<std::string> seen;
  for (const auto& id : split.train) seen.insert(id);
  for (const auto& id : split.test) seen.insert(id);
  CHECK(seen.size() == ids.size());

  // determinism
  const DatasetSplit again = split_dataset(ids, 0.8, 17);
  CHECK(again.train == split.train);
  CHECK(again.test == split.test);
}

TEST_CASE("split_dataset edge cases") {
  const DatasetSplit tiny = split_dataset({"a", "b"}, 0.5, 3);
  CHECK(tiny.train.size() == 1);
  CHECK(tiny.test.size() == 1);
  CHECK_THROWS_AS(split_dataset({"a"}, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset({"a", "b"}, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset({"a", "b"}, 1.0, 1), std::invalid_argument);
}

TEST_CASE("raw record JSONL round trip and line-numbered errors") {
  testutil::TempDir dir("records");
  std::vector<RawVideoRecord> records;
  RawVideoRecord r = testutil::unanimous_record("vid_a", 4, 2, 3, 21.5);
  r.assets.frames = "vid_a/frames";
  r.statements.push_back("I should buy this because it is cheap");
  records.push_back(r);
  records.push_back(testutil::unanimous_record("vid_b", 2, 1, 0, 9.0));

  const std::string path = (dir.path() / "raw.jsonl").string();
  write_raw_records(path, records);
  const auto loaded = read_raw_records(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].video_id == "vid_a");
  CHECK(loaded[0].assets.frames.value() == "vid_a/frames");
  CHECK(loaded[0].statements.size() == 1);
  CHECK_FALSE(loaded[1].assets.frames.has_value());

  // a record with 4 annotators fails, citing its line
  std::ofstream out(path, std::ios::app);
  out << R"({"video_id":"bad","ratings":[{"effectiveness":1,"topic":0,"sentiment":0,)"
      << R"("exciting":0,"funny":0,"language":0}],"duration_seconds":5.0})" << "\n";
  out.close();
  try {
    read_raw_records(path);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
}
