#include <doctest.h>

#include <cmath>
#include <random>

#include "adeff/analysis.hpp"
#include "testutil.hpp"

using namespace adeff;

TEST_CASE("pearson basics") {
  CHECK(pearson({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
  CHECK(pearson({1, 2, 3}, {-1, -2, -3}) == doctest::Approx(-1.0));
  // hand computation: Sxy = 5, Sxx = 2, Syy = 114/9 -> r = 15 / sqrt(228)
  CHECK(pearson({1, 2, 3}, {2, 4, 7}) ==
        doctest::Approx(15.0 / std::sqrt(228.0)).epsilon(1e-12));
  CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({1}, {2}), std::invalid_argument);
}

TEST_CASE("pearson is invariant under positive affine maps and flips sign") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x, y;
    for (int i = 0; i < 12; ++i) {
      x.push_back(u(rng));
      y.push_back(u(rng) + 0.5 * x.back());
    }
    const double r = pearson(x, y);
    std::vector<double> ax;
    for (double v : x) ax.push_back(3.5 * v + 11.0);
    CHECK(pearson(ax, y) == doctest::Approx(r).epsilon(1e-9));
    std::vector<double> nx;
    for (double v : x) nx.push_back(-2.0 * v);
    CHECK(pearson(nx, y) == doctest::Approx(-r).epsilon(1e-9));
  }
}

TEST_CASE("coefficient_of_variation in percent") {
  CHECK(coefficient_of_variation({4, 4, 4, 4, 4}) == doctest::Approx(0.0));
  // sigma_pop = sqrt(0.8), mu = 4
  CHECK(coefficient_of_variation({5, 3, 3, 4, 5}) ==
        doctest::Approx(100.0 * std::sqrt(0.8) / 4.0).epsilon(1e-12));
  // generalized length: sigma_pop = 1, mu = 3
  CHECK(coefficient_of_variation({2, 4}) == doctest::Approx(100.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(coefficient_of_variation({}), std::invalid_argument);
}

TEST_CASE("reliability_report thresholds at 30/40/50 percent") {
  std::vector<RawVideoRecord> unanimous;
  for (int i = 0; i < 4; ++i) {
    unanimous.push_back(testutil::unanimous_record("u" + std::to_string(i), 3, 0, 0, 9.0));
  }
  const ReliabilityReport all_agree = reliability_report(unanimous);
  for (double f : all_agree.fractions) CHECK(f == doctest::Approx(1.0));

  // the worked rating set has c_v ~ 22.36%, under all three thresholds
  RawVideoRecord mixed = testutil::unanimous_record("m", 5, 0, 0, 9.0);
  const int ratings[5] = {5, 3, 3, 4, 5};
  for (int a = 0; a < 5; ++a) mixed.ratings[a].effectiveness = ratings[a];
  const ReliabilityReport single = reliability_report({mixed});
  CHECK(single.counts[0] == 1);
  CHECK(single.counts[1] == 1);
  CHECK(single.counts[2] == 1);

  std::vector<RawVideoRecord> both = unanimous;
  both.push_back(mixed);
  const ReliabilityReport pair = reliability_report(both);
  for (double f : pair.fractions) CHECK(f == doctest::Approx(1.0));

  // fractions never decrease as the threshold loosens
  RawVideoRecord wild = testutil::unanimous_record("w", 1, 0, 0, 9.0);
  const int spread[5] = {1, 1, 5, 5, 3};
  for (int a = 0; a < 5; ++a) wild.ratings[a].effectiveness = spread[a];
  both.push_back(wild);
  const ReliabilityReport r = reliability_report(both);
  CHECK(r.fractions[0] <= r.fractions[1]);
  CHECK(r.fractions[1] <= r.fractions[2]);
}

TEST_CASE("flow_entropy") {
  std::vector<double> onehot(30, 0.0);
  onehot[4] = 1.0;
  CHECK(flow_entropy(onehot) == doctest::Approx(0.0));

  CHECK(flow_entropy(std::vector<double>(30, 1.0 / 30.0)) ==
        doctest::Approx(std::log(30.0)).epsilon(1e-12));

  std::vector<double> two(30, 0.0);
  two[0] = two[17] = 0.5;
  CHECK(flow_entropy(two) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(flow_entropy({0.5, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(flow_entropy({-0.1, 1.1}), std::invalid_argument);
}

TEST_CASE("flow_entropy is permutation invariant and maximal at uniform") {
  std::mt19937_64 rng(3);
  std::vector<double> p(30);
  double total = 0.0;
  for (double& v : p) {
    v = static_cast<double>(rng() % 1000 + 1);
    total += v;
  }
  for (double& v : p) v /= total;
  const double h = flow_entropy(p);
  std::vector<double> q = p;
  std::reverse(q.begin(), q.end());
  CHECK(flow_entropy(q) == doctest::Approx(h).epsilon(1e-12));
  CHECK(h <= std::log(30.0) + 1e-12);
}

TEST_CASE("statement_lengths splits on the literal word because") {
  const auto lengths =
      statement_lengths({"I should buy this car because it is pet-friendly"});
  REQUIRE(lengths.has_value());
  CHECK(lengths->action == doctest::Approx(5.0));  // i should buy this car
  CHECK(lengths->reason == doctest::Approx(4.0));  // it is pet friendly

  const auto no_because = statement_lengths({"Just buy it"});
  REQUIRE(no_because.has_value());
  CHECK(no_because->action == doctest::Approx(3.0));
  CHECK(no_because->reason == doctest::Approx(0.0));

  CHECK_FALSE(statement_lengths({}).has_value());
}

namespace {

std::vector<AnalysisVideo> grid_videos(int n) {
  std::vector<AnalysisVideo> videos;
  for (int i = 0; i < n; ++i) {
    AnalysisVideo v;
    v.video_id = "v" + std::to_string(1000 + i);
    v.effectiveness = (i % 5) + 1;
    v.mean_effectiveness = v.effectiveness + 0.01 * (i % 7);
    v.topic = i % 4;
    v.sentiment = i % 3;
    v.duration_seconds = 10.0 + v.effectiveness;  // perfectly correlated
    v.exciting = i % 2;
    v.language = 1;
    v.funny = 0;
    v.unique_sentiments = 1 + (i % 2);
    videos.push_back(v);
  }
  return videos;
}

}  // namespace

TEST_CASE("correlation_report rows and n-counting") {
  auto videos = grid_videos(40);
  // only half the corpus has climax data
  for (int i = 0; i < 20; ++i) videos[i].climax_count = static_cast<double>(i % 6);
  const CorrelationReport report = correlation_report(videos);
  REQUIRE(report.rows.size() == 11);
  CHECK(report.rows[0].feature == "duration");
  CHECK(report.rows[0].defined);
  CHECK(report.rows[0].pearson_r == doctest::Approx(1.0));
  CHECK(report.rows[0].n == 40);

  const CorrelationRow& climax = report.rows[4];
  CHECK(climax.feature == "climax_count");
  CHECK(climax.n == 20);

  // language has zero variance -> undefined
  const CorrelationRow& language = report.rows[2];
  CHECK_FALSE(language.defined);

  // rows with no data at all stay undefined with n = 0
  const CorrelationRow& action = report.rows[8];
  CHECK(action.n == 0);
  CHECK_FALSE(action.defined);

  const std::string csv = correlation_csv(report);
  CHECK(csv.find("feature,pearson_r,n") == 0);
  CHECK(csv.find("language,nan,40") != std::string::npos);
}

TEST_CASE("extremes_distribution shares and lifts") {
  // 20 videos, topic t fills 5% of the corpus and 5% of the top-k
  std::vector<AnalysisVideo> videos;
  for (int i = 0; i < 20; ++i) {
    AnalysisVideo v;
    v.video_id = "v" + std::to_string(10 + i);
    v.topic = i == 0 ? 7 : (i % 2 ? 1 : 2);  // topic 7 exactly once
    v.sentiment = 0;
    v.mean_effectiveness = i == 0 ? 5.0 : (i % 2 ? 4.0 : 1.0);
    videos.push_back(v);
  }
  const ExtremesReport report = extremes_distribution(videos, 10, GroupBy::kTopic);
  // topic 7: share_full = 1/20, share_top = 1/10 -> lift 2; absent from bottom
  bool saw7 = false;
  for (const ExtremesRow& row : report.rows) {
    if (row.group == 7) {
      saw7 = true;
      CHECK(row.share_full == doctest::Approx(0.05));
      CHECK(row.share_top == doctest::Approx(0.1));
      CHECK(row.lift_top == doctest::Approx(2.0));
      CHECK(row.lift_bottom == doctest::Approx(0.0));
    }
  }
  CHECK(saw7);

  // weighted by full shares, lifts average to exactly 1 over each extreme set
  double weighted_top = 0.0, weighted_bottom = 0.0;
  for (const ExtremesRow& row : report.rows) {
    weighted_top += row.share_full * row.lift_top;
    weighted_bottom += row.share_full * row.lift_bottom;
  }
  CHECK(weighted_top == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weighted_bottom == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(extremes_distribution(videos, 11, GroupBy::kTopic),
                  std::invalid_argument);
  CHECK_THROWS_AS(extremes_distribution(videos, 0, GroupBy::kTopic),
                  std::invalid_argument);
}

TEST_CASE("uniform single-topic corpus has lift 1") {
  std::vector<AnalysisVideo> videos;
  for (int i = 0; i < 12; ++i) {
    AnalysisVideo v;
    v.video_id = "v" + std::to_string(i);
    v.topic = 3;
    v.mean_effectiveness = static_cast<double>(i);
    videos.push_back(v);
  }
  const ExtremesReport report = extremes_distribution(videos, 4, GroupBy::kTopic);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].lift_top == doctest::Approx(1.0));
  CHECK(report.rows[0].lift_bottom == doctest::Approx(1.0));
}

TEST_CASE("extremes ranking is deterministic under ties") {
  std::vector<AnalysisVideo> videos;
  for (int i = 0; i < 6; ++i) {
    AnalysisVideo v;
    v.video_id = std::string("v") + static_cast<char>('a' + i);
    v.topic = i < 3 ? 0 : 1;
    v.mean_effectiveness = 2.0;  // all tied: video_id decides
    videos.push_back(v);
  }
  const ExtremesReport a = extremes_distribution(videos, 3, GroupBy::kTopic);
  const ExtremesReport b = extremes_distribution(videos, 3, GroupBy::kTopic);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].count_top == b.rows[i].count_top);
  }
  // ties by id: va, vb, vc are the top-3, all topic 0
  CHECK(a.rows[0].group == 0);
  CHECK(a.rows[0].count_top == 3);
}
