#include <doctest.h>

#include <fstream>
#include <numeric>
#include <random>

#include "adeff/detection_features.hpp"
#include "testutil.hpp"

using namespace adeff;

namespace {

DetectionFile objects_only(const std::vector<int>& objects) {
  DetectionFile d;
  d.objects = objects;
  return d;
}

}  // namespace

TEST_CASE("compute_priors reproduces the worked example") {
  // 1000 objects, 800 of them label 0 ("person"), 200 label 1.
  DetectionFile bulk;
  for (int i = 0; i < 800; ++i) bulk.objects.push_back(0);
  for (int i = 0; i < 200; ++i) bulk.objects.push_back(1);
  const PriorTable priors = compute_priors({bulk});
  CHECK(priors.objects[0] == doctest::Approx(0.8));
  CHECK(priors.objects[1] == doctest::Approx(0.2));

  // single detection -> one-hot prior
  const PriorTable one = compute_priors({objects_only({7})});
  CHECK(one.objects[7] == doctest::Approx(1.0));
  CHECK(std::accumulate(one.objects.begin(), one.objects.end(), 0.0) ==
        doctest::Approx(1.0));

  // two labels detected equally -> 0.5 each
  const PriorTable even = compute_priors({objects_only({3, 9})});
  CHECK(even.objects[3] == doctest::Approx(0.5));
  CHECK(even.objects[9] == doctest::Approx(0.5));

  // empty family stays a zero vector
  CHECK(std::accumulate(even.places.begin(), even.places.end(), 0.0) == 0.0);
}

TEST_CASE("priors sum to one per non-empty family") {
  std::mt19937_64 rng(5);
  std::vector<DetectionFile> corpus;
  for (int v = 0; v < 12; ++v) {
    DetectionFile d;
    for (int k = 0; k < 20; ++k) {
      d.objects.push_back(static_cast<int>(rng() % kNumObjects));
      d.emotions.push_back(static_cast<int>(rng() % kNumEmotions));
    }
    d.places.push_back(static_cast<int>(rng() % kNumPlaces));
    corpus.push_back(std::move(d));
  }
  const PriorTable priors = compute_priors(corpus);
  CHECK(std::accumulate(priors.objects.begin(), priors.objects.end(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::accumulate(priors.places.begin(), priors.places.end(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::accumulate(priors.emotions.begin(), priors.emotions.end(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ratio_features reproduces 0.6 / 0.8 = 0.75") {
  DetectionFile bulk;
  for (int i = 0; i < 800; ++i) bulk.objects.push_back(0);
  for (int i = 0; i < 200; ++i) bulk.objects.push_back(1);
  const PriorTable priors = compute_priors({bulk});

  // video distribution: 0.6 person, 0.4 other
  const DetectionFile video = objects_only({0, 0, 0, 1, 1});
  const DetectionFeatureBlock block = ratio_features(video, priors);
  CHECK(block.objects_ratio[0] == doctest::Approx(0.75));
  CHECK(block.objects_ratio[1] == doctest::Approx(2.0));
}

TEST_CASE("ratio_features degenerate rules") {
  const PriorTable priors = compute_priors({objects_only({0, 1, 2, 3})});

  // distribution identical to the prior -> ratio 1 on the support
  const DetectionFeatureBlock same = ratio_features(objects_only({0, 1, 2, 3}), priors);
  for (int k = 0; k < 4; ++k) CHECK(same.objects_ratio[k] == doctest::Approx(1.0));

  // label absent from the video -> 0
  const DetectionFeatureBlock partial = ratio_features(objects_only({0}), priors);
  CHECK(partial.objects_ratio[1] == 0.0);

  // family with no detections in the video -> zero vector
  for (double v : partial.places_ratio) CHECK(v == 0.0);

  // climax count and audio loudness
  DetectionFile noisy;
  noisy.audio = {0.5, -0.5, 0.25, -0.25};
  noisy.climaxes = {1.0, 2.5, 9.0};
  const DetectionFeatureBlock nb = ratio_features(noisy, priors);
  CHECK(nb.audio_loudness == doctest::Approx(0.375));
  CHECK(nb.climax_count == 3);
  CHECK(audio_loudness({}) == 0.0);
  CHECK(audio_loudness({0.0, 0.0}) == 0.0);
}

TEST_CASE("ratios are invariant to scaling all detection counts") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> base;
    const int distinct = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < distinct; ++k) {
      const int label = static_cast<int>(rng() % kNumObjects);
      const int count = 1 + static_cast<int>(rng() % 5);
      for (int c = 0; c < count; ++c) base.push_back(label);
    }
    std::vector<int> scaled;
    const int factor = 2 + static_cast<int>(rng() % 4);
    for (int c = 0; c < factor; ++c) scaled.insert(scaled.end(), base.begin(), base.end());

    const PriorTable priors = compute_priors({objects_only(base), objects_only({1, 2})});
    const DetectionFeatureBlock a = ratio_features(objects_only(base), priors);
    const DetectionFeatureBlock b = ratio_features(objects_only(scaled), priors);
    for (int k = 0; k < kNumObjects; ++k) {
      CHECK(a.objects_ratio[k] == doctest::Approx(b.objects_ratio[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("detection file IO validates label ranges") {
  testutil::TempDir dir("detections");
  const std::string path = (dir.path() / "d.json").string();
  std::ofstream(path) << R"({"objects":[0,79],"places":[364],"expressions":[7],)"
                      << R"("emotions":[25],"audio":[0.25,-0.5],"climaxes":[3.5]})";
  const DetectionFile d = read_detections(path);
  CHECK(d.objects.size() == 2);
  CHECK(d.climaxes.size() == 1);

  const std::string bad = (dir.path() / "bad.json").string();
  std::ofstream(bad) << R"({"objects":[80]})";
  CHECK_THROWS_AS(read_detections(bad), std::invalid_argument);
}

TEST_CASE("vocabulary files map indices to names") {
  testutil::TempDir dir("vocab");
  const std::string path = (dir.path() / "objects.txt").string();
  std::ofstream(path) << "person\nbicycle\ncar\n";
  const std::vector<std::string> names = read_vocabulary(path);
  REQUIRE(names.size() == 3);
  CHECK(names[0] == "person");
  CHECK(names[2] == "car");
}
