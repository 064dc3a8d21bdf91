#include "adeff/synthetic.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adeff/config.hpp"
#include "adeff/image.hpp"
#include "adeff/records.hpp"
#include "adeff/rng.hpp"

namespace adeff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Vertical stripes with an 8-pixel period; shifting the phase by 4 moves the
// pattern without changing the color histogram.
Image stripe_frame(int width, int height, int phase) {
  Image img = make_image(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool bright = ((x + phase) / 4) % 2 == 0;
      std::uint8_t* p = img.pixel(x, y);
      p[0] = p[1] = p[2] = bright ? 200 : 40;
    }
  }
  return img;
}

// Motion is confined to the first k pairs of the video; larger classes
// spread it over more pairs, which raises the flow-bin entropy.
int moving_pairs_for_class(int label) {
  static const int spread[5] = {2, 4, 8, 15, 30};
  return spread[label - 1];
}

const char* transcript_text(int label) {
  switch (label) {
    case 1:
      return "This is a terrible boring mess. Avoid this awful waste.";
    case 2:
      return "A bad deal. Not worth the price and rather dull.";
    case 3:
      return "A car drives on a road. People watch the screen.";
    case 4:
      return "A great deal on a nice car. Buy this one.";
    default:
      return "Wonderful amazing great offer! Buy now and enjoy the best ride.";
  }
}

const char* reason_adjectives(int label) {
  switch (label) {
    case 1:
      return "cheap";
    case 2:
      return "cheap enough";
    case 3:
      return "cheap enough overall";
    case 4:
      return "reliable fast and comfortable";
    default:
      return "reliable fast comfortable and truly special";
  }
}

std::string video_name(std::size_t index) {
  std::ostringstream os;
  os << "synth_" << std::setfill('0') << std::setw(4) << index;
  return os.str();
}

}  // namespace

std::string generate_corpus(const std::string& dir, const SynthOptions& options) {
  if (options.videos == 0 || options.videos % 5 != 0) {
    throw std::invalid_argument("generate_corpus: videos must be a positive multiple of 5");
  }
  if (options.frames < 2) {
    throw std::invalid_argument("generate_corpus: need at least 2 frames");
  }
  fs::create_directories(dir);
  const fs::path root(dir);
  const fs::path assets = root / "assets";
  fs::create_directories(assets);

  const std::size_t n = options.videos;
  std::mt19937_64 rng(options.seed);

  // True class round-robin, then permute the labels of a noise subset among
  // themselves so the class histogram is untouched.
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 5) + 1;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  shuffle(order, rng);
  const auto n_noisy = static_cast<std::size_t>(options.label_noise * static_cast<double>(n));
  std::vector<std::size_t> noisy(order.begin(), order.begin() + n_noisy);
  std::vector<int> pool;
  for (std::size_t i : noisy) pool.push_back(labels[i]);
  shuffle(pool, rng);
  for (std::size_t k = 0; k < noisy.size(); ++k) labels[noisy[k]] = pool[k];

  std::vector<RawVideoRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int truth = static_cast<int>(i % 5) + 1;  // drives the features
    const int label = labels[i];                    // drives the annotations
    const std::string name = video_name(i);
    const fs::path vdir = assets / name;
    const fs::path frames_dir = vdir / "frames";
    fs::create_directories(frames_dir);

    // Frames: phase shifts by 4 during the first k pairs, then the video
    // holds still.
    const int k = moving_pairs_for_class(truth);
    int phase = 0;
    for (int f = 0; f < options.frames; ++f) {
      std::ostringstream frame_name;
      frame_name << "frame_" << std::setfill('0') << std::setw(4) << f << ".ppm";
      write_ppm((frames_dir / frame_name.str()).string(),
                stripe_frame(options.frame_width, options.frame_height, phase));
      if (f < k) phase = (phase + 4) % 8;
    }

    // Transcript sampled upstream at stride 60.
    {
      json t = json::array();
      std::string text = transcript_text(truth);
      for (std::size_t rep = 0; rep < i % 3; ++rep) text += " extra";
      t.push_back({{"frame", 0}, {"text", text}});
      t.push_back({{"frame", 60}, {"text", std::string("Visit our store today.")}});
      std::ofstream out(vdir / "transcript.json");
      out << t.dump() << '\n';
    }

    // Detections: object/place identities and counts lean on the class;
    // audio amplitude scales with it; one climax per class step.
    {
      json d;
      std::vector<int> objects;
      for (int c = 0; c < 5 + 2 * truth; ++c) objects.push_back(truth - 1);
      objects.push_back(10 + static_cast<int>(i % 5));
      std::vector<int> places;
      for (int c = 0; c < 3; ++c) places.push_back(40 * (truth - 1) + static_cast<int>(i % 7));
      std::vector<int> expressions{static_cast<int>(i % kNumExpressions)};
      std::vector<int> emotions;
      for (int c = 0; c < 4; ++c) emotions.push_back((truth - 1) % kNumEmotions);
      std::vector<double> audio;
      for (int s = 0; s < 24; ++s) {
        const double amp = 0.05 + 0.1 * truth + 0.002 * static_cast<double>(i % 10);
        audio.push_back(s % 2 == 0 ? amp : -amp);
      }
      std::vector<double> climaxes;
      for (int c = 0; c < truth; ++c) climaxes.push_back(1.5 * (c + 1));
      d["objects"] = objects;
      d["places"] = places;
      d["expressions"] = expressions;
      d["emotions"] = emotions;
      d["audio"] = audio;
      d["climaxes"] = climaxes;
      std::ofstream out(vdir / "detections.json");
      out << d.dump() << '\n';
    }

    // Per-frame memorability scores.
    {
      std::ofstream out(vdir / "memorability.txt");
      for (int f = 0; f < options.frames; ++f) {
        const double score =
            0.1 + 0.15 * truth + 0.01 * static_cast<double>(f % 3);
        out << score << '\n';
      }
    }

    RawVideoRecord r;
    r.video_id = name;
    const int lower = std::max(1, label - 1);
    const int upper = std::min(5, label + 1);
    // Topic encodes the true class (it is a feature); the effectiveness
    // annotations carry the possibly permuted label.
    const int topics = (truth - 1) + 5 * static_cast<int>(i % 7);
    const int sentiment = static_cast<int>(i % kNumSentiments);
    for (int a = 0; a < kAnnotatorsPerVideo; ++a) {
      AnnotationSet set;
      set.effectiveness = a == 3 ? lower : (a == 4 ? upper : label);
      set.topic = topics;
      set.sentiment = a == 4 ? (sentiment + static_cast<int>(i % 2)) % kNumSentiments
                             : sentiment;
      set.exciting = truth >= 4 ? 1 : 0;
      set.funny = static_cast<int>(i % 2);
      set.language = i % 10 == 0 ? -1 : (i % 10 == 5 ? 0 : 1);
      r.ratings.push_back(set);
    }
    r.duration_seconds =
        4.0 + 3.0 * truth + 2.0 * static_cast<double>(i % 13) / 13.0;
    r.assets.frames = name + "/frames";
    r.assets.transcript = name + "/transcript.json";
    r.assets.detections = name + "/detections.json";
    r.assets.memorability = name + "/memorability.txt";
    r.statements.push_back(std::string("I should buy this product because it is ") +
                           reason_adjectives(truth) + ".");
    records.push_back(std::move(r));
  }

  const std::string raw_path = (root / "raw.jsonl").string();
  write_raw_records(raw_path, records);

  Config config;
  config.raw_records = raw_path;
  config.assets_root = assets.string();
  config.output_dir = (root / "out").string();
  config.extremes_k = std::min<std::size_t>(200, n / 4);
  save_config((root / "config.json").string(), config);
  return raw_path;
}

}  // namespace adeff
