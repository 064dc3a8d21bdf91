#ifndef ADEFF_SYNTHETIC_HPP
#define ADEFF_SYNTHETIC_HPP

#include <cstdint>
#include <string>

namespace adeff {

/// Synthetic corpus with a planted signal: each video's true class drives its
/// topic group, duration band, flow-bin spread (and hence flow entropy),
/// transcript wording, detections, memorability and statements. A seeded
/// fraction of videos then has its labels permuted among themselves, which
/// injects label noise while preserving exact class balance.
struct SynthOptions {
  std::size_t videos = 965;  // multiple of 5
  std::uint64_t seed = 7;
  double label_noise = 0.2;
  int frame_width = 32;
  int frame_height = 32;
  int frames = 31;  // 30 consecutive-frame pairs
};

/// Writes raw.jsonl, per-video assets and a ready-to-run config.json into
/// dir. Returns the path of the raw records file.
std::string generate_corpus(const std::string& dir, const SynthOptions& options);

}  // namespace adeff

#endif
