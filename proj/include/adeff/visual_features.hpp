#ifndef ADEFF_VISUAL_FEATURES_HPP
#define ADEFF_VISUAL_FEATURES_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "adeff/image.hpp"

namespace adeff {

inline constexpr int kFlowBins = 30;

/// Tunables for the frame-derived features. Defaults match the shipped
/// configuration; every value can be overridden from the config file.
struct VisualParams {
  int flow_block_size = 16;
  int flow_search_radius = 8;
  double shot_threshold = 0.4;
  int hist_bins_per_channel = 8;
};

struct VisualFeatureBlock {
  std::array<double, 3> avg_hue{};     // per-channel means, [0,255]
  std::array<double, 3> median_hue{};  // per-channel lower medians
  double avg_intensity = 0.0;
  double avg_intensity_mid30 = 0.0;
  double avg_intensity_mid60 = 0.0;
  int shot_boundary_count = 0;
  std::array<double, kFlowBins> flow_hist{};
  double avg_memorability = 0.0;
  double duration_seconds = 0.0;
};

/// Rec.601 luma of one pixel.
inline double grayscale(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

/// Per-channel mean over all pixels of all frames.
std::array<double, 3> average_hue(const FrameSequence& frames);

/// Per-channel median over all pixels of all frames; even counts take the
/// lower median.
std::array<double, 3> median_hue(const FrameSequence& frames);

/// Mean grayscale over the centered crop. Crop width = round(f*W), height =
/// round(f*H), offsets floor((W-w)/2), floor((H-h)/2). Throws when the crop
/// rounds to zero pixels.
double average_intensity(const FrameSequence& frames, double crop_fraction);

/// Counts consecutive-frame pairs whose L1 histogram distance exceeds the
/// threshold (strictly). Histograms are joint RGB with bins_per_channel^3
/// bins, L1-normalized per frame. A single frame has zero boundaries.
int shot_boundaries(const FrameSequence& frames, double threshold,
                    int bins_per_channel = 8);

/// Average block-matching motion magnitude per consecutive frame pair.
/// Exposed separately so the histogram binning can be tested on raw
/// magnitudes.
std::vector<double> flow_magnitudes(const FrameSequence& frames,
                                    int block_size, int search_radius);

/// Partitions P pair magnitudes into 30 contiguous bins (first P mod 30 bins
/// hold one extra pair), sums per bin and L1-normalizes. A zero-flow video
/// yields the uniform vector.
std::array<double, kFlowBins> bin_flow(const std::vector<double>& magnitudes);

/// bin_flow(flow_magnitudes(...)). Requires at least two frames.
std::array<double, kFlowBins> optical_flow_hist(
    const FrameSequence& frames, const VisualParams& params = VisualParams{});

/// Arithmetic mean of the precomputed per-frame scores; each must lie in
/// [0,1].
double average_memorability(const std::vector<double>& scores);

/// All frame-derived features in one pass over the sequence.
VisualFeatureBlock visual_block(const FrameSequence& frames,
                                const std::vector<double>& memorability,
                                double duration_seconds,
                                const VisualParams& params = VisualParams{});

}  // namespace adeff

#endif
