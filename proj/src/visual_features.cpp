#include "adeff/visual_features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adeff {

namespace {

void require_frames(const FrameSequence& seq, std::size_t min_count,
                    const char* op) {
  if (seq.frames.size() < min_count) {
    throw std::invalid_argument(std::string(op) + ": needs at least " +
                                std::to_string(min_count) + " frame(s)");
  }
}

}  // namespace

std::array<double, 3> average_hue(const FrameSequence& frames) {
  require_frames(frames, 1, "average_hue");
  std::array<double, 3> sum{};
  std::size_t pixels = 0;
  for (const Image& img : frames.frames) {
    for (std::size_t i = 0; i + 2 < img.rgb.size(); i += 3) {
      sum[0] += img.rgb[i];
      sum[1] += img.rgb[i + 1];
      sum[2] += img.rgb[i + 2];
    }
    pixels += static_cast<std::size_t>(img.width) * img.height;
  }
  for (double& s : sum) s /= static_cast<double>(pixels);
  return sum;
}

std::array<double, 3> median_hue(const FrameSequence& frames) {
  require_frames(frames, 1, "median_hue");
  // 8-bit channels: exact medians from 256-bin histograms.
  std::array<std::array<std::uint64_t, 256>, 3> hist{};
  std::uint64_t total = 0;
  for (const Image& img : frames.frames) {
    for (std::size_t i = 0; i + 2 < img.rgb.size(); i += 3) {
      ++hist[0][img.rgb[i]];
      ++hist[1][img.rgb[i + 1]];
      ++hist[2][img.rgb[i + 2]];
    }
    total += static_cast<std::uint64_t>(img.width) * img.height;
  }
  // Lower median = sorted element at index ceil(total/2) - 1.
  const std::uint64_t target = (total + 1) / 2;
  std::array<double, 3> median{};
  for (int c = 0; c < 3; ++c) {
    std::uint64_t cum = 0;
    for (int v = 0; v < 256; ++v) {
      cum += hist[c][v];
      if (cum >= target) {
        median[c] = v;
        break;
      }
    }
  }
  return median;
}

double average_intensity(const FrameSequence& frames, double crop_fraction) {
  require_frames(frames, 1, "average_intensity");
  const int width = frames.frames.front().width;
  const int height = frames.frames.front().height;
  const int w = static_cast<int>(std::llround(crop_fraction * width));
  const int h = static_cast<int>(std::llround(crop_fraction * height));
  if (w <= 0 || h <= 0) {
    throw std::invalid_argument("average_intensity: crop rounds to zero pixels");
  }
  const int x0 = (width - w) / 2;
  const int y0 = (height - h) / 2;
  double sum = 0.0;
  for (const Image& img : frames.frames) {
    for (int y = y0; y < y0 + h; ++y) {
      const std::uint8_t* p = img.pixel(x0, y);
      for (int x = 0; x < w; ++x, p += 3) {
        sum += grayscale(p[0], p[1], p[2]);
      }
    }
  }
  return sum / (static_cast<double>(w) * h * frames.frames.size());
}

namespace {

std::vector<double> color_histogram(const Image& img, int bins_per_channel) {
  std::vector<double> hist(static_cast<std::size_t>(bins_per_channel) *
                           bins_per_channel * bins_per_channel,
                           0.0);
  for (std::size_t i = 0; i + 2 < img.rgb.size(); i += 3) {
    const int r = img.rgb[i] * bins_per_channel >> 8;
    const int g = img.rgb[i + 1] * bins_per_channel >> 8;
    const int b = img.rgb[i + 2] * bins_per_channel >> 8;
    hist[(static_cast<std::size_t>(r) * bins_per_channel + g) * bins_per_channel + b] += 1.0;
  }
  const double total = static_cast<double>(img.width) * img.height;
  for (double& v : hist) v /= total;
  return hist;
}

}  // namespace

int shot_boundaries(const FrameSequence& frames, double threshold,
                    int bins_per_channel) {
  if (!(threshold > 0.0 && threshold <= 2.0)) {
    throw std::invalid_argument("shot_boundaries: threshold must be in (0, 2]");
  }
  if (bins_per_channel < 1 || bins_per_channel > 256) {
    throw std::invalid_argument("shot_boundaries: bins_per_channel must be in [1, 256]");
  }
  if (frames.frames.size() < 2) return 0;
  int cuts = 0;
  std::vector<double> prev = color_histogram(frames.frames[0], bins_per_channel);
  for (std::size_t i = 1; i < frames.frames.size(); ++i) {
    std::vector<double> cur = color_histogram(frames.frames[i], bins_per_channel);
    double dist = 0.0;
    for (std::size_t k = 0; k < cur.size(); ++k) dist += std::abs(cur[k] - prev[k]);
    if (dist > threshold) ++cuts;
    prev = std::move(cur);
  }
  return cuts;
}

namespace {

struct Displacement {
  int dy;
  int dx;
};

// Candidates ordered by (dy*dy + dx*dx, dy, dx): the first strictly better
// SAD wins, so ties resolve to the smallest displacement.
std::vector<Displacement> candidate_order(int radius) {
  std::vector<Displacement> out;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) out.push_back({dy, dx});
  }
  std::sort(out.begin(), out.end(), [](const Displacement& a, const Displacement& b) {
    const int na = a.dy * a.dy + a.dx * a.dx;
    const int nb = b.dy * b.dy + b.dx * b.dx;
    if (na != nb) return na < nb;
    if (a.dy != b.dy) return a.dy < b.dy;
    return a.dx < b.dx;
  });
  return out;
}

// Integer luma (x1000) keeps the SAD comparison exact.
std::vector<std::int32_t> luma_plane(const Image& img) {
  std::vector<std::int32_t> luma(static_cast<std::size_t>(img.width) * img.height);
  for (std::size_t i = 0, p = 0; p < luma.size(); i += 3, ++p) {
    luma[p] = 299 * img.rgb[i] + 587 * img.rgb[i + 1] + 114 * img.rgb[i + 2];
  }
  return luma;
}

std::int64_t block_sad(const std::vector<std::int32_t>& a,
                       const std::vector<std::int32_t>& b, int width, int ax,
                       int ay, int bx, int by, int bw, int bh) {
  std::int64_t sad = 0;
  for (int y = 0; y < bh; ++y) {
    const std::int32_t* pa = a.data() + static_cast<std::size_t>(ay + y) * width + ax;
    const std::int32_t* pb = b.data() + static_cast<std::size_t>(by + y) * width + bx;
    for (int x = 0; x < bw; ++x) {
      sad += std::abs(static_cast<std::int64_t>(pa[x]) - pb[x]);
    }
  }
  return sad;
}

}  // namespace

std::vector<double> flow_magnitudes(const FrameSequence& frames, int block_size,
                                    int search_radius) {
  require_frames(frames, 2, "flow_magnitudes");
  const int width = frames.frames.front().width;
  const int height = frames.frames.front().height;
  const int bw = std::min(block_size, width);
  const int bh = std::min(block_size, height);
  const int nx = width / bw;
  const int ny = height / bh;
  const std::vector<Displacement> order = candidate_order(search_radius);

  std::vector<double> magnitudes;
  magnitudes.reserve(frames.frames.size() - 1);
  std::vector<std::int32_t> cur = luma_plane(frames.frames[0]);
  for (std::size_t f = 1; f < frames.frames.size(); ++f) {
    std::vector<std::int32_t> next = luma_plane(frames.frames[f]);
    double sum_mag = 0.0;
    for (int by = 0; by < ny; ++by) {
      for (int bx = 0; bx < nx; ++bx) {
        const int x0 = bx * bw;
        const int y0 = by * bh;
        std::int64_t best_sad = -1;
        Displacement best{0, 0};
        for (const Displacement& d : order) {
          const int tx = x0 + d.dx;
          const int ty = y0 + d.dy;
          if (tx < 0 || ty < 0 || tx + bw > width || ty + bh > height) continue;
          const std::int64_t sad =
              block_sad(cur, next, width, x0, y0, tx, ty, bw, bh);
          if (best_sad < 0 || sad < best_sad) {
            best_sad = sad;
            best = d;
          }
        }
        sum_mag += std::sqrt(static_cast<double>(best.dx * best.dx + best.dy * best.dy));
      }
    }
    magnitudes.push_back(sum_mag / (static_cast<double>(nx) * ny));
    cur = std::move(next);
  }
  return magnitudes;
}

std::array<double, kFlowBins> bin_flow(const std::vector<double>& magnitudes) {
  std::array<double, kFlowBins> bins{};
  const std::size_t pairs = magnitudes.size();
  const std::size_t base = pairs / kFlowBins;
  const std::size_t extra = pairs % kFlowBins;
  std::size_t idx = 0;
  double total = 0.0;
  for (std::size_t b = 0; b < kFlowBins; ++b) {
    const std::size_t take = base + (b < extra ? 1 : 0);
    for (std::size_t k = 0; k < take; ++k) bins[b] += magnitudes[idx++];
    total += bins[b];
  }
  if (total == 0.0) {
    bins.fill(1.0 / kFlowBins);
    return bins;
  }
  for (double& v : bins) v /= total;
  return bins;
}

std::array<double, kFlowBins> optical_flow_hist(const FrameSequence& frames,
                                                const VisualParams& params) {
  return bin_flow(
      flow_magnitudes(frames, params.flow_block_size, params.flow_search_radius));
}

double average_memorability(const std::vector<double>& scores) {
  if (scores.empty()) {
    throw std::invalid_argument("average_memorability: empty score list");
  }
  double sum = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("average_memorability: score outside [0, 1]");
    }
    sum += s;
  }
  return sum / static_cast<double>(scores.size());
}

VisualFeatureBlock visual_block(const FrameSequence& frames,
                                const std::vector<double>& memorability,
                                double duration_seconds,
                                const VisualParams& params) {
  require_frames(frames, 2, "visual_block");
  VisualFeatureBlock block;
  block.avg_hue = average_hue(frames);
  block.median_hue = median_hue(frames);
  block.avg_intensity = average_intensity(frames, 1.0);
  block.avg_intensity_mid30 = average_intensity(frames, 0.3);
  block.avg_intensity_mid60 = average_intensity(frames, 0.6);
  block.shot_boundary_count =
      shot_boundaries(frames, params.shot_threshold, params.hist_bins_per_channel);
  block.flow_hist = optical_flow_hist(frames, params);
  block.avg_memorability =
      memorability.empty() ? 0.0 : average_memorability(memorability);
  block.duration_seconds = duration_seconds;
  return block;
}

}  // namespace adeff
