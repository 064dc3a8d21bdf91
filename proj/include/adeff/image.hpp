#ifndef ADEFF_IMAGE_HPP
#define ADEFF_IMAGE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace adeff {

/// 8-bit RGB image, row-major, 3 bytes per pixel.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  std::uint8_t* pixel(int x, int y) { return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* pixel(int x, int y) const {
    return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
};

Image make_image(int width, int height, std::uint8_t r = 0, std::uint8_t g = 0,
                 std::uint8_t b = 0);

/// Ordered frames plus the nominal frame rate.
struct FrameSequence {
  std::vector<Image> frames;
  double frame_rate = 24.0;
};

// P6 binary PPM.
Image read_ppm(const std::string& path);
void write_ppm(const std::string& path, const Image& img);

// PNG via libpng; palette/gray/alpha inputs are expanded to 8-bit RGB.
Image read_png(const std::string& path);
void write_png(const std::string& path, const Image& img);

/// Dispatches on extension (.ppm / .png, case-insensitive).
Image read_image(const std::string& path);

/// Loads every .ppm/.png in the directory in filename order (zero-padded
/// numeric names sort correctly). Throws when the directory is empty or the
/// frames disagree on dimensions.
FrameSequence read_frame_dir(const std::string& dir, double frame_rate = 24.0);

}  // namespace adeff

#endif
