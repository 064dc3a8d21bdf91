#ifndef ADEFF_UTIL_HPP
#define ADEFF_UTIL_HPP

#include <charconv>
#include <functional>
#include <string>

namespace adeff {

/// Shortest round-trip decimal form, locale-free, so emitted reports are
/// byte-identical across runs and platforms.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Runs fn(0..n-1) on a bounded pool. workers == 0 picks the hardware
/// concurrency; workers == 1 stays on the calling thread. Tasks must write to
/// disjoint slots; the first exception, if any, is rethrown after the pool
/// drains.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace adeff

#endif
