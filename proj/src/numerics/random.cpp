#include <cmath>
#include <limits>

#include "clup/numerics.hpp"

namespace clup::numerics {

GaussianStream::GaussianStream(RngSeed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.base & 0xffffffffu),
                    static_cast<std::uint32_t>(seed.base >> 32),
                    static_cast<std::uint32_t>(seed.stream & 0xffffffffu),
                    static_cast<std::uint32_t>(seed.stream >> 32)};
  engine_.seed(seq);
}

double GaussianStream::uniform_pm1() {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * u - 1.0;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = uniform_pm1();
    v = uniform_pm1();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

void GaussianStream::fill(std::span<double> out) {
  for (double& x : out) x = next();
}

std::uint64_t GaussianStream::uniform_index(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

std::vector<double> gaussian_stream(RngSeed seed, std::size_t count) {
  std::vector<double> out(count);
  GaussianStream g(seed);
  g.fill(out);
  return out;
}

}  // namespace clup::numerics
