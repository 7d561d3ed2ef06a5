#include "cltscope/philox.hpp"

namespace cltscope {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                      std::uint32_t* lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  *hi = static_cast<std::uint32_t>(prod >> 32);
  *lo = static_cast<std::uint32_t>(prod);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kM0, c[0], &hi0, &lo0);
  mul_hi_lo(kM1, c[2], &hi1, &lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  counter = round_once(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kW0;
    key[1] += kW1;
    counter = round_once(counter, key);
  }
  return counter;
}

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

void UniformStream::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_),
      static_cast<std::uint32_t>(stream_ >> 32)};
  buffer_ = philox4x32(counter, key_);
  ++block_;
  cursor_ = 0;
}

double UniformStream::next() {
  if (cursor_ > 1) refill();
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(buffer_[2 * cursor_]) << 32) |
      buffer_[2 * cursor_ + 1];
  ++cursor_;
  // 53 high bits -> [0,1)
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace cltscope
