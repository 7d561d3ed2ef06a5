#pragma once

#include <array>
#include <cstdint>

namespace cltscope {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC 2011). Stateless: each
// 128-bit counter / 64-bit key pair maps to four 32-bit words, so streams
// can be carved up by replicate index without any sequential dependence.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Stream of uniform doubles in [0,1) for one (seed, stream) pair. Each
// Philox block yields two doubles with 53 random bits apiece. The sequence
// depends only on (seed, stream, draw index).
class UniformStream {
 public:
  UniformStream(std::uint64_t seed, std::uint64_t stream);

  double next();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int cursor_ = 2;  // 0 or 1 when buffer_ holds unconsumed doubles

  void refill();
};

}  // namespace cltscope
