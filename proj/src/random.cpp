#include "alphaidx/random.hpp"

namespace alphaidx {

__extension__ using u128 = unsigned __int128;

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed)
    : RandomStream(FromKey{}, mix(seed + kGolden)) {}

RandomStream::RandomStream(FromKey, std::uint64_t key)
    : key_(key), state_(key) {}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(FromKey{},
                      mix(key_ ^ mix(index * kGolden + 0x632BE59BD9B4E019ULL)));
}

RandomStream::result_type RandomStream::operator()() {
  state_ += kGolden;
  return mix(state_);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  // Lemire's multiply-and-reject.
  std::uint64_t x = (*this)();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::uniform_open() {
  // 53 random bits shifted by half an ulp keeps both endpoints out.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace alphaidx
