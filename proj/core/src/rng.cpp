#include "neuronav/rng.hpp"

namespace neuronav {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    // SplitMix64 finalizer.
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

Rng::Rng(std::uint64_t seed) noexcept : key_(mix64(seed ^ kGolden)), counter_(0) {}

std::uint64_t Rng::next_u64() noexcept {
    const std::uint64_t out = mix64(key_ + kGolden * (counter_ + 1));
    ++counter_;
    return out;
}

double Rng::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) noexcept {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    // Rejection sampling keeps the result exactly uniform.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return static_cast<std::size_t>(x % bound);
}

Rng Rng::split(std::uint64_t stream) const noexcept {
    return Rng(mix64(key_ ^ mix64(stream + kGolden)), 0);
}

}  // namespace neuronav
