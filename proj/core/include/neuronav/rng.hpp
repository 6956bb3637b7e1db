#pragma once

#include <cstddef>
#include <cstdint>

namespace neuronav {

// Counter-based generator: output i is a 64-bit mix of (key, i). Streams are
// derived by re-keying, so environment, agent and experiment draws never
// interleave and results do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    // Uniform on [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n) noexcept;

    // Independent child stream; does not advance this generator.
    Rng split(std::uint64_t stream) const noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

    bool operator==(const Rng&) const = default;

private:
    Rng(std::uint64_t key, std::uint64_t counter) noexcept : key_(key), counter_(counter) {}

    std::uint64_t key_;
    std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

// Stream ids used when deriving per-run generators from a master seed.
namespace streams {
inline constexpr std::uint64_t environment = 1;
inline constexpr std::uint64_t agent = 2;
inline constexpr std::uint64_t experiment = 3;
}  // namespace streams

}  // namespace neuronav
