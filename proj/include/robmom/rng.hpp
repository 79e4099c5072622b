#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace robmom {

/// SplitMix64 finalizer (Steele, Lea and Flood). Bijective 64-bit mixer.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives the engine seed of stream `stream_id` under `master_seed`:
/// splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_id)).
[[nodiscard]] constexpr std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                                         std::uint64_t stream_id) noexcept {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_id));
}

/**
 * @brief Reproducible random stream identified by (master seed, stream id).
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard, so a given (master_seed, stream_id) pair produces the same values
 * on every conforming platform. Doubles are built from the top 53 bits by
 * hand rather than through std::uniform_real_distribution, whose algorithm
 * is implementation-defined.
 *
 * A stream is single-owner. Parallel work uses one stream per task.
 */
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_seed_(master_seed),
          stream_id_(stream_id),
          engine_(derive_stream_seed(master_seed, stream_id)) {}

    [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() { return engine_(); }

    /// Uniform draw on the open interval (0, 1): (k + 0.5) / 2^53.
    double uniform_open() {
        const std::uint64_t k = engine_() >> 11;
        return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace robmom
