#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace evq {

/// Counter-based stream of 64-bit draws. The stream key is derived from a seed and a
/// list of substream identifiers (for example cell, trial, purpose), so draws of one
/// substream never depend on how many values other substreams consumed.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> substream);

    /// A child stream; same (parent, id) always yields the same child.
    RngStream derive(std::uint64_t id) const;

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform_open() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t position() const noexcept { return counter_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace evq
