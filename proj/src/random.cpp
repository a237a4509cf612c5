#include "evq/random.hpp"

namespace evq {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

RngStream::RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> substream)
    : key_(mix64(seed ^ 0x5851F42D4C957F2DULL)) {
    for (std::uint64_t id : substream) key_ = mix64(key_ + kGolden * (id + 1));
}

RngStream RngStream::derive(std::uint64_t id) const { return RngStream(mix64(key_ + kGolden * (id + 1))); }

RngStream::result_type RngStream::operator()() noexcept {
    return mix64(key_ + kGolden * ++counter_);
}

double RngStream::uniform_open() noexcept {
    // 52 random bits centred in their cell: smallest 2^-53, largest 1 - 2^-53.
    return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1p-52;
}

}  // namespace evq
