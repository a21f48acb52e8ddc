// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random streams for reproducible parallel simulation.
//
// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3"): a stateless bijection from a 128-bit counter and a 64-bit
// key to 128 random bits. Streams are addressed, not advanced: a stream
// is identified by (seed, trial index, stream tag) and any worker can
// reconstruct it independently, so results never depend on scheduling.

#pragma once

#include <cstdint>

namespace secsat {

// Identifies one logical random stream family: all draws of one scenario
// point share a key; individual trials and links select sub-streams.
struct StreamKey {
    std::uint64_t seed = 0;
    std::uint32_t tag = 0;  // caller-defined, e.g. (point index << 8) | link label
};

class RandomStream {
  public:
    // One independent stream per (seed, trial, tag) triple.
    RandomStream(std::uint64_t seed, std::uint32_t trial, std::uint32_t tag) noexcept
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          trial_(trial),
          tag_(tag) {}

    RandomStream(const StreamKey& key, std::uint32_t trial) noexcept
        : RandomStream(key.seed, trial, key.tag) {}

    std::uint32_t next_u32() noexcept {
        if (buffered_ == 0) refill();
        return buffer_[--buffered_];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on (0, 1]: 53 random mantissa bits, never returns 0, so it is
    // always a valid argument for log().
    double uniform() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second variate of each pair is
    // cached so consecutive calls cost one transform per two draws.
    double gaussian() noexcept;

  private:
    void refill() noexcept;

    std::uint32_t key0_, key1_;
    std::uint32_t trial_, tag_;
    std::uint64_t draw_block_ = 0;  // increments once per 128-bit refill
    std::uint32_t buffer_[4] = {0, 0, 0, 0};
    int buffered_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace secsat
