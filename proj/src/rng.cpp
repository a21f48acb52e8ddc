// SPDX-License-Identifier: Apache-2.0

#include "secsat/rng.hpp"

#include <cmath>

namespace secsat {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;  // golden-ratio Weyl keys
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void philox_round(std::uint32_t ctr[4], std::uint32_t k0, std::uint32_t k1) noexcept {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM4x32A) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM4x32B) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t n0 = hi1 ^ ctr[1] ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ ctr[3] ^ k1;
    const std::uint32_t n3 = lo0;
    ctr[0] = n0;
    ctr[1] = n1;
    ctr[2] = n2;
    ctr[3] = n3;
}

}  // namespace

void RandomStream::refill() noexcept {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(draw_block_),
        static_cast<std::uint32_t>(draw_block_ >> 32),
        trial_,
        tag_,
    };
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            k0 += kPhiloxW32A;
            k1 += kPhiloxW32B;
        }
        philox_round(ctr, k0, k1);
    }
    buffer_[0] = ctr[0];
    buffer_[1] = ctr[1];
    buffer_[2] = ctr[2];
    buffer_[3] = ctr[3];
    buffered_ = 4;
    ++draw_block_;
}

double RandomStream::gaussian() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace secsat
