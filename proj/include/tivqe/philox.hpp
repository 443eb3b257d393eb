#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace tivqe {

// Philox4x32-10 counter-based generator. Stateless block function plus a
// small stream wrapper; streams indexed by (seed, stream) never collide
// because they occupy disjoint counter/key subspaces.
struct Philox4x32 {
    static constexpr uint32_t kMul0 = 0xD2511F53u;
    static constexpr uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                         std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const uint64_t p0 = uint64_t(kMul0) * ctr[0];
            const uint64_t p1 = uint64_t(kMul1) * ctr[2];
            const std::array<uint32_t, 4> next = {
                uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
                uint32_t(p1),
                uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
                uint32_t(p0),
            };
            ctr = next;
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

// Deterministic random stream. Draw order is part of the contract: a
// consumer replaying (seed, stream) sees the identical sequence.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0)
        : key_{uint32_t(seed), uint32_t(seed >> 32)},
          stream_lo_(uint32_t(stream)), stream_hi_(uint32_t(stream >> 32)) {}

    uint32_t next_u32() {
        if (avail_ == 0) {
            buffer_ = Philox4x32::block(
                {uint32_t(block_), uint32_t(block_ >> 32), stream_lo_,
                 stream_hi_},
                key_);
            ++block_;
            avail_ = 4;
        }
        return buffer_[4 - avail_--];
    }

    uint64_t next_u64() {
        const uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // uniform on [0, 1) with 53 significant bits
    double uniform() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    std::array<uint32_t, 2> key_;
    uint32_t stream_lo_, stream_hi_;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buffer_{};
    int avail_ = 0;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace tivqe
