#pragma once

#include <array>
#include <cstdint>

namespace optinit {

// Counter-based deterministic PRNG (Philox4x32-10).
//
// The generator is a pure function of (seed, stream, counter), so the same
// (seed, stream) pair replays the identical sample sequence, and distinct
// stream ids give statistically independent sequences without coordination.
// This is what makes sharded Monte Carlo runs reproducible: give every
// trial its own stream id and reduce in a fixed order.
//
// A single Rng instance is not safe to share between threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double next_unit();

    // N(0, 1) via Box-Muller; the second draw of each pair is cached.
    double standard_normal();

    // Chi-squared with one degree of freedom (square of one normal draw).
    double chi_squared_1();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    // Stable sub-seed for spawning independent child runs (seed sweeps).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;            // counter of 128-bit blocks consumed
    std::array<std::uint32_t, 4> buf_{}; // current block output
    unsigned pos_ = 4;                   // next unread word in buf_
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace optinit
