#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optinit/rng.hpp"
#include "optinit/tensor.hpp"

namespace optinit {

// How the second-moment estimate v0 is seeded for every parameter tensor.
// The first moment m0 is always zero.
struct InitStrategy {
    enum class Kind { zero, random, data_driven, constant };

    Kind kind = Kind::zero;
    double sigma = 100.0;  // scale for random / data_driven
    double lambda = 0.0;   // value for constant

    static InitStrategy zero() { return {}; }
    static InitStrategy random(double sigma = 100.0) { return {Kind::random, sigma, 0.0}; }
    static InitStrategy data_driven(double sigma = 1.0) { return {Kind::data_driven, sigma, 0.0}; }
    static InitStrategy constant(double lambda) { return {Kind::constant, 0.0, lambda}; }

    void validate() const;  // ConfigError on sigma < 0 or lambda < 0
    std::string str() const;
};

// v0 ~ (sigma / (fan_out + fan_in)) * chi^2_1, sampled entrywise.
Tensor random_v0(const Shape& shape, double sigma, Rng& rng);

// Same sampler for flat tensors with an externally chosen fan sum
// (bias vectors inherit their layer's fan_in + fan_out, lone scalars use 2).
Tensor random_v0_flat(std::size_t len, std::int64_t fan_sum, double sigma, Rng& rng);

// v0 = sigma * (mean^2 + population variance), elementwise over the sample
// axis. Needs at least two per-sample gradients of identical shape.
Tensor data_driven_v0(const std::vector<Tensor>& per_sample_grads, double sigma);

// One entry point used by the optimizer builder. fan_sum is consulted only
// by the random strategy; per_sample_grads only by the data-driven one.
Tensor make_v0(const Shape& shape, std::size_t fan_sum, const InitStrategy& strategy, Rng& rng,
               const std::vector<Tensor>* per_sample_grads = nullptr);

struct WarmupSchedule {
    std::uint64_t warmup_steps = 0;  // W = 0 disables warmup
    double base_lr = 1.0;
};

// Linear ramp: alpha * min(1, t/W) for step index t >= 1.
double warmup_lr(std::uint64_t t, const WarmupSchedule& sched);

}  // namespace optinit
