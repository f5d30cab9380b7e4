#include "optinit/init.hpp"

#include <algorithm>

#include "optinit/errors.hpp"

namespace optinit {

void InitStrategy::validate() const {
    if (sigma < 0.0) throw ConfigError("v0 sigma must be >= 0");
    if (lambda < 0.0) throw ConfigError("v0 lambda must be >= 0");
}

std::string InitStrategy::str() const {
    switch (kind) {
        case Kind::zero: return "zero";
        case Kind::random: return "random(sigma=" + std::to_string(sigma) + ")";
        case Kind::data_driven: return "data(sigma=" + std::to_string(sigma) + ")";
        case Kind::constant: return "const(lambda=" + std::to_string(lambda) + ")";
    }
    return "?";
}

Tensor random_v0(const Shape& shape, double sigma, Rng& rng) {
    if (!shape.is_matrix()) throw ShapeError("random_v0 expects a matrix shape");
    if (sigma < 0.0) throw ConfigError("random_v0: sigma must be >= 0");
    Tensor out(shape);
    const double s = sigma / static_cast<double>(shape.fan_sum());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * rng.chi_squared_1();
    return out;
}

Tensor random_v0_flat(std::size_t len, std::int64_t fan_sum, double sigma, Rng& rng) {
    if (sigma < 0.0) throw ConfigError("random_v0: sigma must be >= 0");
    if (fan_sum < 1) throw ConfigError("random_v0: fan_sum must be >= 1");
    Tensor out(Shape::flat(static_cast<std::int64_t>(len)));
    const double s = sigma / static_cast<double>(fan_sum);
    for (std::size_t i = 0; i < len; ++i) out[i] = s * rng.chi_squared_1();
    return out;
}

Tensor data_driven_v0(const std::vector<Tensor>& per_sample_grads, double sigma) {
    if (sigma < 0.0) throw ConfigError("data_driven_v0: sigma must be >= 0");
    if (per_sample_grads.size() < 2)
        throw ConfigError("data_driven_v0: insufficient samples (need >= 2, got " +
                          std::to_string(per_sample_grads.size()) + ")");
    const Tensor& first = per_sample_grads.front();
    for (const Tensor& g : per_sample_grads) check_same_shape(first, g, "data_driven_v0");

    const double inv_n = 1.0 / static_cast<double>(per_sample_grads.size());
    Tensor out(first.shape());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double mean = 0.0;
        for (const Tensor& g : per_sample_grads) mean += g[i];
        mean *= inv_n;
        double var = 0.0;  // population variance, divide by N
        for (const Tensor& g : per_sample_grads) {
            const double d = g[i] - mean;
            var += d * d;
        }
        var *= inv_n;
        out[i] = sigma * (mean * mean + var);
    }
    return out;
}

Tensor make_v0(const Shape& shape, std::size_t fan_sum, const InitStrategy& strategy, Rng& rng,
               const std::vector<Tensor>* per_sample_grads) {
    strategy.validate();
    switch (strategy.kind) {
        case InitStrategy::Kind::zero:
            return Tensor(shape, 0.0);
        case InitStrategy::Kind::constant:
            return Tensor(shape, strategy.lambda);
        case InitStrategy::Kind::random: {
            Tensor out(shape);
            const Tensor flat =
                random_v0_flat(shape.size(), static_cast<std::int64_t>(fan_sum), strategy.sigma, rng);
            std::copy(flat.data(), flat.data() + flat.size(), out.data());
            return out;
        }
        case InitStrategy::Kind::data_driven: {
            if (per_sample_grads == nullptr || per_sample_grads->empty())
                throw ConfigError("data-driven v0 requires a per-sample gradient source");
            Tensor v0 = data_driven_v0(*per_sample_grads, strategy.sigma);
            if (!(v0.shape() == shape))
                throw ShapeError("data-driven v0 shape " + v0.shape().str() +
                                 " does not match parameter shape " + shape.str());
            return v0;
        }
    }
    throw ConfigError("unknown init strategy");
}

double warmup_lr(std::uint64_t t, const WarmupSchedule& sched) {
    if (sched.warmup_steps == 0) return sched.base_lr;
    const double ramp = static_cast<double>(t) / static_cast<double>(sched.warmup_steps);
    return sched.base_lr * std::min(1.0, ramp);
}

}  // namespace optinit
