#include "optinit/optim.hpp"

#include <cmath>

#include "optinit/errors.hpp"
#include "optinit/kernels.hpp"

namespace optinit {

OptVariant opt_variant_from_string(const std::string& s) {
    if (s == "sgdm" || s == "sgd") return OptVariant::sgdm;
    if (s == "rmsprop") return OptVariant::rmsprop;
    if (s == "adam") return OptVariant::adam;
    if (s == "adamw") return OptVariant::adamw;
    if (s == "radam") return OptVariant::radam;
    if (s == "adabound") return OptVariant::adabound;
    if (s == "adabelief") return OptVariant::adabelief;
    throw ConfigError("unknown optimizer variant '" + s + "'");
}

std::string to_string(OptVariant v) {
    switch (v) {
        case OptVariant::sgdm: return "sgdm";
        case OptVariant::rmsprop: return "rmsprop";
        case OptVariant::adam: return "adam";
        case OptVariant::adamw: return "adamw";
        case OptVariant::radam: return "radam";
        case OptVariant::adabound: return "adabound";
        case OptVariant::adabelief: return "adabelief";
    }
    return "?";
}

void OptimizerConfig::validate() const {
    if (!(alpha > 0.0)) throw ConfigError("optimizer alpha must be > 0");
    if (beta1 < 0.0 || beta1 >= 1.0) throw ConfigError("beta1 must be in [0, 1)");
    if (beta2 < 0.0 || beta2 >= 1.0) throw ConfigError("beta2 must be in [0, 1)");
    if (eps < 0.0) throw ConfigError("eps must be >= 0");
    if (weight_decay < 0.0) throw ConfigError("weight_decay must be >= 0");
    if (momentum < 0.0 || momentum >= 1.0) throw ConfigError("momentum must be in [0, 1)");
    if (!(final_lr > 0.0)) throw ConfigError("final_lr must be > 0");
    if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
}

namespace {

void check_step_inputs(const TensorState& state, const Tensor& theta, const Tensor& g) {
    check_same_shape(theta, g, "optimizer step");
    check_same_shape(theta, state.m, "optimizer step");
    check_same_shape(theta, state.v, "optimizer step");
    if (has_nan(g)) throw GradientError("gradient contains NaN");
}

struct BiasCorrection {
    double inv_bc1;
    double inv_bc2;
};

BiasCorrection bias_correction(const OptimizerConfig& cfg, std::uint64_t t) {
    return {1.0 / (1.0 - std::pow(cfg.beta1, static_cast<double>(t))),
            1.0 / (1.0 - std::pow(cfg.beta2, static_cast<double>(t)))};
}

}  // namespace

Tensor adam_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                 double lr_t) {
    check_step_inputs(state, theta, g);
    state.t += 1;
    const auto bc = bias_correction(cfg, state.t);
    const kernels::AdamArgs args{cfg.beta1, cfg.beta2, bc.inv_bc1, bc.inv_bc2, lr_t, cfg.eps};
    Tensor dtheta(theta.shape());
    kernels::active().adam(state.m.data(), state.v.data(), theta.data(), dtheta.data(), g.data(),
                           theta.size(), args);
    return dtheta;
}

Tensor adamw_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                  double lr_t) {
    // Decoupled weight decay shrinks theta before the Adam update; with
    // weight_decay = 0 the step is bit-identical to adam_step.
    if (cfg.weight_decay != 0.0) {
        const double keep = 1.0 - lr_t * cfg.weight_decay;
        kernels::active().scale(theta.data(), keep, theta.data(), theta.size());
    }
    return adam_step(state, theta, g, cfg, lr_t);
}

Tensor rmsprop_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                    double lr_t) {
    check_step_inputs(state, theta, g);
    state.t += 1;
    Tensor dtheta(theta.shape());
    kernels::active().rmsprop(state.v.data(), theta.data(), dtheta.data(), g.data(), theta.size(),
                              cfg.beta2, lr_t, cfg.eps);
    return dtheta;
}

Tensor sgdm_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                 double lr_t) {
    check_step_inputs(state, theta, g);
    state.t += 1;
    Tensor dtheta(theta.shape());
    kernels::active().sgdm(state.m.data(), theta.data(), dtheta.data(), g.data(), theta.size(),
                           cfg.momentum, lr_t);
    return dtheta;
}

double radam_rho_inf(double beta2) { return 2.0 / (1.0 - beta2) - 1.0; }

double radam_rho_t(double beta2, std::uint64_t t) {
    const double b2t = std::pow(beta2, static_cast<double>(t));
    return radam_rho_inf(beta2) - 2.0 * static_cast<double>(t) * b2t / (1.0 - b2t);
}

Tensor radam_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                  double lr_t) {
    check_step_inputs(state, theta, g);
    state.t += 1;
    const std::uint64_t t = state.t;
    const auto bc = bias_correction(cfg, t);
    const double rho_inf = radam_rho_inf(cfg.beta2);
    const double rho_t = radam_rho_t(cfg.beta2, t);

    Tensor dtheta(theta.shape());
    const double omb1 = 1.0 - cfg.beta1;
    const double omb2 = 1.0 - cfg.beta2;
    if (rho_t > 4.0) {
        // Rectified adaptive branch.
        const double rect = std::sqrt(((rho_t - 4.0) * (rho_t - 2.0) * rho_inf) /
                                      ((rho_inf - 4.0) * (rho_inf - 2.0) * rho_t));
        for (std::size_t i = 0; i < theta.size(); ++i) {
            state.m[i] = cfg.beta1 * state.m[i] + omb1 * g[i];
            state.v[i] = cfg.beta2 * state.v[i] + omb2 * g[i] * g[i];
            const double mhat = state.m[i] * bc.inv_bc1;
            const double vhat = state.v[i] * bc.inv_bc2;
            const double d = -(lr_t * rect * mhat) / (std::sqrt(vhat) + cfg.eps);
            dtheta[i] = d;
            theta[i] += d;
        }
    } else {
        // Variance is untrustworthy this early; fall back to momentum SGD.
        for (std::size_t i = 0; i < theta.size(); ++i) {
            state.m[i] = cfg.beta1 * state.m[i] + omb1 * g[i];
            state.v[i] = cfg.beta2 * state.v[i] + omb2 * g[i] * g[i];
            const double mhat = state.m[i] * bc.inv_bc1;
            const double d = -(lr_t * mhat);
            dtheta[i] = d;
            theta[i] += d;
        }
    }
    return dtheta;
}

Tensor adabound_step(TensorState& state, Tensor& theta, const Tensor& g,
                     const OptimizerConfig& cfg, double lr_t) {
    check_step_inputs(state, theta, g);
    state.t += 1;
    const double t = static_cast<double>(state.t);
    const double bc1 = 1.0 - std::pow(cfg.beta1, t);
    const double bc2 = 1.0 - std::pow(cfg.beta2, t);
    const double step_size = lr_t * std::sqrt(bc2) / bc1;
    const double lower = cfg.final_lr * (1.0 - 1.0 / (cfg.gamma * t + 1.0));
    const double upper = cfg.final_lr * (1.0 + 1.0 / (cfg.gamma * t));
    const double omb1 = 1.0 - cfg.beta1;
    const double omb2 = 1.0 - cfg.beta2;

    Tensor dtheta(theta.shape());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + omb1 * g[i];
        state.v[i] = cfg.beta2 * state.v[i] + omb2 * g[i] * g[i];
        double eta = step_size / (std::sqrt(state.v[i]) + cfg.eps);
        if (eta < lower) eta = lower;
        if (eta > upper) eta = upper;
        const double d = -eta * state.m[i];
        dtheta[i] = d;
        theta[i] += d;
    }
    return dtheta;
}

Tensor adabelief_step(TensorState& state, Tensor& theta, const Tensor& g,
                      const OptimizerConfig& cfg, double lr_t) {
    check_step_inputs(state, theta, g);
    state.t += 1;
    const auto bc = bias_correction(cfg, state.t);
    const kernels::AdamArgs args{cfg.beta1, cfg.beta2, bc.inv_bc1, bc.inv_bc2, lr_t, cfg.eps};
    Tensor dtheta(theta.shape());
    kernels::active().adabelief(state.m.data(), state.v.data(), theta.data(), dtheta.data(),
                                g.data(), theta.size(), args);
    return dtheta;
}

Tensor optimizer_step(OptVariant variant, TensorState& state, Tensor& theta, const Tensor& g,
                      const OptimizerConfig& cfg, double lr_t) {
    switch (variant) {
        case OptVariant::sgdm: return sgdm_step(state, theta, g, cfg, lr_t);
        case OptVariant::rmsprop: return rmsprop_step(state, theta, g, cfg, lr_t);
        case OptVariant::adam: return adam_step(state, theta, g, cfg, lr_t);
        case OptVariant::adamw: return adamw_step(state, theta, g, cfg, lr_t);
        case OptVariant::radam: return radam_step(state, theta, g, cfg, lr_t);
        case OptVariant::adabound: return adabound_step(state, theta, g, cfg, lr_t);
        case OptVariant::adabelief: return adabelief_step(state, theta, g, cfg, lr_t);
    }
    throw ConfigError("unknown optimizer variant");
}

void Optimizer::init_states(const std::vector<Tensor>& params,
                            const std::vector<std::size_t>& fan_sums,
                            const InitStrategy& strategy, Rng& rng,
                            const std::vector<std::vector<Tensor>>* per_sample_grads) {
    if (params.size() != fan_sums.size())
        throw ConfigError("init_states: fan_sums must parallel params");
    if (strategy.kind == InitStrategy::Kind::data_driven &&
        (per_sample_grads == nullptr || per_sample_grads->empty()))
        throw ConfigError("data-driven v0 requires a per-sample gradient source");

    states_.clear();
    states_.reserve(params.size());
    for (std::size_t p = 0; p < params.size(); ++p) {
        std::vector<Tensor> grads_for_param;
        const std::vector<Tensor>* grads_ptr = nullptr;
        if (strategy.kind == InitStrategy::Kind::data_driven) {
            grads_for_param.reserve(per_sample_grads->size());
            for (const auto& sample : *per_sample_grads) grads_for_param.push_back(sample.at(p));
            grads_ptr = &grads_for_param;
        }
        TensorState st;
        st.m = Tensor(params[p].shape(), 0.0);
        st.v = make_v0(params[p].shape(), fan_sums[p], strategy, rng, grads_ptr);
        st.t = 0;
        states_.push_back(std::move(st));
    }
}

std::vector<Tensor> Optimizer::step(std::vector<Tensor>& params, const std::vector<Tensor>& grads,
                                    double lr_t) {
    if (params.size() != states_.size() || grads.size() != states_.size())
        throw ConfigError("optimizer step: tensor count mismatch");
    std::vector<Tensor> dthetas;
    dthetas.reserve(params.size());
    for (std::size_t p = 0; p < params.size(); ++p)
        dthetas.push_back(optimizer_step(cfg_.variant, states_[p], params[p], grads[p], cfg_, lr_t));
    return dthetas;
}

}  // namespace optinit
