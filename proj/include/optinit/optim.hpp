#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optinit/init.hpp"
#include "optinit/rng.hpp"
#include "optinit/tensor.hpp"

namespace optinit {

enum class OptVariant { sgdm, rmsprop, adam, adamw, radam, adabound, adabelief };

OptVariant opt_variant_from_string(const std::string& s);
std::string to_string(OptVariant v);

struct OptimizerConfig {
    OptVariant variant = OptVariant::adam;
    double alpha = 0.001;        // base learning rate
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;           // 0 is accepted for the closed-form analyses
    double weight_decay = 0.0;   // decoupled decay, AdamW only
    double momentum = 0.0;       // SGD momentum factor
    double final_lr = 0.1;       // AdaBound bound target
    double gamma = 1e-3;         // AdaBound bound convergence speed

    void validate() const;  // ConfigError on violation
};

// Per-tensor optimizer state. m holds the first moment (the velocity for
// SGD); v holds the second moment (the belief variance s for AdaBelief).
// t counts completed steps and is incremented before bias correction, so
// the first step sees t = 1.
struct TensorState {
    Tensor m;
    Tensor v;
    std::uint64_t t = 0;
};

// Single-tensor update rules. Each advances state, writes theta in place
// and returns the applied step dtheta. lr_t is the effective learning rate
// for this step; schedules live with the caller, not the optimizer.
Tensor adam_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                 double lr_t);
Tensor adamw_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                  double lr_t);
Tensor rmsprop_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                    double lr_t);
Tensor sgdm_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                 double lr_t);
Tensor radam_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                  double lr_t);
Tensor adabound_step(TensorState& state, Tensor& theta, const Tensor& g, const OptimizerConfig& cfg,
                     double lr_t);
Tensor adabelief_step(TensorState& state, Tensor& theta, const Tensor& g,
                      const OptimizerConfig& cfg, double lr_t);

Tensor optimizer_step(OptVariant variant, TensorState& state, Tensor& theta, const Tensor& g,
                      const OptimizerConfig& cfg, double lr_t);

// RAdam's variance rectification threshold: SGD-like branch while rho_t <= 4.
double radam_rho_inf(double beta2);
double radam_rho_t(double beta2, std::uint64_t t);

// Owns one TensorState per parameter tensor and steps them in lockstep.
class Optimizer {
public:
    explicit Optimizer(OptimizerConfig cfg) : cfg_(cfg) {}

    // Builds fresh states: m = 0, v (or s) from the strategy, t = 0.
    // fan_sums must parallel params; per_sample_grads (outer index sample,
    // inner index parameter) is required by the data-driven strategy.
    void init_states(const std::vector<Tensor>& params, const std::vector<std::size_t>& fan_sums,
                     const InitStrategy& strategy, Rng& rng,
                     const std::vector<std::vector<Tensor>>* per_sample_grads = nullptr);

    std::vector<Tensor> step(std::vector<Tensor>& params, const std::vector<Tensor>& grads,
                             double lr_t);

    const OptimizerConfig& config() const { return cfg_; }
    const TensorState& state(std::size_t i) const { return states_.at(i); }
    std::size_t num_params() const { return states_.size(); }
    std::uint64_t step_count() const { return states_.empty() ? 0 : states_.front().t; }

private:
    OptimizerConfig cfg_;
    std::vector<TensorState> states_;
};

}  // namespace optinit
