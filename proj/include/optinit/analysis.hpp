#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "optinit/objectives.hpp"
#include "optinit/rng.hpp"
#include "optinit/tensor.hpp"

namespace optinit {

// Magnitude/sign split of one Adam step.
struct StepDecomposition {
    double magnitude;  // alpha * sqrt(1 / (1 + (vhat - mhat^2)/mhat^2))
    double sign;       // sign(mhat)
};

// Requires vhat > 0 (DomainError) and mhat != 0 (the sign would be
// undefined; DomainError as well).
StepDecomposition decompose_step(double m_hat, double v_hat, double alpha);

struct MomentPair {
    double m;
    double v;
};

// Expected moments under g_t ~ N(gbar, sigma_n^2):
//   E[m_t] = beta1^t m0 + (1 - beta1^t) gbar
//   E[v_t] = beta2^t v0 + (1 - beta2^t) (gbar^2 + sigma_n^2)
MomentPair expected_moments(double gbar, double sigma_n, double m0, double v0, double beta1,
                            double beta2, std::uint64_t t);

// |gbar^2 + sigma_n^2 - v0|: distance from v0 to the steady state.
double drift(double v0, double gbar, double sigma_n);

// First-order Taylor approximation of the expected RMSprop step,
// -alpha * gbar / sqrt(beta2^t v0 + (1 - beta2^t)(gbar^2 + sigma_n^2)).
// DomainError when the denominator vanishes (v0 = 0, t = 0).
double rmsprop_expected_step(double gbar, double sigma_n, double v0, double beta2, std::uint64_t t,
                             double alpha);

struct ExpDecayMoments {
    double m;
    double v;
    double m_hat;
    double v_hat;
};

// Closed forms of the moment recursions under the aligned-sign exponential
// gradient schedule, valid when r != beta1 and r^2 != beta2 (the geometric
// sums would otherwise degenerate; DomainError).
ExpDecayMoments expdecay_closed_moments(const ExpDecayParams& p, double beta1, double beta2,
                                        std::uint64_t t);

// Per-step decay ratio of the update-size bound and its ingredients.
double importance_k_t(double beta1, double beta2, double r, std::uint64_t t);
double importance_k_inf(double beta1, double beta2);
double importance_C(double beta1, double beta2, double r);

struct ImportanceReport {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double r = 0.0;
    double k_inf = 0.0;        // beta1 / sqrt(beta2)
    double C = 0.0;            // (1-b1) sqrt(b2 - r^2) / (sqrt(1-b2) (b1 - r))
    double sigma_first = 0.0;  // (1 - k_inf) / (C * k_inf)
    double s_inf = 0.0;        // sum of k_t, truncated at relative tail 1e-12
    std::size_t terms_summed = 0;
    std::vector<double> k;            // k[T-1] = k_T
    std::vector<double> exact_ratio;  // S_T / S_inf
    std::vector<double> approx_ratio; // 1 - k_inf^T
    std::vector<double> sgd_ratio;    // 1 - r^T
};

// Requires r < beta1 < sqrt(beta2) < 1 (ConfigError otherwise).
ImportanceReport importance_report(double beta1, double beta2, double r, std::size_t t_max);

struct StepHistogram {
    std::size_t step = 0;               // 1-based step index
    std::vector<double> edges;          // bins+1 ascending edges
    std::vector<std::uint64_t> counts;  // bins+2: [underflow, bins..., overflow]
};

struct StepStats {
    std::vector<double> norms;      // ||dtheta_t||_2 per step
    std::vector<double> sign_frac;  // fraction of coords with |d| in [0.999a, a]
    std::vector<StepHistogram> histograms;
};

// 60 logarithmic bins over [1e-12, 10*alpha] plus underflow/overflow.
std::vector<double> histogram_edges(double alpha);

// dtheta_per_step: flattened per-coordinate steps, one vector per step.
StepStats step_stats(const std::vector<std::vector<double>>& dtheta_per_step, double alpha,
                     const std::vector<std::size_t>& histogram_steps = {});

struct LandscapeGrid {
    std::size_t resolution = 0;
    double half_width = 0.0;
    std::vector<double> offsets;  // resolution grid coordinates in [-w, w]
    std::vector<double> loss;     // row-major: loss[i*R + j] at (a_i, b_j)
};

using LossFn = std::function<double(const std::vector<Tensor>&)>;

// Loss surface along two random directions, each direction slice rescaled
// to the norm of the matching parameter tensor (zero-norm tensors keep a
// zero direction).
LandscapeGrid landscape_scan(const LossFn& loss, const std::vector<Tensor>& center, Rng& rng,
                             double half_width, std::size_t resolution);

}  // namespace optinit
