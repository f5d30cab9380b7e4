#pragma once

#include <cstdint>
#include <utility>

#include "optinit/rng.hpp"
#include "optinit/tensor.hpp"

namespace optinit {

// Piecewise scalar objective: odd-degree polynomial wings glued to a
// central parabola. The shift d makes the value continuous at the switch
// points +-x_s; the derivative is allowed to jump there.
struct SaddleParams {
    int n = 7;       // odd polynomial degree >= 3
    double b = 1.0;  // wing bias
    double s = 0.5;  // wing gradient magnitude at the switch point

    double switch_point() const;  // x_s = (s/n)^(1/(n-1)) + b
    double shift() const;         // d = (x_s - b)^n - x_s^2
    void validate() const;
};

double saddle_value(double x, const SaddleParams& p);
// Ties at exactly |x| = x_s resolve to the polynomial wing.
double saddle_grad(double x, const SaddleParams& p);

// Linear-loss gradient oracle: g_t ~ N(gbar, sigma_n^2 I).
struct NgosParams {
    Tensor gbar;
    double sigma_n = 1.0;
    void validate() const;
};

Tensor ngos_sample(const NgosParams& p, Rng& rng);

// Deterministic schedule g_t = |g1| * r^(t-1) * s_t.
struct ExpDecayParams {
    enum class SignRule { aligned, alternating };
    double g1_mag = 1.0;
    double r = 0.5;  // decay rate in (0, 1)
    SignRule sign_rule = SignRule::aligned;
    void validate() const;
};

double expdecay_grad(std::uint64_t t, const ExpDecayParams& p);

// f(x) = 1/2 sum_i a_i (x_i - x*_i)^2 with a_i > 0.
struct QuadraticParams {
    Tensor a_diag;
    Tensor x_star;
    void validate() const;
};

std::pair<double, Tensor> quadratic_value_grad(const Tensor& x, const QuadraticParams& p);

}  // namespace optinit
