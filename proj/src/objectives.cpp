#include "optinit/objectives.hpp"

#include <cmath>

#include "optinit/errors.hpp"

namespace optinit {

void SaddleParams::validate() const {
    if (n < 3 || n % 2 == 0) throw ConfigError("saddle n must be an odd integer >= 3");
    if (!(s > 0.0)) throw ConfigError("saddle s must be > 0");
}

double SaddleParams::switch_point() const {
    return std::pow(s / static_cast<double>(n), 1.0 / static_cast<double>(n - 1)) + b;
}

double SaddleParams::shift() const {
    const double xs = switch_point();
    return std::pow(xs - b, static_cast<double>(n)) - xs * xs;
}

double saddle_value(double x, const SaddleParams& p) {
    const double xs = p.switch_point();
    if (x >= xs) return std::pow(x - p.b, static_cast<double>(p.n));
    if (x <= -xs) return -std::pow(x + p.b, static_cast<double>(p.n));
    return x * x + p.shift();
}

double saddle_grad(double x, const SaddleParams& p) {
    const double xs = p.switch_point();
    const double deg = static_cast<double>(p.n);
    if (x >= xs) return deg * std::pow(x - p.b, deg - 1.0);
    if (x <= -xs) return -deg * std::pow(x + p.b, deg - 1.0);
    return 2.0 * x;
}

void NgosParams::validate() const {
    if (sigma_n < 0.0) throw ConfigError("ngos sigma_n must be >= 0");
    if (gbar.size() == 0) throw ConfigError("ngos gbar must be non-empty");
}

Tensor ngos_sample(const NgosParams& p, Rng& rng) {
    Tensor g(p.gbar.shape());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = p.gbar[i] + p.sigma_n * rng.standard_normal();
    return g;
}

void ExpDecayParams::validate() const {
    if (!(g1_mag > 0.0)) throw ConfigError("expdecay g1_mag must be > 0");
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("expdecay r must be in (0, 1)");
}

double expdecay_grad(std::uint64_t t, const ExpDecayParams& p) {
    if (t < 1) throw DomainError("expdecay_grad: t must be >= 1");
    const double sign =
        (p.sign_rule == ExpDecayParams::SignRule::alternating && t % 2 == 0) ? -1.0 : 1.0;
    return p.g1_mag * std::pow(p.r, static_cast<double>(t - 1)) * sign;
}

void QuadraticParams::validate() const {
    check_same_shape(a_diag, x_star, "quadratic params");
    for (std::size_t i = 0; i < a_diag.size(); ++i)
        if (!(a_diag[i] > 0.0)) throw ConfigError("quadratic a_diag entries must be > 0");
}

std::pair<double, Tensor> quadratic_value_grad(const Tensor& x, const QuadraticParams& p) {
    check_same_shape(x, p.a_diag, "quadratic");
    double f = 0.0;
    Tensor g(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - p.x_star[i];
        f += 0.5 * p.a_diag[i] * d * d;
        g[i] = p.a_diag[i] * d;
    }
    return {f, std::move(g)};
}

}  // namespace optinit
