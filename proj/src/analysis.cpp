#include "optinit/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "optinit/errors.hpp"

namespace optinit {

StepDecomposition decompose_step(double m_hat, double v_hat, double alpha) {
    if (!(v_hat > 0.0)) throw DomainError("decompose_step: v_hat must be > 0");
    if (m_hat == 0.0) throw DomainError("decompose_step: sign undefined for m_hat = 0");
    const double ratio = (v_hat - m_hat * m_hat) / (m_hat * m_hat);
    return {alpha * std::sqrt(1.0 / (1.0 + ratio)), m_hat > 0.0 ? 1.0 : -1.0};
}

MomentPair expected_moments(double gbar, double sigma_n, double m0, double v0, double beta1,
                            double beta2, std::uint64_t t) {
    const double b1t = std::pow(beta1, static_cast<double>(t));
    const double b2t = std::pow(beta2, static_cast<double>(t));
    return {b1t * m0 + (1.0 - b1t) * gbar,
            b2t * v0 + (1.0 - b2t) * (gbar * gbar + sigma_n * sigma_n)};
}

double drift(double v0, double gbar, double sigma_n) {
    if (sigma_n < 0.0) throw DomainError("drift: sigma_n must be >= 0");
    return std::fabs(gbar * gbar + sigma_n * sigma_n - v0);
}

double rmsprop_expected_step(double gbar, double sigma_n, double v0, double beta2, std::uint64_t t,
                             double alpha) {
    const double b2t = std::pow(beta2, static_cast<double>(t));
    const double denom_sq = b2t * v0 + (1.0 - b2t) * (gbar * gbar + sigma_n * sigma_n);
    if (!(denom_sq > 0.0)) throw DomainError("rmsprop_expected_step: zero denominator");
    return -alpha * gbar / std::sqrt(denom_sq);
}

ExpDecayMoments expdecay_closed_moments(const ExpDecayParams& p, double beta1, double beta2,
                                        std::uint64_t t) {
    p.validate();
    if (t < 1) throw DomainError("expdecay_closed_moments: t must be >= 1");
    if (p.sign_rule != ExpDecayParams::SignRule::aligned)
        throw DomainError("closed moments are derived for aligned signs only");
    if (p.r == beta1 || p.r * p.r == beta2)
        throw DomainError("degenerate ratio: need r != beta1 and r^2 != beta2");

    const double td = static_cast<double>(t);
    const double q1 = beta1 / p.r;        // first-moment geometric ratio
    const double q2 = beta2 / (p.r * p.r);  // second-moment geometric ratio
    const double m = (1.0 - beta1) * p.g1_mag * std::pow(p.r, td - 1.0) *
                     (std::pow(q1, td) - 1.0) / (q1 - 1.0);
    const double v = (1.0 - beta2) * p.g1_mag * p.g1_mag * std::pow(p.r, 2.0 * (td - 1.0)) *
                     (std::pow(q2, td) - 1.0) / (q2 - 1.0);
    const double m_hat = m / (1.0 - std::pow(beta1, td));
    const double v_hat = v / (1.0 - std::pow(beta2, td));
    return {m, v, m_hat, v_hat};
}

double importance_k_inf(double beta1, double beta2) { return beta1 / std::sqrt(beta2); }

double importance_C(double beta1, double beta2, double r) {
    return (1.0 - beta1) * std::sqrt(beta2 - r * r) / (std::sqrt(1.0 - beta2) * (beta1 - r));
}

double importance_k_t(double beta1, double beta2, double r, std::uint64_t t) {
    // Literal form, sqrt(1-b2^t)/(1-b1^t) * ((b1/r)^t - 1)/sqrt((b2/r^2)^t - 1),
    // overflows once (b2/r^2)^t leaves double range. Factoring out the growth
    // leaves only powers of quantities below 1:
    //   k_t = k_inf^t * sqrt(1-b2^t) * (1 - (r/b1)^t)
    //         / ((1-b1^t) * sqrt(1 - (r^2/b2)^t))
    const double td = static_cast<double>(t);
    const double kinf = importance_k_inf(beta1, beta2);
    const double b1t = std::pow(beta1, td);
    const double b2t = std::pow(beta2, td);
    const double rb1t = std::pow(r / beta1, td);
    const double r2b2t = std::pow(r * r / beta2, td);
    return std::pow(kinf, td) * std::sqrt(1.0 - b2t) * (1.0 - rb1t) /
           ((1.0 - b1t) * std::sqrt(1.0 - r2b2t));
}

ImportanceReport importance_report(double beta1, double beta2, double r, std::size_t t_max) {
    if (!(r > 0.0 && r < beta1 && beta1 < std::sqrt(beta2) && beta2 < 1.0))
        throw ConfigError("importance_report requires 0 < r < beta1 < sqrt(beta2) < 1");
    if (t_max < 1) throw ConfigError("importance_report: t_max must be >= 1");

    ImportanceReport rep;
    rep.beta1 = beta1;
    rep.beta2 = beta2;
    rep.r = r;
    rep.k_inf = importance_k_inf(beta1, beta2);
    rep.C = importance_C(beta1, beta2, r);
    rep.sigma_first = (1.0 - rep.k_inf) / (rep.C * rep.k_inf);

    // Partial sums of k_t. Since k_t -> k_inf^t, the remaining tail after
    // term t is bounded by k_t * k_inf / (1 - k_inf); stop once that bound
    // drops below 1e-12 of the partial sum.
    constexpr double kRelTail = 1e-12;
    constexpr std::size_t kMaxTerms = 1000000;
    std::vector<double> partial;
    partial.reserve(t_max);
    double s = 0.0;
    double last_k = 0.0;
    std::size_t t = 0;
    while (t < kMaxTerms) {
        ++t;
        last_k = importance_k_t(beta1, beta2, r, t);
        s += last_k;
        if (t <= t_max) partial.push_back(s);
        if (t >= t_max && last_k * rep.k_inf / (1.0 - rep.k_inf) < kRelTail * s) break;
    }
    rep.s_inf = s;
    rep.terms_summed = t;

    rep.k.resize(t_max);
    rep.exact_ratio.resize(t_max);
    rep.approx_ratio.resize(t_max);
    rep.sgd_ratio.resize(t_max);
    for (std::size_t i = 0; i < t_max; ++i) {
        const double td = static_cast<double>(i + 1);
        rep.k[i] = importance_k_t(beta1, beta2, r, i + 1);
        rep.exact_ratio[i] = partial[i] / s;
        rep.approx_ratio[i] = 1.0 - std::pow(rep.k_inf, td);
        rep.sgd_ratio[i] = 1.0 - std::pow(r, td);
    }
    return rep;
}

std::vector<double> histogram_edges(double alpha) {
    constexpr int kBins = 60;
    const double lo = 1e-12;
    const double hi = 10.0 * alpha;
    std::vector<double> edges(kBins + 1);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / kBins;
    for (int i = 0; i <= kBins; ++i) edges[i] = std::exp(log_lo + step * i);
    edges.front() = lo;  // pin exact bounds against rounding
    edges.back() = hi;
    return edges;
}

StepStats step_stats(const std::vector<std::vector<double>>& dtheta_per_step, double alpha,
                     const std::vector<std::size_t>& histogram_steps) {
    if (dtheta_per_step.empty()) throw DomainError("step_stats: empty trajectory");
    StepStats stats;
    stats.norms.reserve(dtheta_per_step.size());
    stats.sign_frac.reserve(dtheta_per_step.size());
    const double lo_band = 0.999 * alpha;
    for (const auto& step : dtheta_per_step) {
        double ss = 0.0;
        std::size_t in_band = 0;
        for (const double d : step) {
            ss += d * d;
            const double a = std::fabs(d);
            if (a >= lo_band && a <= alpha) ++in_band;
        }
        stats.norms.push_back(std::sqrt(ss));
        stats.sign_frac.push_back(step.empty() ? 0.0
                                               : static_cast<double>(in_band) /
                                                     static_cast<double>(step.size()));
    }

    const std::vector<double> edges = histogram_edges(alpha);
    for (const std::size_t s : histogram_steps) {
        if (s < 1 || s > dtheta_per_step.size()) continue;
        StepHistogram h;
        h.step = s;
        h.edges = edges;
        h.counts.assign(edges.size() + 1, 0);
        for (const double d : dtheta_per_step[s - 1]) {
            const double a = std::fabs(d);
            if (a < edges.front()) {
                ++h.counts.front();
            } else if (a > edges.back()) {
                ++h.counts.back();
            } else {
                const auto it = std::upper_bound(edges.begin(), edges.end(), a);
                const std::size_t bin = static_cast<std::size_t>(it - edges.begin());
                // a == edges.back() maps into the last regular bin
                ++h.counts[std::min(bin, edges.size() - 1)];
            }
        }
        stats.histograms.push_back(std::move(h));
    }
    return stats;
}

LandscapeGrid landscape_scan(const LossFn& loss, const std::vector<Tensor>& center, Rng& rng,
                             double half_width, std::size_t resolution) {
    if (resolution < 2) throw ConfigError("landscape_scan: resolution must be >= 2");
    if (!(half_width > 0.0)) throw ConfigError("landscape_scan: half width must be > 0");

    auto make_direction = [&]() {
        std::vector<Tensor> dir;
        dir.reserve(center.size());
        for (const Tensor& p : center) {
            Tensor d(p.shape());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = rng.standard_normal();
            const double dn = l2_norm(d);
            const double pn = l2_norm(p);
            const double factor = dn > 0.0 ? pn / dn : 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) d[i] *= factor;
            dir.push_back(std::move(d));
        }
        return dir;
    };
    const std::vector<Tensor> d1 = make_direction();
    const std::vector<Tensor> d2 = make_direction();

    LandscapeGrid grid;
    grid.resolution = resolution;
    grid.half_width = half_width;
    grid.offsets.resize(resolution);
    for (std::size_t i = 0; i < resolution; ++i)
        grid.offsets[i] = -half_width + 2.0 * half_width * static_cast<double>(i) /
                                            static_cast<double>(resolution - 1);

    grid.loss.resize(resolution * resolution);
    std::vector<Tensor> point = center;
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
            const double a = grid.offsets[i];
            const double b = grid.offsets[j];
            for (std::size_t p = 0; p < center.size(); ++p)
                for (std::size_t k = 0; k < center[p].size(); ++k)
                    point[p][k] = center[p][k] + a * d1[p][k] + b * d2[p][k];
            grid.loss[i * resolution + j] = loss(point);
        }
    }
    return grid;
}

}  // namespace optinit
