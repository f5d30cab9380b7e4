#include "optinit/mlp.hpp"

#include <cmath>
#include <numeric>

#include "optinit/errors.hpp"

namespace optinit {

Dataset make_blobs(const MlpSpec& spec, Rng& rng) {
    Dataset d;
    d.n = spec.train_samples;
    d.dim = spec.in_dim;
    d.x.resize(d.n * d.dim);
    d.y.resize(d.n);
    // Alternate classes so any contiguous batch is balanced.
    for (std::size_t i = 0; i < d.n; ++i) {
        const int label = static_cast<int>(i % 2);
        const double center = label == 0 ? spec.blob_offset : -spec.blob_offset;
        for (std::size_t j = 0; j < d.dim; ++j)
            d.x[i * d.dim + j] = center + rng.standard_normal();
        d.y[i] = label;
    }
    return d;
}

std::vector<Tensor> mlp_init_params(const MlpSpec& spec, Rng& rng) {
    const auto h = static_cast<std::int64_t>(spec.hidden);
    const auto in = static_cast<std::int64_t>(spec.in_dim);
    const auto c = static_cast<std::int64_t>(spec.classes);
    Tensor w1(Shape::matrix(h, in), 0.0, "w1");
    Tensor b1(Shape::flat(h), 0.0, "b1");
    Tensor w2(Shape::matrix(c, h), 0.0, "w2");
    Tensor b2(Shape::flat(c), 0.0, "b2");
    const double s1 = std::sqrt(2.0 / static_cast<double>(spec.hidden + spec.in_dim));
    const double s2 = std::sqrt(2.0 / static_cast<double>(spec.classes + spec.hidden));
    for (std::size_t i = 0; i < w1.size(); ++i) w1[i] = s1 * rng.standard_normal();
    for (std::size_t i = 0; i < w2.size(); ++i) w2[i] = s2 * rng.standard_normal();
    return {std::move(w1), std::move(b1), std::move(w2), std::move(b2)};
}

std::vector<std::size_t> mlp_fan_sums(const MlpSpec& spec) {
    const std::size_t l1 = spec.hidden + spec.in_dim;
    const std::size_t l2 = spec.classes + spec.hidden;
    return {l1, l1, l2, l2};
}

std::vector<std::size_t> all_indices(const Dataset& data) {
    std::vector<std::size_t> idx(data.n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

namespace {

struct Forward {
    std::vector<double> hidden;  // tanh activations
    std::vector<double> probs;   // softmax outputs
    double loss = 0.0;
};

Forward forward_one(const MlpSpec& spec, const std::vector<Tensor>& params, const double* x,
                    int label) {
    const Tensor& w1 = params[0];
    const Tensor& b1 = params[1];
    const Tensor& w2 = params[2];
    const Tensor& b2 = params[3];

    Forward f;
    f.hidden.resize(spec.hidden);
    for (std::size_t j = 0; j < spec.hidden; ++j) {
        double z = b1[j];
        for (std::size_t k = 0; k < spec.in_dim; ++k) z += w1[j * spec.in_dim + k] * x[k];
        f.hidden[j] = std::tanh(z);
    }
    std::vector<double> logits(spec.classes);
    double max_logit = -1e300;
    for (std::size_t c = 0; c < spec.classes; ++c) {
        double z = b2[c];
        for (std::size_t j = 0; j < spec.hidden; ++j) z += w2[c * spec.hidden + j] * f.hidden[j];
        logits[c] = z;
        if (z > max_logit) max_logit = z;
    }
    f.probs.resize(spec.classes);
    double denom = 0.0;
    for (std::size_t c = 0; c < spec.classes; ++c) {
        f.probs[c] = std::exp(logits[c] - max_logit);
        denom += f.probs[c];
    }
    for (std::size_t c = 0; c < spec.classes; ++c) f.probs[c] /= denom;
    f.loss = -std::log(f.probs[static_cast<std::size_t>(label)]);
    return f;
}

}  // namespace

double mlp_loss(const MlpSpec& spec, const std::vector<Tensor>& params, const Dataset& data,
                const std::vector<std::size_t>& batch) {
    if (batch.empty()) throw ConfigError("mlp_loss: empty batch");
    double total = 0.0;
    for (const std::size_t i : batch)
        total += forward_one(spec, params, &data.x[i * data.dim], data.y[i]).loss;
    return total / static_cast<double>(batch.size());
}

std::pair<double, std::vector<Tensor>> mlp_loss_and_grads(const MlpSpec& spec,
                                                          const std::vector<Tensor>& params,
                                                          const Dataset& data,
                                                          const std::vector<std::size_t>& batch) {
    if (batch.empty()) throw ConfigError("mlp_loss_and_grads: empty batch");
    const Tensor& w2 = params[2];

    std::vector<Tensor> grads;
    for (const Tensor& p : params) grads.emplace_back(p.shape(), 0.0, p.name());
    Tensor& gw1 = grads[0];
    Tensor& gb1 = grads[1];
    Tensor& gw2 = grads[2];
    Tensor& gb2 = grads[3];

    double total = 0.0;
    std::vector<double> delta2(spec.classes);
    std::vector<double> delta1(spec.hidden);
    for (const std::size_t i : batch) {
        const double* x = &data.x[i * data.dim];
        const int label = data.y[i];
        const Forward f = forward_one(spec, params, x, label);
        total += f.loss;

        for (std::size_t c = 0; c < spec.classes; ++c)
            delta2[c] = f.probs[c] - (static_cast<int>(c) == label ? 1.0 : 0.0);
        for (std::size_t c = 0; c < spec.classes; ++c) {
            gb2[c] += delta2[c];
            for (std::size_t j = 0; j < spec.hidden; ++j)
                gw2[c * spec.hidden + j] += delta2[c] * f.hidden[j];
        }
        for (std::size_t j = 0; j < spec.hidden; ++j) {
            double back = 0.0;
            for (std::size_t c = 0; c < spec.classes; ++c)
                back += w2[c * spec.hidden + j] * delta2[c];
            delta1[j] = back * (1.0 - f.hidden[j] * f.hidden[j]);
        }
        for (std::size_t j = 0; j < spec.hidden; ++j) {
            gb1[j] += delta1[j];
            for (std::size_t k = 0; k < spec.in_dim; ++k)
                gw1[j * spec.in_dim + k] += delta1[j] * x[k];
        }
    }

    const double inv_b = 1.0 / static_cast<double>(batch.size());
    for (Tensor& g : grads)
        for (std::size_t i = 0; i < g.size(); ++i) g[i] *= inv_b;
    return {total * inv_b, std::move(grads)};
}

}  // namespace optinit
