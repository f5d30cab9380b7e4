#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "optinit/rng.hpp"
#include "optinit/tensor.hpp"

namespace optinit {

// Two-layer tanh classifier trained on a synthetic two-blob dataset,
// gradients by hand-written backprop. Small on purpose: large enough to
// have a few hundred coordinates with mixed gradient scales, small enough
// to finite-difference every one of them.
struct MlpSpec {
    std::size_t in_dim = 10;
    std::size_t hidden = 32;
    std::size_t classes = 2;
    std::size_t train_samples = 512;
    double blob_offset = 0.8;  // class centers at +-blob_offset per coordinate
};

struct Dataset {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> x;  // row-major n x dim
    std::vector<int> y;
};

Dataset make_blobs(const MlpSpec& spec, Rng& rng);

// Parameter order: {w1 (hidden x in), b1 (hidden), w2 (classes x hidden),
// b2 (classes)}. Weights are Xavier-normal, biases zero.
std::vector<Tensor> mlp_init_params(const MlpSpec& spec, Rng& rng);

// fan_in + fan_out of the owning layer, biases included.
std::vector<std::size_t> mlp_fan_sums(const MlpSpec& spec);

// Mean softmax cross-entropy of the batch.
double mlp_loss(const MlpSpec& spec, const std::vector<Tensor>& params, const Dataset& data,
                const std::vector<std::size_t>& batch);

// Loss plus gradients of the mean loss for every parameter tensor.
std::pair<double, std::vector<Tensor>> mlp_loss_and_grads(const MlpSpec& spec,
                                                          const std::vector<Tensor>& params,
                                                          const Dataset& data,
                                                          const std::vector<std::size_t>& batch);

std::vector<std::size_t> all_indices(const Dataset& data);

}  // namespace optinit
