#include "optinit/tensor.hpp"

#include <cmath>

#include "optinit/errors.hpp"
#include "optinit/kernels.hpp"

namespace optinit {

Shape Shape::matrix(std::int64_t fan_out, std::int64_t fan_in) {
    if (fan_out < 1 || fan_in < 1)
        throw ShapeError("matrix shape requires positive dimensions, got (" +
                         std::to_string(fan_out) + ", " + std::to_string(fan_in) + ")");
    Shape s;
    s.rows_ = static_cast<std::size_t>(fan_out);
    s.cols_ = static_cast<std::size_t>(fan_in);
    s.is_matrix_ = true;
    return s;
}

Shape Shape::flat(std::int64_t len) {
    if (len < 1) throw ShapeError("flat shape requires positive length, got " + std::to_string(len));
    Shape s;
    s.rows_ = static_cast<std::size_t>(len);
    s.cols_ = 1;
    s.is_matrix_ = false;
    return s;
}

std::size_t Shape::fan_sum() const {
    if (!is_matrix_) throw ShapeError("fan_sum is only defined for matrix shapes");
    return rows_ + cols_;
}

std::string Shape::str() const {
    return is_matrix_ ? std::to_string(rows_) + "x" + std::to_string(cols_)
                      : std::to_string(rows_);
}

Tensor::Tensor(Shape shape, double fill, std::string name)
    : shape_(shape), name_(std::move(name)), data_(shape.size(), fill) {
    if (shape.size() == 0) throw ShapeError("tensor shape is uninitialized");
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!(a.shape() == b.shape()))
        throw ShapeError(std::string(op) + ": shape mismatch " + a.shape().str() + " vs " +
                         b.shape().str());
}

namespace {

Tensor zip(const Tensor& a, const Tensor& b, kernels::ZipFn fn, const char* op) {
    check_same_shape(a, b, op);
    Tensor out(a.shape());
    fn(a.data(), b.data(), out.data(), a.size());
    return out;
}

Tensor map(const Tensor& x, kernels::MapFn fn) {
    Tensor out(x.shape());
    fn(x.data(), out.data(), x.size());
    return out;
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) { return zip(a, b, kernels::active().add, "add"); }
Tensor sub(const Tensor& a, const Tensor& b) { return zip(a, b, kernels::active().sub, "sub"); }
Tensor mul(const Tensor& a, const Tensor& b) { return zip(a, b, kernels::active().mul, "mul"); }
Tensor div(const Tensor& a, const Tensor& b) { return zip(a, b, kernels::active().div, "div"); }
Tensor sqrt(const Tensor& x) { return map(x, kernels::active().sqrt); }
Tensor square(const Tensor& x) { return map(x, kernels::active().square); }
Tensor abs(const Tensor& x) { return map(x, kernels::active().abs); }
Tensor sign(const Tensor& x) { return map(x, kernels::active().sign); }

Tensor scale(const Tensor& x, double c) {
    Tensor out(x.shape());
    kernels::active().scale(x.data(), c, out.data(), x.size());
    return out;
}

// Reductions stay scalar with a fixed left-to-right order so that results
// never depend on the selected kernel backend.
double sum(const Tensor& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i];
    return acc;
}

double sum_squares(const Tensor& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * x[i];
    return acc;
}

double l2_norm(const Tensor& x) { return std::sqrt(sum_squares(x)); }

bool has_nan(const Tensor& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::isnan(x[i])) return true;
    return false;
}

bool all_finite(const Tensor& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i])) return false;
    return true;
}

}  // namespace optinit
