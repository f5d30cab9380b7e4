#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace optinit {

// Either a (fan_out x fan_in) matrix or a flat vector of length len.
class Shape {
public:
    Shape() = default;

    // Throw ShapeError on zero or negative dimensions.
    static Shape matrix(std::int64_t fan_out, std::int64_t fan_in);
    static Shape flat(std::int64_t len);

    bool is_matrix() const { return is_matrix_; }
    std::size_t rows() const { return rows_; }  // fan_out, or len for flat
    std::size_t cols() const { return cols_; }  // fan_in, 1 for flat
    std::size_t size() const { return rows_ * cols_; }

    // fan_in + fan_out for matrices; flat tensors have no intrinsic fan sum.
    std::size_t fan_sum() const;

    bool operator==(const Shape&) const = default;
    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 1;
    bool is_matrix_ = false;
};

// Dense 64-bit real tensor. Plain data; cheap to move, explicit to copy.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape, double fill = 0.0, std::string name = {});

    const Shape& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    const std::vector<double>& values() const { return data_; }

private:
    Shape shape_;
    std::string name_;
    std::vector<double> data_;
};

// Elementwise operations; operands must have identical shapes (ShapeError
// otherwise). div by an exact zero produces +-Inf, callers guard with eps.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor sqrt(const Tensor& x);
Tensor square(const Tensor& x);
Tensor abs(const Tensor& x);
Tensor sign(const Tensor& x);  // sign(0) = 0
Tensor scale(const Tensor& x, double c);

double sum(const Tensor& x);
double sum_squares(const Tensor& x);
double l2_norm(const Tensor& x);

bool has_nan(const Tensor& x);
bool all_finite(const Tensor& x);

void check_same_shape(const Tensor& a, const Tensor& b, const char* op);

}  // namespace optinit
