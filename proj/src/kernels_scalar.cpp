#include <cmath>
#include <cstddef>

#include "optinit/kernels.hpp"

// Reference kernels. The AVX2 variants mirror these element recipes
// operation for operation; keep the two files in sync.

namespace optinit::kernels {
namespace {

void add_k(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_k(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void mul_k(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void div_k(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}

void sqrt_k(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(x[i]);
}

void square_k(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * x[i];
}

void abs_k(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(x[i]);
}

void sign_k(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<double>(x[i] > 0.0) - static_cast<double>(x[i] < 0.0);
}

void scale_k(const double* x, double c, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = c * x[i];
}

void axpy_k(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void adam_k(double* m, double* v, double* theta, double* dtheta, const double* g,
            std::size_t n, const AdamArgs& args) {
    const double omb1 = 1.0 - args.beta1;
    const double omb2 = 1.0 - args.beta2;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = args.beta1 * m[i] + omb1 * g[i];
        const double gg = g[i] * g[i];
        v[i] = args.beta2 * v[i] + omb2 * gg;
        const double mhat = m[i] * args.inv_bc1;
        const double vhat = v[i] * args.inv_bc2;
        const double denom = std::sqrt(vhat) + args.eps;
        const double num = args.lr * mhat;
        const double d = -(num / denom);
        dtheta[i] = d;
        theta[i] = theta[i] + d;
    }
}

void rmsprop_k(double* v, double* theta, double* dtheta, const double* g, std::size_t n,
               double beta2, double lr, double eps) {
    const double omb2 = 1.0 - beta2;
    for (std::size_t i = 0; i < n; ++i) {
        const double gg = g[i] * g[i];
        v[i] = beta2 * v[i] + omb2 * gg;
        const double denom = std::sqrt(v[i]) + eps;
        const double num = lr * g[i];
        const double d = -(num / denom);
        dtheta[i] = d;
        theta[i] = theta[i] + d;
    }
}

void sgdm_k(double* vel, double* theta, double* dtheta, const double* g, std::size_t n,
            double mu, double lr) {
    for (std::size_t i = 0; i < n; ++i) {
        vel[i] = mu * vel[i] + g[i];
        const double d = -(lr * vel[i]);
        dtheta[i] = d;
        theta[i] = theta[i] + d;
    }
}

void adabelief_k(double* m, double* s, double* theta, double* dtheta, const double* g,
                 std::size_t n, const AdamArgs& args) {
    const double omb1 = 1.0 - args.beta1;
    const double omb2 = 1.0 - args.beta2;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = args.beta1 * m[i] + omb1 * g[i];
        const double resid = g[i] - m[i];
        const double rr = resid * resid;
        s[i] = args.beta2 * s[i] + omb2 * rr;
        s[i] = s[i] + args.eps;
        const double mhat = m[i] * args.inv_bc1;
        const double shat = s[i] * args.inv_bc2;
        const double denom = std::sqrt(shat) + args.eps;
        const double num = args.lr * mhat;
        const double d = -(num / denom);
        dtheta[i] = d;
        theta[i] = theta[i] + d;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {add_k,  sub_k,    mul_k,  div_k,  sqrt_k,
                            square_k, abs_k,  sign_k, scale_k, axpy_k,
                            adam_k, rmsprop_k, sgdm_k, adabelief_k, "scalar"};
    return ops;
}

}  // namespace optinit::kernels
