// AVX2 variants of the dense kernels. Element recipes match
// kernels_scalar.cpp exactly (same operations in the same order, negation
// done as a sign-bit flip, no FMA), so outputs are bit-identical to the
// scalar path. Tails shorter than one vector fall through to the scalar
// expressions.

#ifdef OPTINIT_WITH_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "optinit/kernels.hpp"

namespace optinit::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d neg(__m256d x) {
    return _mm256_xor_pd(x, _mm256_set1_pd(-0.0));
}

void add_k(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_k(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void mul_k(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void div_k(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] / b[i];
}

void sqrt_k(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::sqrt(x[i]);
}

void square_k(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d v = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(v, v));
    }
    for (; i < n; ++i) out[i] = x[i] * x[i];
}

void abs_k(const double* x, double* out, std::size_t n) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_and_pd(_mm256_loadu_pd(x + i), mask));
    for (; i < n; ++i) out[i] = std::fabs(x[i]);
}

void sign_k(const double* x, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d mone = _mm256_set1_pd(-1.0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_GT_OQ), one);
        const __m256d negv = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_LT_OQ), mone);
        _mm256_storeu_pd(out + i, _mm256_add_pd(pos, negv));
    }
    for (; i < n; ++i)
        out[i] = static_cast<double>(x[i] > 0.0) - static_cast<double>(x[i] < 0.0);
}

void scale_k(const double* x, double c, double* out, std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(cv, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = c * x[i];
}

void axpy_k(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d prod = _mm256_mul_pd(av, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void adam_k(double* m, double* v, double* theta, double* dtheta, const double* g,
            std::size_t n, const AdamArgs& args) {
    const double omb1 = 1.0 - args.beta1;
    const double omb2 = 1.0 - args.beta2;
    const __m256d b1v = _mm256_set1_pd(args.beta1);
    const __m256d b2v = _mm256_set1_pd(args.beta2);
    const __m256d omb1v = _mm256_set1_pd(omb1);
    const __m256d omb2v = _mm256_set1_pd(omb2);
    const __m256d bc1v = _mm256_set1_pd(args.inv_bc1);
    const __m256d bc2v = _mm256_set1_pd(args.inv_bc2);
    const __m256d lrv = _mm256_set1_pd(args.lr);
    const __m256d epsv = _mm256_set1_pd(args.eps);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        const __m256d mv =
            _mm256_add_pd(_mm256_mul_pd(b1v, _mm256_loadu_pd(m + i)), _mm256_mul_pd(omb1v, gv));
        _mm256_storeu_pd(m + i, mv);
        const __m256d gg = _mm256_mul_pd(gv, gv);
        const __m256d vv =
            _mm256_add_pd(_mm256_mul_pd(b2v, _mm256_loadu_pd(v + i)), _mm256_mul_pd(omb2v, gg));
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_mul_pd(mv, bc1v);
        const __m256d vhat = _mm256_mul_pd(vv, bc2v);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), epsv);
        const __m256d num = _mm256_mul_pd(lrv, mhat);
        const __m256d d = neg(_mm256_div_pd(num, denom));
        _mm256_storeu_pd(dtheta + i, d);
        _mm256_storeu_pd(theta + i, _mm256_add_pd(_mm256_loadu_pd(theta + i), d));
    }
    for (; i < n; ++i) {
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
    const __m256d b2v = _mm256_set1_pd(beta2);
    const __m256d omb2v = _mm256_set1_pd(omb2);
    const __m256d lrv = _mm256_set1_pd(lr);
    const __m256d epsv = _mm256_set1_pd(eps);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        const __m256d gg = _mm256_mul_pd(gv, gv);
        const __m256d vv =
            _mm256_add_pd(_mm256_mul_pd(b2v, _mm256_loadu_pd(v + i)), _mm256_mul_pd(omb2v, gg));
        _mm256_storeu_pd(v + i, vv);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vv), epsv);
        const __m256d num = _mm256_mul_pd(lrv, gv);
        const __m256d d = neg(_mm256_div_pd(num, denom));
        _mm256_storeu_pd(dtheta + i, d);
        _mm256_storeu_pd(theta + i, _mm256_add_pd(_mm256_loadu_pd(theta + i), d));
    }
    for (; i < n; ++i) {
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
    const __m256d muv = _mm256_set1_pd(mu);
    const __m256d lrv = _mm256_set1_pd(lr);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d vv =
            _mm256_add_pd(_mm256_mul_pd(muv, _mm256_loadu_pd(vel + i)), _mm256_loadu_pd(g + i));
        _mm256_storeu_pd(vel + i, vv);
        const __m256d d = neg(_mm256_mul_pd(lrv, vv));
        _mm256_storeu_pd(dtheta + i, d);
        _mm256_storeu_pd(theta + i, _mm256_add_pd(_mm256_loadu_pd(theta + i), d));
    }
    for (; i < n; ++i) {
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
    const __m256d b1v = _mm256_set1_pd(args.beta1);
    const __m256d b2v = _mm256_set1_pd(args.beta2);
    const __m256d omb1v = _mm256_set1_pd(omb1);
    const __m256d omb2v = _mm256_set1_pd(omb2);
    const __m256d bc1v = _mm256_set1_pd(args.inv_bc1);
    const __m256d bc2v = _mm256_set1_pd(args.inv_bc2);
    const __m256d lrv = _mm256_set1_pd(args.lr);
    const __m256d epsv = _mm256_set1_pd(args.eps);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        const __m256d mv =
            _mm256_add_pd(_mm256_mul_pd(b1v, _mm256_loadu_pd(m + i)), _mm256_mul_pd(omb1v, gv));
        _mm256_storeu_pd(m + i, mv);
        const __m256d resid = _mm256_sub_pd(gv, mv);
        const __m256d rr = _mm256_mul_pd(resid, resid);
        __m256d sv =
            _mm256_add_pd(_mm256_mul_pd(b2v, _mm256_loadu_pd(s + i)), _mm256_mul_pd(omb2v, rr));
        sv = _mm256_add_pd(sv, epsv);
        _mm256_storeu_pd(s + i, sv);
        const __m256d mhat = _mm256_mul_pd(mv, bc1v);
        const __m256d shat = _mm256_mul_pd(sv, bc2v);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(shat), epsv);
        const __m256d num = _mm256_mul_pd(lrv, mhat);
        const __m256d d = neg(_mm256_div_pd(num, denom));
        _mm256_storeu_pd(dtheta + i, d);
        _mm256_storeu_pd(theta + i, _mm256_add_pd(_mm256_loadu_pd(theta + i), d));
    }
    for (; i < n; ++i) {
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

const Ops* avx2_ops() {
    static const Ops ops = {add_k,  sub_k,    mul_k,  div_k,  sqrt_k,
                            square_k, abs_k,  sign_k, scale_k, axpy_k,
                            adam_k, rmsprop_k, sgdm_k, adabelief_k, "avx2"};
    return &ops;
}

}  // namespace optinit::kernels

#endif  // OPTINIT_WITH_AVX2
