#pragma once

#include <cstddef>

namespace optinit::kernels {

// Dense double-precision inner loops behind the tensor and optimizer APIs.
//
// Every kernel exists as a scalar reference implementation and, on x86-64,
// an AVX2 variant selected at runtime. The two variants are bit-identical:
// each element goes through the same sequence of IEEE-754 operations (no
// FMA contraction anywhere in the project, see -ffp-contract=off), so the
// dispatch choice never changes results, only throughput. The equivalence
// suite in tests/unit/kernels_test.cpp enforces this bitwise.

using MapFn = void (*)(const double* x, double* out, std::size_t n);
using ZipFn = void (*)(const double* a, const double* b, double* out, std::size_t n);
using ScaleFn = void (*)(const double* x, double c, double* out, std::size_t n);
using AxpyFn = void (*)(double a, const double* x, double* y, std::size_t n);

struct AdamArgs {
    double beta1;
    double beta2;
    double inv_bc1;  // 1 / (1 - beta1^t)
    double inv_bc2;  // 1 / (1 - beta2^t)
    double lr;
    double eps;
};

// m <- b1*m + (1-b1)*g ; v <- b2*v + (1-b2)*g^2 ;
// d = -lr * (m*inv_bc1) / (sqrt(v*inv_bc2) + eps) ; theta += d ; dtheta = d
using AdamFn = void (*)(double* m, double* v, double* theta, double* dtheta,
                        const double* g, std::size_t n, const AdamArgs& args);

// v <- b2*v + (1-b2)*g^2 ; d = -lr * g / (sqrt(v) + eps) (no bias correction)
using RmspropFn = void (*)(double* v, double* theta, double* dtheta, const double* g,
                           std::size_t n, double beta2, double lr, double eps);

// vel <- mu*vel + g ; d = -lr * vel
using SgdmFn = void (*)(double* vel, double* theta, double* dtheta, const double* g,
                        std::size_t n, double mu, double lr);

// m <- b1*m + (1-b1)*g ; s <- b2*s + (1-b2)*(g-m)^2 + eps ;
// d = -lr * (m*inv_bc1) / (sqrt(s*inv_bc2) + eps)
using BeliefFn = void (*)(double* m, double* s, double* theta, double* dtheta,
                          const double* g, std::size_t n, const AdamArgs& args);

struct Ops {
    ZipFn add;
    ZipFn sub;
    ZipFn mul;
    ZipFn div;
    MapFn sqrt;
    MapFn square;
    MapFn abs;
    MapFn sign;  // sign(0) = 0, sign(NaN) = 0
    ScaleFn scale;
    AxpyFn axpy;
    AdamFn adam;
    RmspropFn rmsprop;
    SgdmFn sgdm;
    BeliefFn adabelief;
    const char* name;
};

enum class Backend { scalar, avx2 };

// Table currently in use. Chosen once at startup: AVX2 when the CPU has it,
// overridable with OPTINIT_KERNELS=scalar|avx2.
const Ops& active();
Backend active_backend();

// True when this binary carries AVX2 kernels and the CPU supports them.
bool avx2_available();

// Test hook; throws ConfigError when the backend is not available.
void set_backend(Backend backend);

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when not compiled in

}  // namespace optinit::kernels
