#include <cstdlib>
#include <string>

#include "optinit/errors.hpp"
#include "optinit/kernels.hpp"

namespace optinit::kernels {
namespace {

const Ops* g_active = nullptr;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops* pick_default() {
    const char* env = std::getenv("OPTINIT_KERNELS");
    const std::string want = env ? env : "auto";
    if (want == "scalar") return &scalar_ops();
    if (want == "avx2") {
        if (!avx2_available()) throw ConfigError("OPTINIT_KERNELS=avx2 but AVX2 is unavailable");
        return avx2_ops();
    }
    return avx2_available() ? avx2_ops() : &scalar_ops();
}

}  // namespace

#ifndef OPTINIT_WITH_AVX2
const Ops* avx2_ops() { return nullptr; }
#endif

bool avx2_available() { return avx2_ops() != nullptr && cpu_has_avx2(); }

const Ops& active() {
    if (!g_active) g_active = pick_default();
    return *g_active;
}

Backend active_backend() {
    return &active() == &scalar_ops() ? Backend::scalar : Backend::avx2;
}

void set_backend(Backend backend) {
    if (backend == Backend::scalar) {
        g_active = &scalar_ops();
        return;
    }
    if (!avx2_available()) throw ConfigError("AVX2 backend is not available on this machine");
    g_active = avx2_ops();
}

}  // namespace optinit::kernels
