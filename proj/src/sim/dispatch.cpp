#include <cstdlib>
#include <stdexcept>
#include <string>

#include "daqc/sim/kernels.hpp"

namespace daqc::sim {

const KernelTable& scalar_table();
#if defined(DAQC_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif

namespace {

bool cpu_supports_avx2() {
#if defined(DAQC_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend initial_backend() {
    if (const char* env = std::getenv("DAQC_SIMD")) {
        const std::string want(env);
        if (want == "scalar") return Backend::Scalar;
        if (want == "avx2") {
            if (!cpu_supports_avx2())
                throw std::runtime_error("DAQC_SIMD=avx2 but AVX2 is unavailable");
            return Backend::Avx2;
        }
        throw std::runtime_error("DAQC_SIMD must be 'scalar' or 'avx2', got '" + want + "'");
    }
    return cpu_supports_avx2() ? Backend::Avx2 : Backend::Scalar;
}

Backend& backend_state() {
    static Backend backend = initial_backend();
    return backend;
}

}  // namespace

bool backend_available(Backend b) {
    return b == Backend::Scalar || cpu_supports_avx2();
}

Backend active_backend() { return backend_state(); }

void set_backend(Backend b) {
    if (!backend_available(b)) throw std::runtime_error("requested SIMD backend is unavailable");
    backend_state() = b;
}

const KernelTable& kernel_table(Backend b) {
#if defined(DAQC_HAVE_AVX2_TU)
    if (b == Backend::Avx2) return avx2_table();
#else
    if (b == Backend::Avx2) throw std::runtime_error("AVX2 kernels not compiled in");
#endif
    return scalar_table();
}

const KernelTable& kernels() { return kernel_table(active_backend()); }

}  // namespace daqc::sim
