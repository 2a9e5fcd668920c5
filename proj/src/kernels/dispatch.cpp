#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace risecap::kern {

const KernelSet& active_kernels() {
    static const KernelSet& chosen = []() -> const KernelSet& {
        const char* env = std::getenv("RISECAP_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
        if (env && std::strcmp(env, "avx2") == 0) {
            const KernelSet* a = avx2_kernels();
            if (!a)
                throw std::runtime_error(
                    "RISECAP_SIMD=avx2 requested but CPU lacks AVX2+FMA");
            return *a;
        }
        if (env && *env)
            throw std::runtime_error(
                std::string("unknown RISECAP_SIMD value: ") + env);
        const KernelSet* a = avx2_kernels();
        return a ? *a : scalar_kernels();
    }();
    return chosen;
}

} // namespace risecap::kern
