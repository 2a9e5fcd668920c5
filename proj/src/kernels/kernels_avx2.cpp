// Compiled with -mavx2 -mfma; callers must gate on avx2_kernels() != nullptr.

#include "kernel_body.hpp"

namespace risecap::kern {

namespace {

void esc_chunk_avx2(const LinkTables& L, uint64_t seed, uint64_t trial0,
                    uint32_t count, ChunkSums& out) {
    esc_chunk_impl<4>(L, seed, trial0, count, out);
}

void env_chunk_avx2(const ChanTables& T, uint64_t seed, uint64_t trial0,
                    uint32_t count, uint32_t slot, double* out) {
    env_chunk_impl<4>(T, seed, trial0, count, slot, out);
}

const KernelSet kAvx2 = {esc_chunk_avx2, env_chunk_avx2, "avx2"};

} // namespace

const KernelSet* avx2_kernels() {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &kAvx2;
    return nullptr;
}

} // namespace risecap::kern
