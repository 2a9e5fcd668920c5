#include "kernel_body.hpp"

namespace risecap::kern {

namespace {

void esc_chunk_scalar(const LinkTables& L, uint64_t seed, uint64_t trial0,
                      uint32_t count, ChunkSums& out) {
    esc_chunk_impl<1>(L, seed, trial0, count, out);
}

void env_chunk_scalar(const ChanTables& T, uint64_t seed, uint64_t trial0,
                      uint32_t count, uint32_t slot, double* out) {
    env_chunk_impl<1>(T, seed, trial0, count, slot, out);
}

const KernelSet kScalar = {esc_chunk_scalar, env_chunk_scalar, "scalar"};

} // namespace

const KernelSet& scalar_kernels() { return kScalar; }

} // namespace risecap::kern
