#pragma once

// Runtime-dispatched Monte Carlo kernels. The scalar and AVX2 translation
// units instantiate the same templated body at W=1 and W=4; identical
// per-trial arithmetic plus a fixed 4-way accumulator scheme make the two
// backends bit-identical, which the tests assert.

#include <cstdint>
#include <vector>

namespace risecap::kern {

struct ChanTables {
    enum Kind : int { mg = 0, rice = 1 };
    int kind = mg;
    int ncomp = 0;
    // per-component tables for the mixture sampler (Walker alias + shapes)
    std::vector<double> alias_prob;
    std::vector<double> alias_idx; // alias index stored as double for gathers
    std::vector<double> mt_d;      // Marsaglia-Tsang d = shape - 1/3
    std::vector<double> mt_c;      // 1 / sqrt(9 d)
    std::vector<double> inv_b;     // 1/b for boosted (b < 1) comps, else 0
    bool has_boost = false;        // any component with b < 1
    double inv_rate = 1.0;         // 1/c, power = Gamma(b,1) / c
    // exact Rician draw parameters
    double rice_nu = 0.0;
    double rice_sigma = 0.0;
};

struct LinkTables {
    ChanTables hop_a, hop_r, eav;
    int n_elements = 1;
    double gain_b = 1.0;
    double gain_e = 1.0;
};

struct ChunkSums {
    double cb = 0.0;
    double ce = 0.0;
    double cd = 0.0; // sum of per-trial (cb - ce)
};

using EscChunkFn = void (*)(const LinkTables&, uint64_t seed, uint64_t trial0,
                            uint32_t count, ChunkSums&);
using EnvChunkFn = void (*)(const ChanTables&, uint64_t seed, uint64_t trial0,
                            uint32_t count, uint32_t slot, double* out);

struct KernelSet {
    EscChunkFn esc_chunk;
    EnvChunkFn env_chunk;
    const char* name;
};

const KernelSet& scalar_kernels();
const KernelSet* avx2_kernels();  // nullptr when the CPU lacks AVX2+FMA
const KernelSet& active_kernels(); // honors RISECAP_SIMD=scalar|avx2

} // namespace risecap::kern
