#pragma once

#include <cstdint>
#include <optional>

#include "risecap/capacity.hpp"

namespace risecap {

enum class ChannelSource {
    mg_mixture,          // sample the fitted MG term mixtures
    exact_rice_nakagami  // sample the underlying Rice/Nakagami/Rayleigh laws
};

struct McConfig {
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 42;
    ChannelSource channel_source = ChannelSource::mg_mixture;
    int workers = 0;        // 0 = hardware concurrency
    double ci_level = 0.95; // two-sided confidence level for ci_halfwidth
};

// Counter-based stream position: every random draw is addressed by
// (seed, trial, slot, block), so results never depend on worker count or on
// which SIMD kernel executed them. Each sample_mg_envelope call consumes one
// trial index.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint32_t slot = 0;
};

double sample_mg_envelope(const MixtureGamma& dist, RngStream& stream);

// Underlying fading law for exact (non-MG) sampling.
struct ExactChannel {
    enum class Kind { rayleigh, rice, nakagami } kind = Kind::rayleigh;
    double param = 0.0; // rice: K_r linear; nakagami: m; unused for rayleigh
    double omega = 1.0; // mean power
};

struct ExactChannels {
    ExactChannel hop_a, hop_r, eav;
};

// Estimates E[log2(1+beta_B^2 P_s/N_o A^2)] - E[log2(1+beta_E^2 P_s/N_o hE^2)]
// with a batch-means confidence interval (64 batches of counter-addressed
// chunks, reduced in chunk order). Deterministic for fixed (seed, trials).
// The two-argument overload requires source == mg_mixture.
EscResult simulate_esc(const Scenario& scn, const McConfig& cfg);
EscResult simulate_esc(const Scenario& scn, const McConfig& cfg,
                       const std::optional<ExactChannels>& exact);

// Name of the kernel set the dispatcher selected ("scalar" or "avx2");
// override with RISECAP_SIMD=scalar|avx2.
const char* active_simd_name();

} // namespace risecap
