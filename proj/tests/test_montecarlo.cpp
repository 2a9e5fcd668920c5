#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "kernels/kernels.hpp"
#include "kernels/philox.hpp"
#include "kernels/vecmath.hpp"
#include "risecap/montecarlo.hpp"

using namespace risecap;
namespace kern = risecap::kern;

namespace {
double rel(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

Scenario rice_scenario(int n) {
    Scenario scn;
    scn.n_elements = n;
    scn.hop_a = fit_rice(std::pow(10.0, 0.5), 20);
    scn.hop_r = scn.hop_a;
    scn.eav = fit_nakagami(2.0);
    return scn;
}
} // namespace

// ---- counter-based generator ----------------------------------------------

TEST_CASE("philox4x32-10 known-answer vectors") {
    using VU = kern::VecU<1>;
    auto run = [](uint64_t c0, uint64_t c1, uint64_t c2, uint64_t c3,
                  uint64_t key) {
        return kern::philox4x32<1>(VU::set1(c0), VU::set1(c1), VU::set1(c2),
                                   VU::set1(c3), key);
    };
    // reference vectors from the Random123 distribution (kat_vectors)
    const auto zeros = run(0, 0, 0, 0, 0);
    CHECK(zeros.lo.v == 0xe169c58d6627e8d5ull);
    CHECK(zeros.hi.v == 0x9b00dbd8bc57ac4cull);

    const auto ones = run(0xffffffffull, 0xffffffffull, 0xffffffffull,
                          0xffffffffull, 0xffffffffffffffffull);
    CHECK(ones.lo.v == 0x41c83b0e408f276dull);
    CHECK(ones.hi.v == 0x6d5451fda20bc7c6ull);

    const auto pi = run(0x243f6a88ull, 0x85a308d3ull, 0x13198a2eull,
                        0x03707344ull, 0x299f31d0a4093822ull);
    CHECK(pi.lo.v == 0x94fdccebd16cfe09ull);
    CHECK(pi.hi.v == 0x24126ea15001e420ull);
}

TEST_CASE("u64_to_unit stays inside the open interval") {
    using VU = kern::VecU<1>;
    const double lo = kern::u64_to_unit<1>(VU::set1(0)).v;
    const double hi = kern::u64_to_unit<1>(VU::set1(~uint64_t{0})).v;
    CHECK(lo == std::ldexp(1.0, -53));
    CHECK(hi == 1.0 - std::ldexp(1.0, -53));
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
}

TEST_CASE("philox uniforms decorrelate across slots and blocks") {
    using VU = kern::VecU<1>;
    const auto a = kern::philox_uniforms<1>(7, VU::set1(1), 0, 0);
    const auto b = kern::philox_uniforms<1>(7, VU::set1(1), 1, 0);
    const auto c = kern::philox_uniforms<1>(7, VU::set1(1), 0, 1);
    const auto d = kern::philox_uniforms<1>(7, VU::set1(2), 0, 0);
    CHECK(a.u1.v != b.u1.v);
    CHECK(a.u1.v != c.u1.v);
    CHECK(a.u1.v != d.u1.v);
    // reproducible: same address, same bits
    const auto a2 = kern::philox_uniforms<1>(7, VU::set1(1), 0, 0);
    CHECK(a.u1.v == a2.u1.v);
    CHECK(a.u2.v == a2.u2.v);
}

// ---- vector math against libm ----------------------------------------------

TEST_CASE("vlog matches std::log") {
    using V = kern::VecD<1>;
    for (int e = -300; e <= 300; e += 50)
        for (double m : {1.0, 1.2247, 1.4142, 1.5, 1.9999}) {
            const double x = std::ldexp(m, e);
            const double want = std::log(x);
            CHECK(std::fabs(kern::vlog(V::set1(x)).v - want) <=
                  5e-15 * std::max(1.0, std::fabs(want)));
        }
}

TEST_CASE("vexp matches std::exp") {
    using V = kern::VecD<1>;
    for (double x = -690.0; x <= 690.0; x += 13.37)
        CHECK(rel(kern::vexp(V::set1(x)).v, std::exp(x)) < 5e-15);
}

TEST_CASE("vsincos matches libm on [0, 2pi]") {
    using V = kern::VecD<1>;
    for (double x = 0.0; x <= 6.2831853; x += 0.0371) {
        const auto sc = kern::vsincos(V::set1(x));
        CHECK(std::fabs(sc.s.v - std::sin(x)) < 5e-15);
        CHECK(std::fabs(sc.c.v - std::cos(x)) < 5e-15);
    }
}

// ---- kernel backends --------------------------------------------------------

namespace {
// hand-rolled tables: Rice hops (K = 2), eavesdropper mixture with a boosted
// (b < 1) component so the Gamma(b+1) * U^(1/b) path is exercised
kern::LinkTables sample_tables(int n_elements) {
    kern::ChanTables rice;
    rice.kind = kern::ChanTables::rice;
    rice.rice_nu = std::sqrt(2.0 / 3.0);
    rice.rice_sigma = std::sqrt(1.0 / 6.0);

    kern::ChanTables mix; // weights 0.3 / 0.7 on shapes 0.6 / 1.7
    mix.kind = kern::ChanTables::mg;
    mix.ncomp = 2;
    mix.alias_prob = {0.6, 1.0};
    mix.alias_idx = {1.0, 1.0};
    mix.mt_d = {1.6 - 1.0 / 3.0, 1.7 - 1.0 / 3.0};
    mix.mt_c = {1.0 / std::sqrt(9.0 * (1.6 - 1.0 / 3.0)),
                1.0 / std::sqrt(9.0 * (1.7 - 1.0 / 3.0))};
    mix.inv_b = {1.0 / 0.6, 0.0};
    mix.has_boost = true;
    mix.inv_rate = 1.0 / 1.3;

    kern::LinkTables link;
    link.hop_a = rice;
    link.hop_r = rice;
    link.eav = mix;
    link.n_elements = n_elements;
    link.gain_b = 1.7;
    link.gain_e = 0.4;
    return link;
}
} // namespace

TEST_CASE("scalar and AVX2 kernels are bit-identical") {
    const kern::KernelSet* avx2 = kern::avx2_kernels();
    if (!avx2) {
        MESSAGE("AVX2 backend unavailable on this host; skipping");
        return;
    }
    const kern::KernelSet& scalar = kern::scalar_kernels();
    const kern::LinkTables link = sample_tables(5);
    for (uint32_t count : {1u, 4u, 1000u, 1003u}) {
        kern::ChunkSums s{}, v{};
        scalar.esc_chunk(link, 99, 1234567, count, s);
        avx2->esc_chunk(link, 99, 1234567, count, v);
        CHECK(s.cb == v.cb);
        CHECK(s.ce == v.ce);
        CHECK(s.cd == v.cd);
    }
    std::vector<double> es(1003), ev(1003);
    scalar.env_chunk(link.eav, 5, 17, 1003, 3, es.data());
    avx2->env_chunk(link.eav, 5, 17, 1003, 3, ev.data());
    CHECK(es == ev);
    scalar.env_chunk(link.hop_a, 5, 17, 721, 0, es.data());
    avx2->env_chunk(link.hop_a, 5, 17, 721, 0, ev.data());
    CHECK(std::equal(es.begin(), es.begin() + 721, ev.begin()));
}

TEST_CASE("the dispatcher picked a working backend") {
    const std::string name = active_simd_name();
    CHECK((name == "scalar" || name == "avx2"));
}

// ---- sampler distributions -------------------------------------------------

TEST_CASE("mixture sampler hits the distribution moments") {
    RngStream stream{2024, 0, 0};
    const MixtureGamma ray = fit_rayleigh(1.0);
    double sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = sample_mg_envelope(ray, stream);
        sum2 += x * x;
    }
    CHECK(std::fabs(sum2 / n - 1.0) < 0.01);

    stream = {2025, 0, 1};
    const MixtureGamma nak2 = fit_nakagami(2.0);
    double sum4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_mg_envelope(nak2, stream);
        sum4 += x * x * x * x;
    }
    CHECK(std::fabs(sum4 / n - 1.5) < 0.02);
}

TEST_CASE("boosted components (b < 1) sample correctly") {
    // two-term mixture with b = {0.6, 1.4}, power weights {0.4, 0.6}:
    // E[X^2] = (0.4*0.6 + 0.6*1.4) / c = 0.9 with c = 1.2
    MixtureGamma d;
    d.c = 1.2;
    const double w[2] = {0.4, 0.6}, b[2] = {0.6, 1.4};
    for (int i = 0; i < 2; ++i)
        d.terms.push_back(
            {w[i] * std::exp(b[i] * std::log(d.c) - std::lgamma(b[i])), b[i]});
    validate(d);
    RngStream stream{77, 0, 0};
    double sum2 = 0.0;
    const int n = 300000;
    for (int i = 0; i < n; ++i) {
        const double x = sample_mg_envelope(d, stream);
        sum2 += x * x;
    }
    CHECK(std::fabs(sum2 / n - 0.9) < 0.01);
}

TEST_CASE("rice mixture tracks the exact Rice law (KS distance)") {
    const MixtureGamma rice = fit_rice(std::pow(10.0, 0.5), 20);
    const int n = 100000;
    std::vector<double> xs(n);
    RngStream stream{31337, 0, 0};
    for (double& x : xs) x = sample_mg_envelope(rice, stream);
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = mg_envelope_cdf(rice, xs[i]);
        ks = std::max(ks, std::fabs(f - (i + 1.0) / n));
        ks = std::max(ks, std::fabs(f - static_cast<double>(i) / n));
    }
    // the sampler and the cdf share the mixture, so this is a pure KS test;
    // 1.36/sqrt(n) is the 95% band
    CHECK(ks < 0.01);
}

TEST_CASE("rng stream addressing is positional") {
    const MixtureGamma nak2 = fit_nakagami(2.0);
    RngStream a{5, 10, 2};
    const double x1 = sample_mg_envelope(nak2, a);
    CHECK(a.trial == 11);
    const double x2 = sample_mg_envelope(nak2, a);
    CHECK(x1 != x2);
    RngStream again{5, 10, 2};
    CHECK(sample_mg_envelope(nak2, again) == x1);
    RngStream other_slot{5, 10, 3};
    CHECK(sample_mg_envelope(nak2, other_slot) != x1);
}

// ---- full estimator ---------------------------------------------------------

TEST_CASE("simulate_esc agrees with the closed form") {
    const Scenario scn = rice_scenario(4);
    const EscResult cf = ergodic_secrecy_capacity(scn);
    McConfig cfg;
    cfg.trials = 1000000;
    cfg.seed = 20260814;
    cfg.ci_level = 0.99;
    const EscResult mc = simulate_esc(scn, cfg);
    REQUIRE(mc.ci_halfwidth);
    CHECK(*mc.ci_halfwidth < 0.004);
    CHECK(std::fabs(mc.cs - cf.cs) < *mc.ci_halfwidth);
    CHECK(mc.method == Method::monte_carlo);
    CHECK(mc.cs == mc.cb - mc.ce);
}

TEST_CASE("worker count does not change a single bit") {
    const Scenario scn = rice_scenario(3);
    McConfig cfg;
    cfg.trials = 200000;
    cfg.seed = 123;
    cfg.workers = 1;
    const EscResult first = simulate_esc(scn, cfg);
    for (int workers : {2, 5}) {
        cfg.workers = workers;
        const EscResult r = simulate_esc(scn, cfg);
        CHECK(r.cb == first.cb);
        CHECK(r.ce == first.ce);
        CHECK(r.cs == first.cs);
        CHECK(*r.ci_halfwidth == *first.ci_halfwidth);
    }
}

TEST_CASE("confidence width scales like the Student t quantile") {
    const Scenario scn = rice_scenario(2);
    McConfig cfg;
    cfg.trials = 500000;
    cfg.seed = 9;
    cfg.ci_level = 0.99;
    const EscResult w99 = simulate_esc(scn, cfg);
    cfg.ci_level = 0.95;
    const EscResult w95 = simulate_esc(scn, cfg);
    // same samples, same batch variance: the widths differ by exactly the
    // ratio of t quantiles at 63 degrees of freedom (reference values from a
    // 30-digit inverse-beta evaluation)
    const double want = 2.65614502509986169 / 1.99834054252074158;
    CHECK(rel(*w99.ci_halfwidth / *w95.ci_halfwidth, want) < 1e-9);
}

TEST_CASE("tiny runs behave") {
    const Scenario scn = rice_scenario(1);
    McConfig cfg;
    cfg.trials = 1;
    cfg.seed = 4;
    const EscResult r = simulate_esc(scn, cfg);
    CHECK(!r.ci_halfwidth); // one chunk, no batch variance
    CHECK(std::isfinite(r.cs));
    cfg.trials = 100;
    CHECK(simulate_esc(scn, cfg).ci_halfwidth.has_value());
}

TEST_CASE("exact-law sampling stays near the mixture approximation") {
    const Scenario scn = rice_scenario(4);
    McConfig cfg;
    cfg.trials = 300000;
    cfg.seed = 2;
    cfg.ci_level = 0.99;
    const EscResult mg = simulate_esc(scn, cfg);
    cfg.channel_source = ChannelSource::exact_rice_nakagami;
    ExactChannels exact;
    exact.hop_a = {ExactChannel::Kind::rice, std::pow(10.0, 0.5), 1.0};
    exact.hop_r = exact.hop_a;
    exact.eav = {ExactChannel::Kind::nakagami, 2.0, 1.0};
    const EscResult ex = simulate_esc(scn, cfg, exact);
    CHECK(std::fabs(mg.cs - ex.cs) < 0.02);
}

TEST_CASE("configuration validation") {
    const Scenario scn = rice_scenario(2);
    McConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(simulate_esc(scn, cfg), std::invalid_argument);
    cfg = {};
    cfg.ci_level = 1.0;
    CHECK_THROWS_AS(simulate_esc(scn, cfg), std::invalid_argument);
    cfg = {};
    cfg.workers = -2;
    CHECK_THROWS_AS(simulate_esc(scn, cfg), std::invalid_argument);

    // source/channel mismatches
    cfg = {};
    cfg.trials = 10;
    cfg.channel_source = ChannelSource::exact_rice_nakagami;
    CHECK_THROWS_AS(simulate_esc(scn, cfg), std::invalid_argument);
    ExactChannels exact;
    cfg.channel_source = ChannelSource::mg_mixture;
    CHECK_THROWS_AS(simulate_esc(scn, cfg, exact), std::invalid_argument);

    exact.eav = {ExactChannel::Kind::nakagami, 0.3, 1.0}; // m < 1/2
    cfg.channel_source = ChannelSource::exact_rice_nakagami;
    CHECK_THROWS_AS(simulate_esc(scn, cfg, exact), std::invalid_argument);
}
