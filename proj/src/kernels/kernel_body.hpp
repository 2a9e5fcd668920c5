#pragma once

// Width-generic kernel body instantiated by the scalar (W=1) and AVX2 (W=4)
// translation units. Trials are processed in groups of four with one virtual
// accumulator per group lane, so the reduction order is independent of W and
// the two backends produce bit-identical sums.

#include "kernels.hpp"
#include "philox.hpp"
#include "vec.hpp"
#include "vecmath.hpp"

namespace risecap::kern {

constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kInvLn2 = 1.4426950408889634074;

// envelope draw from a mixture-Gamma table: alias-pick the component, then
// Marsaglia-Tsang squeeze for Gamma(b', 1), boosted by u^(1/b) when b < 1
template <int W>
inline VecD<W> draw_mg_env(const ChanTables& T, uint64_t seed, VecU<W> trial,
                           uint32_t slot) {
    using V = VecD<W>;
    const V one = V::set1(1.0);
    const Uniform2<W> pick = philox_uniforms<W>(seed, trial, slot, 0);
    const Idx<W> cell = to_idx(pick.u1 * V::set1(static_cast<double>(T.ncomp)));
    const V prob = gather(T.alias_prob.data(), cell);
    const V alias = gather(T.alias_idx.data(), cell);
    const Idx<W> comp =
        to_idx(blend(alias, cvt_i32(cell), cmp_lt(pick.u2, prob)));
    const V d = gather(T.mt_d.data(), comp);
    const V c = gather(T.mt_c.data(), comp);
    const V invb = T.has_boost ? gather(T.inv_b.data(), comp) : V::zero();
    V gam = V::zero();
    V u_boost = one;
    V need = cmp_eq(one, one);
    uint32_t block = 1;
    for (int it = 0; it < 64 && any(need); ++it) {
        const Uniform2<W> g = philox_uniforms<W>(seed, trial, slot, block);
        const Uniform2<W> a = philox_uniforms<W>(seed, trial, slot, block + 1);
        block += 2;
        const V r = vsqrt(V::set1(-2.0) * vlog<W>(g.u1));
        const SinCos<W> sc = vsincos<W>(V::set1(kTwoPi) * g.u2);
        const V x = r * sc.c;
        const V t = vfma(c, x, one);
        const V v = t * t * t;
        const V vpos = cmp_gt(v, V::zero());
        const V x2 = x * x;
        // squeeze: u < 1 - 0.0331 x^4 is a sufficient acceptance condition
        // and settles ~90% of candidates without any log
        const V fast =
            m_and(cmp_lt(a.u1, vfma(V::set1(-0.0331), x2 * x2, one)), vpos);
        V acc = m_and(need, fast);
        if (any(m_andnot(need, fast))) {
            const V lv = vlog<W>(blend(one, v, vpos));
            // full test: ln u < 0.5 x^2 + d - d v + d ln v
            V rhs = vfma(V::set1(0.5), x2, d);
            rhs = vfma(d.neg(), v, rhs);
            rhs = vfma(d, lv, rhs);
            const V slow = m_and(cmp_lt(vlog<W>(a.u1), rhs), vpos);
            acc = m_and(need, m_or(fast, slow));
        }
        gam = blend(gam, d * v, acc);
        u_boost = blend(u_boost, a.u2, acc);
        need = m_andnot(need, acc);
    }
    gam = blend(gam, d, need); // unreachable in practice, keeps values finite
    if (T.has_boost) gam = gam * vexp<W>(invb * vlog<W>(u_boost));
    return vsqrt(gam * V::set1(T.inv_rate));
}

template <int W>
inline VecD<W> draw_rice_env(const ChanTables& T, uint64_t seed, VecU<W> trial,
                             uint32_t slot) {
    using V = VecD<W>;
    const Uniform2<W> g = philox_uniforms<W>(seed, trial, slot, 0);
    const V r = vsqrt(V::set1(-2.0) * vlog<W>(g.u1));
    const SinCos<W> sc = vsincos<W>(V::set1(kTwoPi) * g.u2);
    const V sig = V::set1(T.rice_sigma);
    const V re = vfma(sig, r * sc.c, V::set1(T.rice_nu));
    const V im = sig * (r * sc.s);
    return vsqrt(vfma(re, re, im * im));
}

template <int W>
inline VecD<W> draw_env(const ChanTables& T, uint64_t seed, VecU<W> trial,
                        uint32_t slot) {
    return T.kind == ChanTables::rice ? draw_rice_env<W>(T, seed, trial, slot)
                                      : draw_mg_env<W>(T, seed, trial, slot);
}

template <int W>
inline VecD<W> log2_capacity(double gain, VecD<W> env) {
    using V = VecD<W>;
    const V arg = vfma(V::set1(gain), env * env, V::set1(1.0));
    return vlog<W>(arg) * V::set1(kInvLn2);
}

template <int W>
void esc_chunk_impl(const LinkTables& L, uint64_t seed, uint64_t trial0,
                    uint32_t count, ChunkSums& out) {
    using V = VecD<W>;
    constexpr int kGroups = 4 / W;
    const uint32_t n = static_cast<uint32_t>(L.n_elements);
    V acc_b[kGroups], acc_e[kGroups], acc_d[kGroups];
    for (int s = 0; s < kGroups; ++s)
        acc_b[s] = acc_e[s] = acc_d[s] = V::zero();
    for (uint32_t base = 0; base < count; base += 4) {
        for (int s = 0; s < kGroups; ++s) {
            const uint64_t first = trial0 + base + static_cast<uint32_t>(s) * W;
            const VecU<W> trial = VecU<W>::iota_from(first);
            const double rem =
                static_cast<double>(static_cast<int64_t>(count) -
                                    static_cast<int64_t>(base + s * W));
            const V active = cmp_lt(V::lane_iota(), V::set1(rem));
            V a_sum = V::zero();
            for (uint32_t i = 0; i < n; ++i) {
                const V ha = draw_env<W>(L.hop_a, seed, trial, i);
                const V hr = draw_env<W>(L.hop_r, seed, trial, n + i);
                a_sum = a_sum + ha * hr;
            }
            const V he = draw_env<W>(L.eav, seed, trial, 2 * n);
            const V xb = log2_capacity<W>(L.gain_b, a_sum);
            const V xe = log2_capacity<W>(L.gain_e, he);
            acc_b[s] = acc_b[s] + m_and(xb, active);
            acc_e[s] = acc_e[s] + m_and(xe, active);
            acc_d[s] = acc_d[s] + m_and(xb - xe, active);
        }
    }
    double fb[4], fe[4], fd[4];
    for (int s = 0; s < kGroups; ++s) {
        acc_b[s].store(fb + s * W);
        acc_e[s].store(fe + s * W);
        acc_d[s].store(fd + s * W);
    }
    out.cb = (fb[0] + fb[1]) + (fb[2] + fb[3]);
    out.ce = (fe[0] + fe[1]) + (fe[2] + fe[3]);
    out.cd = (fd[0] + fd[1]) + (fd[2] + fd[3]);
}

template <int W>
void env_chunk_impl(const ChanTables& T, uint64_t seed, uint64_t trial0,
                    uint32_t count, uint32_t slot, double* out) {
    for (uint32_t base = 0; base < count; base += W) {
        const VecU<W> trial = VecU<W>::iota_from(trial0 + base);
        const VecD<W> x = draw_env<W>(T, seed, trial, slot);
        double tmp[W];
        x.store(tmp);
        const uint32_t take = count - base < static_cast<uint32_t>(W)
                                  ? count - base
                                  : static_cast<uint32_t>(W);
        for (uint32_t i = 0; i < take; ++i) out[base + i] = tmp[i];
    }
}

} // namespace risecap::kern
