#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 constants).
// Stateless: each (counter, key) pair maps to 128 random bits, so any trial
// of any stream can be generated independently and in any order. The kernel
// addresses draws as counter = (block, slot, trial_lo, trial_hi) with the
// 64-bit seed as key.

#include <cstdint>

#include "vec.hpp"

namespace risecap::kern {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

template <int W> struct Bits128 {
    VecU<W> lo; // x1:x0 packed as (x1 << 32) | x0
    VecU<W> hi; // x3:x2 packed as (x3 << 32) | x2
};

// counter words are held one per 64-bit lane, value in the low 32 bits
template <int W>
inline Bits128<W> philox4x32(VecU<W> c0, VecU<W> c1, VecU<W> c2, VecU<W> c3,
                             uint64_t key) {
    const VecU<W> lo32 = VecU<W>::set1(0xFFFFFFFFull);
    const VecU<W> m0 = VecU<W>::set1(kPhiloxM0);
    const VecU<W> m1 = VecU<W>::set1(kPhiloxM1);
    uint32_t k0 = static_cast<uint32_t>(key);
    uint32_t k1 = static_cast<uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const VecU<W> p0 = m0.mul32(c0);
        const VecU<W> p1 = m1.mul32(c2);
        const VecU<W> vk0 = VecU<W>::set1(k0);
        const VecU<W> vk1 = VecU<W>::set1(k1);
        const VecU<W> n0 = (p1.srl(32) ^ c1) ^ vk0;
        const VecU<W> n1 = p1 & lo32;
        const VecU<W> n2 = (p0.srl(32) ^ c3) ^ vk1;
        const VecU<W> n3 = p0 & lo32;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return {c0 | c1.sll(32), c2 | c3.sll(32)};
}

// two uniforms in (0,1) from one 128-bit block
template <int W> struct Uniform2 {
    VecD<W> u1, u2;
};

template <int W> inline VecD<W> u64_to_unit(VecU<W> x) {
    const VecD<W> half = VecD<W>::set1(0.5);
    const VecD<W> scale = VecD<W>::set1(2.220446049250313080847e-16); // 2^-52
    return (u52_to_d(x.srl(12)) + half) * scale;
}

template <int W>
inline Uniform2<W> philox_uniforms(uint64_t seed, VecU<W> trial, uint32_t slot,
                                   uint32_t block) {
    const VecU<W> lo32 = VecU<W>::set1(0xFFFFFFFFull);
    const VecU<W> c0 = VecU<W>::set1(block);
    const VecU<W> c1 = VecU<W>::set1(slot);
    const VecU<W> c2 = trial & lo32;
    const VecU<W> c3 = trial.srl(32);
    const Bits128<W> r = philox4x32<W>(c0, c1, c2, c3, seed);
    return {u64_to_unit(r.lo), u64_to_unit(r.hi)};
}

} // namespace risecap::kern
