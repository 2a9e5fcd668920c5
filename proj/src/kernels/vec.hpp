#pragma once

// Width-generic SIMD wrapper. Vec<1> is plain scalar code, Vec<4> maps to
// AVX2 256-bit lanes. Both widths go through the same named operations so a
// kernel templated on W produces bit-identical per-trial arithmetic: every
// operation here is either a single IEEE double op on both paths or an exact
// bit manipulation.

#include <cmath>
#include <cstdint>
#include <cstring>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace risecap::kern {

inline double bits_to_d(uint64_t u) {
    double d;
    std::memcpy(&d, &u, 8);
    return d;
}
inline uint64_t d_to_bits(double d) {
    uint64_t u;
    std::memcpy(&u, &d, 8);
    return u;
}

template <int W> struct VecD;
template <int W> struct VecU;
template <int W> struct Idx;

// ---------------------------------------------------------------- scalar ---

template <> struct VecU<1> {
    uint64_t v;
    static VecU set1(uint64_t x) { return {x}; }
    static VecU iota_from(uint64_t base) { return {base}; }
    friend VecU operator&(VecU a, VecU b) { return {a.v & b.v}; }
    friend VecU operator|(VecU a, VecU b) { return {a.v | b.v}; }
    friend VecU operator^(VecU a, VecU b) { return {a.v ^ b.v}; }
    friend VecU operator+(VecU a, VecU b) { return {a.v + b.v}; }
    VecU srl(int k) const { return {v >> k}; }
    VecU sll(int k) const { return {v << k}; }
    // 32x32 -> 64 multiply of the low halves, as _mm256_mul_epu32
    VecU mul32(VecU b) const {
        return {static_cast<uint64_t>(static_cast<uint32_t>(v)) *
                static_cast<uint32_t>(b.v)};
    }
};

template <> struct Idx<1> {
    int32_t i;
};

template <> struct VecD<1> {
    double v;
    static VecD set1(double x) { return {x}; }
    static VecD zero() { return {0.0}; }
    static VecD lane_iota() { return {0.0}; }
    void store(double* p) const { *p = v; }
    friend VecD operator+(VecD a, VecD b) { return {a.v + b.v}; }
    friend VecD operator-(VecD a, VecD b) { return {a.v - b.v}; }
    friend VecD operator*(VecD a, VecD b) { return {a.v * b.v}; }
    friend VecD operator/(VecD a, VecD b) { return {a.v / b.v}; }
    VecD neg() const { return {-v}; }
};

using MaskD1 = VecD<1>;

inline VecD<1> vfma(VecD<1> a, VecD<1> b, VecD<1> c) {
    return {std::fma(a.v, b.v, c.v)};
}
inline VecD<1> vsqrt(VecD<1> a) { return {std::sqrt(a.v)}; }
inline VecD<1> vnearbyint(VecD<1> a) { return {std::nearbyint(a.v)}; }
inline VecU<1> d2u(VecD<1> a) { return {d_to_bits(a.v)}; }
inline VecD<1> u2d(VecU<1> a) { return {bits_to_d(a.v)}; }
// exact for inputs < 2^52
inline VecD<1> u52_to_d(VecU<1> a) { return {static_cast<double>(a.v)}; }

// masks: all-ones / all-zero bit patterns viewed as doubles
inline VecD<1> cmp_lt(VecD<1> a, VecD<1> b) {
    return {bits_to_d(a.v < b.v ? ~uint64_t{0} : 0)};
}
inline VecD<1> cmp_gt(VecD<1> a, VecD<1> b) {
    return {bits_to_d(a.v > b.v ? ~uint64_t{0} : 0)};
}
inline VecD<1> cmp_eq(VecD<1> a, VecD<1> b) {
    return {bits_to_d(a.v == b.v ? ~uint64_t{0} : 0)};
}
inline VecD<1> blend(VecD<1> no, VecD<1> yes, VecD<1> mask) {
    return {d_to_bits(mask.v) ? yes.v : no.v};
}
inline VecD<1> m_and(VecD<1> a, VecD<1> b) {
    return {bits_to_d(d_to_bits(a.v) & d_to_bits(b.v))};
}
inline VecD<1> m_or(VecD<1> a, VecD<1> b) {
    return {bits_to_d(d_to_bits(a.v) | d_to_bits(b.v))};
}
inline VecD<1> m_andnot(VecD<1> a, VecD<1> b) { // a & ~b
    return {bits_to_d(d_to_bits(a.v) & ~d_to_bits(b.v))};
}
inline VecD<1> vxor(VecD<1> a, VecD<1> b) {
    return {bits_to_d(d_to_bits(a.v) ^ d_to_bits(b.v))};
}
inline bool any(VecD<1> m) { return d_to_bits(m.v) != 0; }

inline Idx<1> to_idx(VecD<1> a) { return {static_cast<int32_t>(a.v)}; }
inline VecD<1> gather(const double* p, Idx<1> i) { return {p[i.i]}; }
inline VecD<1> cvt_i32(Idx<1> i) { return {static_cast<double>(i.i)}; }
// 2^n for integral-valued n (|n| modest)
inline VecD<1> exp2i(VecD<1> n) {
    const int64_t k = static_cast<int64_t>(n.v);
    return {bits_to_d(static_cast<uint64_t>(k + 1023) << 52)};
}

// ------------------------------------------------------------------ AVX2 ---

#if defined(__AVX2__) && defined(__FMA__)

template <> struct VecU<4> {
    __m256i v;
    static VecU set1(uint64_t x) {
        return {_mm256_set1_epi64x(static_cast<long long>(x))};
    }
    static VecU iota_from(uint64_t base) {
        return {_mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(base)),
                                 _mm256_set_epi64x(3, 2, 1, 0))};
    }
    friend VecU operator&(VecU a, VecU b) {
        return {_mm256_and_si256(a.v, b.v)};
    }
    friend VecU operator|(VecU a, VecU b) {
        return {_mm256_or_si256(a.v, b.v)};
    }
    friend VecU operator^(VecU a, VecU b) {
        return {_mm256_xor_si256(a.v, b.v)};
    }
    friend VecU operator+(VecU a, VecU b) {
        return {_mm256_add_epi64(a.v, b.v)};
    }
    VecU srl(int k) const { return {_mm256_srli_epi64(v, k)}; }
    VecU sll(int k) const { return {_mm256_slli_epi64(v, k)}; }
    VecU mul32(VecU b) const { return {_mm256_mul_epu32(v, b.v)}; }
};

template <> struct Idx<4> {
    __m128i i;
};

template <> struct VecD<4> {
    __m256d v;
    static VecD set1(double x) { return {_mm256_set1_pd(x)}; }
    static VecD zero() { return {_mm256_setzero_pd()}; }
    static VecD lane_iota() { return {_mm256_set_pd(3.0, 2.0, 1.0, 0.0)}; }
    void store(double* p) const { _mm256_storeu_pd(p, v); }
    friend VecD operator+(VecD a, VecD b) { return {_mm256_add_pd(a.v, b.v)}; }
    friend VecD operator-(VecD a, VecD b) { return {_mm256_sub_pd(a.v, b.v)}; }
    friend VecD operator*(VecD a, VecD b) { return {_mm256_mul_pd(a.v, b.v)}; }
    friend VecD operator/(VecD a, VecD b) { return {_mm256_div_pd(a.v, b.v)}; }
    VecD neg() const {
        return {_mm256_xor_pd(v, _mm256_set1_pd(-0.0))};
    }
};

inline VecD<4> vfma(VecD<4> a, VecD<4> b, VecD<4> c) {
    return {_mm256_fmadd_pd(a.v, b.v, c.v)};
}
inline VecD<4> vsqrt(VecD<4> a) { return {_mm256_sqrt_pd(a.v)}; }
inline VecD<4> vnearbyint(VecD<4> a) {
    return {_mm256_round_pd(a.v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC)};
}
inline VecU<4> d2u(VecD<4> a) { return {_mm256_castpd_si256(a.v)}; }
inline VecD<4> u2d(VecU<4> a) { return {_mm256_castsi256_pd(a.v)}; }
inline VecD<4> u52_to_d(VecU<4> a) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL); // 2^52
    const __m256d x = _mm256_castsi256_pd(_mm256_or_si256(a.v, magic));
    return {_mm256_sub_pd(x, _mm256_set1_pd(4503599627370496.0))};
}

inline VecD<4> cmp_lt(VecD<4> a, VecD<4> b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)};
}
inline VecD<4> cmp_gt(VecD<4> a, VecD<4> b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ)};
}
inline VecD<4> cmp_eq(VecD<4> a, VecD<4> b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_EQ_OQ)};
}
inline VecD<4> blend(VecD<4> no, VecD<4> yes, VecD<4> mask) {
    return {_mm256_blendv_pd(no.v, yes.v, mask.v)};
}
inline VecD<4> m_and(VecD<4> a, VecD<4> b) {
    return {_mm256_and_pd(a.v, b.v)};
}
inline VecD<4> m_or(VecD<4> a, VecD<4> b) {
    return {_mm256_or_pd(a.v, b.v)};
}
inline VecD<4> m_andnot(VecD<4> a, VecD<4> b) { // a & ~b
    return {_mm256_andnot_pd(b.v, a.v)};
}
inline VecD<4> vxor(VecD<4> a, VecD<4> b) {
    return {_mm256_xor_pd(a.v, b.v)};
}
inline bool any(VecD<4> m) { return _mm256_movemask_pd(m.v) != 0; }

inline Idx<4> to_idx(VecD<4> a) { return {_mm256_cvttpd_epi32(a.v)}; }
inline VecD<4> gather(const double* p, Idx<4> i) {
    return {_mm256_i32gather_pd(p, i.i, 8)};
}
inline VecD<4> cvt_i32(Idx<4> i) { return {_mm256_cvtepi32_pd(i.i)}; }
inline VecD<4> exp2i(VecD<4> n) {
    const __m128i k = _mm256_cvtpd_epi32(n.v);
    const __m256i k64 = _mm256_cvtepi32_epi64(k);
    const __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    return {_mm256_castsi256_pd(bits)};
}

#endif // __AVX2__ && __FMA__

} // namespace risecap::kern
