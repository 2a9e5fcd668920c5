#pragma once

// Width-generic log / exp / sincos built only on Vec ops, so scalar and AVX2
// kernels evaluate the exact same floating-point operation sequence. Accuracy
// is a few ulp, ample for Monte Carlo sampling. Domains are the kernel's own:
// vlog needs x in (0, inf) normal, vexp |x| < 700, vsincos x in [0, 2pi].

#include "vec.hpp"

namespace risecap::kern {

template <int W> inline VecD<W> vlog(VecD<W> x) {
    using V = VecD<W>;
    // split x = m * 2^e, m in [sqrt(2)/2, sqrt(2))
    const VecU<W> bits = d2u(x);
    const VecU<W> mant =
        (bits & VecU<W>::set1(0x000FFFFFFFFFFFFFull)) |
        VecU<W>::set1(0x3FF0000000000000ull);
    V m = u2d(mant);
    V e = u52_to_d(bits.srl(52)) - V::set1(1023.0);
    const V big = cmp_gt(m, V::set1(1.4142135623730951));
    m = blend(m, m * V::set1(0.5), big);
    e = e + m_and(big, V::set1(1.0));
    // ln m = 2 atanh(s), s = (m-1)/(m+1), s^2 < 0.0295
    const V one = V::set1(1.0);
    const V s = (m - one) / (m + one);
    const V z = s * s;
    V p = V::set1(1.0 / 21.0);
    p = vfma(p, z, V::set1(1.0 / 19.0));
    p = vfma(p, z, V::set1(1.0 / 17.0));
    p = vfma(p, z, V::set1(1.0 / 15.0));
    p = vfma(p, z, V::set1(1.0 / 13.0));
    p = vfma(p, z, V::set1(1.0 / 11.0));
    p = vfma(p, z, V::set1(1.0 / 9.0));
    p = vfma(p, z, V::set1(1.0 / 7.0));
    p = vfma(p, z, V::set1(1.0 / 5.0));
    p = vfma(p, z, V::set1(1.0 / 3.0));
    p = vfma(p, z, one);
    const V lnm = (s + s) * p;
    // e*ln2 split so the high product is exact for |e| <= 1074
    const V ln2_hi = V::set1(6.93147180369123816490e-1);
    const V ln2_lo = V::set1(1.90821492927058770002e-10);
    return vfma(e, ln2_lo, vfma(e, ln2_hi, lnm));
}

template <int W> inline VecD<W> vexp(VecD<W> x) {
    using V = VecD<W>;
    const V log2e = V::set1(1.4426950408889634074);
    const V n = vnearbyint(x * log2e);
    const V ln2_hi = V::set1(6.93147180369123816490e-1);
    const V ln2_lo = V::set1(1.90821492927058770002e-10);
    V r = vfma(n.neg(), ln2_hi, x);
    r = vfma(n.neg(), ln2_lo, r);
    // e^r, |r| <= 0.3466: Taylor to r^13/13!
    V p = V::set1(1.0 / 6227020800.0);
    p = vfma(p, r, V::set1(1.0 / 479001600.0));
    p = vfma(p, r, V::set1(1.0 / 39916800.0));
    p = vfma(p, r, V::set1(1.0 / 3628800.0));
    p = vfma(p, r, V::set1(1.0 / 362880.0));
    p = vfma(p, r, V::set1(1.0 / 40320.0));
    p = vfma(p, r, V::set1(1.0 / 5040.0));
    p = vfma(p, r, V::set1(1.0 / 720.0));
    p = vfma(p, r, V::set1(1.0 / 120.0));
    p = vfma(p, r, V::set1(1.0 / 24.0));
    p = vfma(p, r, V::set1(1.0 / 6.0));
    p = vfma(p, r, V::set1(0.5));
    p = vfma(p, r, V::set1(1.0));
    p = vfma(p, r, V::set1(1.0));
    return p * exp2i(n);
}

template <int W> struct SinCos {
    VecD<W> s, c;
};

template <int W> inline SinCos<W> vsincos(VecD<W> x) {
    using V = VecD<W>;
    const V q = vnearbyint(x * V::set1(0.63661977236758134308)); // 2/pi
    // Cody-Waite: pio2_1 has 33 significant bits, exact times q <= 4
    V r = vfma(q.neg(), V::set1(1.57079632673412561417e0), x);
    r = vfma(q.neg(), V::set1(6.07710050650619224932e-11), r);
    const V z = r * r;
    // fdlibm kernel sin
    V sp = V::set1(1.58969099521155010221e-10);
    sp = vfma(sp, z, V::set1(-2.50507602534068634195e-8));
    sp = vfma(sp, z, V::set1(2.75573137070700676789e-6));
    sp = vfma(sp, z, V::set1(-1.98412698298579493134e-4));
    sp = vfma(sp, z, V::set1(8.33333333332248946124e-3));
    sp = vfma(sp, z, V::set1(-1.66666666666666324348e-1));
    const V sin_r = vfma(r * z, sp, r);
    // fdlibm kernel cos
    V cp = V::set1(-1.13596475577881948265e-11);
    cp = vfma(cp, z, V::set1(2.08757232129817482790e-9));
    cp = vfma(cp, z, V::set1(-2.75573143513906633035e-7));
    cp = vfma(cp, z, V::set1(2.48015872894767294178e-5));
    cp = vfma(cp, z, V::set1(-1.38888888888741095749e-3));
    cp = vfma(cp, z, V::set1(4.16666666666666019037e-2));
    const V hz = V::set1(0.5) * z;
    const V cos_r = V::set1(1.0) + vfma(z * z, cp, hz.neg());
    // quadrant map, q in {0,1,2,3,4}, 4 acts as 0
    const V is1 = cmp_eq(q, V::set1(1.0));
    const V is2 = cmp_eq(q, V::set1(2.0));
    const V is3 = cmp_eq(q, V::set1(3.0));
    const V swap = m_or(is1, is3);
    const V sgn = V::set1(-0.0);
    SinCos<W> out;
    out.s = vxor(blend(sin_r, cos_r, swap), m_and(m_or(is2, is3), sgn));
    out.c = vxor(blend(cos_r, sin_r, swap), m_and(m_or(is1, is2), sgn));
    return out;
}

} // namespace risecap::kern
