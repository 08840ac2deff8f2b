// AVX2 + FMA backend. Compiled with -mavx2 -mfma and only called after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <vector>

#include "accumulate.hpp"

namespace dzl::kernel::avx2 {
namespace {

struct Acc {
    __m256d sre = _mm256_setzero_pd();
    __m256d cre = _mm256_setzero_pd();
    __m256d sim = _mm256_setzero_pd();
    __m256d cim = _mm256_setzero_pd();
};

inline void two_sum_acc(__m256d& s, __m256d& c, __m256d x) {
    const __m256d t = _mm256_add_pd(s, x);
    const __m256d z = _mm256_sub_pd(t, s);
    const __m256d e = _mm256_add_pd(_mm256_sub_pd(s, _mm256_sub_pd(t, z)), _mm256_sub_pd(x, z));
    s = t;
    c = _mm256_add_pd(c, e);
}

// exp on [-700, 700]: x = k ln2 + r, |r| ≤ ln2/2, degree-13 Taylor in r, scale by 2^k.
inline __m256d exp_pd(__m256d x) {
    const __m256d lo = _mm256_set1_pd(-700.0);
    const __m256d hi = _mm256_set1_pd(700.0);
    x = _mm256_max_pd(lo, _mm256_min_pd(hi, x));
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
    r = _mm256_fnmadd_pd(k, ln2_lo, r);

    static constexpr double inv_fact[14] = {
        1.0,
        1.0,
        1.0 / 2,
        1.0 / 6,
        1.0 / 24,
        1.0 / 120,
        1.0 / 720,
        1.0 / 5040,
        1.0 / 40320,
        1.0 / 362880,
        1.0 / 3628800,
        1.0 / 39916800,
        1.0 / 479001600,
        1.0 / 6227020800.0,
    };
    __m256d p = _mm256_set1_pd(inv_fact[13]);
    for (int i = 12; i >= 0; --i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[i]));

    // 2^k via the exponent field; k ∈ [-1010, 1010] after clamping.
    const __m128i ki = _mm256_cvtpd_epi32(k);
    __m256i e = _mm256_cvtepi32_epi64(ki);
    e = _mm256_add_epi64(e, _mm256_set1_epi64x(1023));
    e = _mm256_slli_epi64(e, 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(e));
}

// sin and cos via quadrant reduction by π/2 (three-part Cody–Waite with FMA) and
// minimax kernels on [-π/4, π/4].
inline void sincos_pd(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d ax = _mm256_andnot_pd(sign_mask, x);
    const __m256d xsign = _mm256_and_pd(sign_mask, x);

    const __m256d two_over_pi = _mm256_set1_pd(6.36619772367581382433e-01);
    const __m256d pio2_1 = _mm256_set1_pd(1.57079632673412561417e+00);
    const __m256d pio2_2 = _mm256_set1_pd(6.07710050630396597660e-11);
    const __m256d pio2_3 = _mm256_set1_pd(2.02226624879595063154e-21);

    const __m256d j = _mm256_round_pd(_mm256_mul_pd(ax, two_over_pi), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d y = _mm256_fnmadd_pd(j, pio2_1, ax);
    y = _mm256_fnmadd_pd(j, pio2_2, y);
    y = _mm256_fnmadd_pd(j, pio2_3, y);

    const __m256d z = _mm256_mul_pd(y, y);

    // sin kernel
    __m256d ps = _mm256_set1_pd(1.58969099521155010221e-10);
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-2.50507602534068634195e-08));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(2.75573137070700676789e-06));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.98412698298579493134e-04));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(8.33333333332248946124e-03));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.66666666666666324348e-01));
    const __m256d sy = _mm256_fmadd_pd(_mm256_mul_pd(y, z), ps, y);

    // cos kernel
    __m256d pc = _mm256_set1_pd(-1.13596475577881948265e-11);
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(2.08757232129817482790e-09));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-2.75573143513906633035e-07));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(2.48015872894767294178e-05));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.38888888888741095749e-03));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(4.16666666666666019037e-02));
    const __m256d hz = _mm256_mul_pd(_mm256_set1_pd(0.5), z);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d w = _mm256_sub_pd(one, hz);
    // 1 - z/2 + z²·P(z), with the rounding error of 1 - z/2 recovered.
    const __m256d corr = _mm256_sub_pd(_mm256_sub_pd(one, w), hz);
    const __m256d cy = _mm256_add_pd(w, _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, corr));

    // Quadrant q = j mod 4.
    const __m128i ji = _mm256_cvtpd_epi32(j);
    const __m256i q = _mm256_cvtepi32_epi64(_mm_and_si128(ji, _mm_set1_epi32(3)));
    const __m256i bit0 = _mm256_and_si256(q, _mm256_set1_epi64x(1));
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit0, _mm256_set1_epi64x(1)));
    // q ∈ {1,2}: cos negative; q ∈ {2,3}: sin negative.
    const __m256i q1 = _mm256_add_epi64(q, _mm256_set1_epi64x(1));
    const __m256d cneg = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(q1, _mm256_set1_epi64x(2)), 62));
    const __m256d sneg = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(2)), 62));

    __m256d s = _mm256_blendv_pd(sy, cy, swap);
    __m256d c = _mm256_blendv_pd(cy, sy, swap);
    s = _mm256_xor_pd(s, sneg);
    c = _mm256_xor_pd(c, cneg);
    s_out = _mm256_xor_pd(s, xsign);
    c_out = c;
}

// term = (re + i im)·w·(cos θ − i sin θ), same operation order as detail::term.
inline void accumulate4(Acc& acc, __m256d re, __m256d im, __m256d w, __m256d c, __m256d s) {
    const __m256d a = _mm256_add_pd(_mm256_mul_pd(re, c), _mm256_mul_pd(im, s));
    const __m256d b = _mm256_sub_pd(_mm256_mul_pd(im, c), _mm256_mul_pd(re, s));
    two_sum_acc(acc.sre, acc.cre, _mm256_mul_pd(w, a));
    two_sum_acc(acc.sim, acc.cim, _mm256_mul_pd(w, b));
}

std::complex<double> reduce(const Acc& acc) {
    detail::LaneSums l;
    _mm256_storeu_pd(l.sre.data(), acc.sre);
    _mm256_storeu_pd(l.cre.data(), acc.cre);
    _mm256_storeu_pd(l.sim.data(), acc.sim);
    _mm256_storeu_pd(l.cim.data(), acc.cim);
    return detail::reduce(l);
}

// Zero-padded copy of the last partial group of four.
struct Tail {
    alignas(32) double re[4] = {0, 0, 0, 0};
    alignas(32) double im[4] = {0, 0, 0, 0};
    alignas(32) double logn[4] = {0, 0, 0, 0};
    std::size_t count = 0;
};

Tail make_tail(const Terms& terms, std::size_t start) {
    Tail t;
    t.count = terms.logn.size() - start;
    for (std::size_t i = 0; i < t.count; ++i) {
        t.re[i] = terms.re[start + i];
        t.im[i] = terms.im[start + i];
        t.logn[i] = terms.logn[start + i];
    }
    return t;
}

}  // namespace

void exp4(const double* x, double* out) { _mm256_storeu_pd(out, exp_pd(_mm256_loadu_pd(x))); }

void sincos4(const double* x, double* s, double* c) {
    __m256d vs, vc;
    sincos_pd(_mm256_loadu_pd(x), vs, vc);
    _mm256_storeu_pd(s, vs);
    _mm256_storeu_pd(c, vc);
}

std::complex<double> eval_point(const Terms& terms, double sigma, double t) {
    const std::size_t n = terms.logn.size();
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d vsig = _mm256_set1_pd(-sigma);
    const __m256d vt = _mm256_set1_pd(t);
    Acc acc;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d ln = _mm256_loadu_pd(terms.logn.data() + i);
        const __m256d w = exp_pd(_mm256_mul_pd(vsig, ln));
        __m256d s, c;
        sincos_pd(_mm256_mul_pd(vt, ln), s, c);
        accumulate4(acc, _mm256_loadu_pd(terms.re.data() + i), _mm256_loadu_pd(terms.im.data() + i), w, c, s);
    }
    if (n4 < n) {
        const Tail tl = make_tail(terms, n4);
        const __m256d ln = _mm256_load_pd(tl.logn);
        const __m256d w = exp_pd(_mm256_mul_pd(vsig, ln));
        __m256d s, c;
        sincos_pd(_mm256_mul_pd(vt, ln), s, c);
        accumulate4(acc, _mm256_load_pd(tl.re), _mm256_load_pd(tl.im), w, c, s);
    }
    return reduce(acc);
}

void eval_row(const Terms& terms, double sigma, std::span<const double> ts, std::span<std::complex<double>> out) {
    const std::size_t n = terms.logn.size();
    const std::size_t n4 = n & ~std::size_t{3};
    const std::size_t padded = n4 + (n4 < n ? 4 : 0);

    // Padded copies: weights, and zero coefficients past n.
    std::vector<double> w(padded), re(padded, 0.0), im(padded, 0.0), ln(padded, 0.0);
    std::copy(terms.re.begin(), terms.re.end(), re.begin());
    std::copy(terms.im.begin(), terms.im.end(), im.begin());
    std::copy(terms.logn.begin(), terms.logn.end(), ln.begin());
    const __m256d vsig = _mm256_set1_pd(-sigma);
    for (std::size_t i = 0; i < padded; i += 4)
        _mm256_storeu_pd(w.data() + i, exp_pd(_mm256_mul_pd(vsig, _mm256_loadu_pd(ln.data() + i))));

    constexpr std::size_t kBlock = 512;
    std::array<Acc, kRowChunk> acc;
    for (std::size_t c0 = 0; c0 < ts.size(); c0 += kRowChunk) {
        const std::size_t cn = std::min(kRowChunk, ts.size() - c0);
        for (std::size_t k = 0; k < cn; ++k) acc[k] = Acc{};
        for (std::size_t b0 = 0; b0 < padded; b0 += kBlock) {
            const std::size_t b1 = std::min(padded, b0 + kBlock);
            for (std::size_t k = 0; k < cn; ++k) {
                const __m256d vt = _mm256_set1_pd(ts[c0 + k]);
                Acc a = acc[k];
                for (std::size_t i = b0; i < b1; i += 4) {
                    const __m256d l = _mm256_loadu_pd(ln.data() + i);
                    __m256d s, c;
                    sincos_pd(_mm256_mul_pd(vt, l), s, c);
                    accumulate4(a, _mm256_loadu_pd(re.data() + i), _mm256_loadu_pd(im.data() + i),
                                _mm256_loadu_pd(w.data() + i), c, s);
                }
                acc[k] = a;
            }
        }
        for (std::size_t k = 0; k < cn; ++k) out[c0 + k] = reduce(acc[k]);
    }
}

}  // namespace dzl::kernel::avx2
