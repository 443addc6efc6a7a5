// AVX2 + FMA kernels, 4 doubles per lane group. Built with -mavx2 -mfma; only reached after a CPUID check.
#include "kernel_table.hpp"

#include <immintrin.h>

#include <numbers>

namespace cvp::simd::detail {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void sinusoid(double re, double im, const double* s, const double* c, double* out, std::size_t n) {
    const double a = std::numbers::sqrt2 * re;
    const double b = std::numbers::sqrt2 * im;
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(s + k), _mm256_mul_pd(vb, _mm256_loadu_pd(c + k)));
        _mm256_storeu_pd(out + k, r);
    }
    for (; k < n; ++k) out[k] = a * s[k] + b * c[k];
}

void products(const double* const* v, const double* const* i, double* p, double* const* d, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d v1 = _mm256_loadu_pd(v[0] + k), v2 = _mm256_loadu_pd(v[1] + k), v3 = _mm256_loadu_pd(v[2] + k);
        const __m256d i1 = _mm256_loadu_pd(i[0] + k), i2 = _mm256_loadu_pd(i[1] + k), i3 = _mm256_loadu_pd(i[2] + k);
        const __m256d pp = _mm256_fmadd_pd(v3, i3, _mm256_fmadd_pd(v2, i2, _mm256_mul_pd(v1, i1)));
        _mm256_storeu_pd(p + k, pp);
        _mm256_storeu_pd(d[0] + k, _mm256_fmsub_pd(v2, i3, _mm256_mul_pd(v3, i2)));
        _mm256_storeu_pd(d[1] + k, _mm256_fmsub_pd(v3, i1, _mm256_mul_pd(v1, i3)));
        _mm256_storeu_pd(d[2] + k, _mm256_fmsub_pd(v1, i2, _mm256_mul_pd(v2, i1)));
    }
    for (; k < n; ++k) {
        const double v1 = v[0][k], v2 = v[1][k], v3 = v[2][k];
        const double i1 = i[0][k], i2 = i[1][k], i3 = i[2][k];
        p[k] = v1 * i1 + v2 * i2 + v3 * i3;
        d[0][k] = v2 * i3 - v3 * i2;
        d[1][k] = v3 * i1 - v1 * i3;
        d[2][k] = v1 * i2 - v2 * i1;
    }
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + k));
    double r = hsum(acc);
    for (; k < n; ++k) r += x[k];
    return r;
}

Projection centered_projection(const double* x, double shift, const double* c, const double* s, std::size_t n) {
    const __m256d vshift = _mm256_set1_pd(shift);
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd(), a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d y = _mm256_sub_pd(_mm256_loadu_pd(x + k), vshift);
        a0 = _mm256_add_pd(a0, y);
        a1 = _mm256_fmadd_pd(y, _mm256_loadu_pd(c + k), a1);
        a2 = _mm256_fmadd_pd(y, _mm256_loadu_pd(s + k), a2);
        a3 = _mm256_fmadd_pd(y, y, a3);
    }
    Projection r{hsum(a0), hsum(a1), hsum(a2), hsum(a3)};
    for (; k < n; ++k) {
        const double y = x[k] - shift;
        r.sum += y;
        r.dot_c += y * c[k];
        r.dot_s += y * s[k];
        r.sum_sq += y * y;
    }
    return r;
}

double residual_sq(const double* x, double shift, double a, double b, const double* c, const double* s,
                   std::size_t n) {
    const __m256d vshift = _mm256_set1_pd(shift), va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d e = _mm256_sub_pd(_mm256_loadu_pd(x + k), vshift);
        e = _mm256_fnmadd_pd(va, _mm256_loadu_pd(c + k), e);
        e = _mm256_fnmadd_pd(vb, _mm256_loadu_pd(s + k), e);
        acc = _mm256_fmadd_pd(e, e, acc);
    }
    double r = hsum(acc);
    for (; k < n; ++k) {
        const double e = x[k] - shift - a * c[k] - b * s[k];
        r += e * e;
    }
    return r;
}

// (a + jb)(c + jd) real and imaginary parts
inline __m256d cmul_re(__m256d a, __m256d b, __m256d c, __m256d d) { return _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, d)); }
inline __m256d cmul_im(__m256d a, __m256d b, __m256d c, __m256d d) { return _mm256_fmadd_pd(a, d, _mm256_mul_pd(b, c)); }

void cvp_batch(const BatchIn& v, const BatchIn& i, const BatchOut& out, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d vr[3], vi[3], ir[3], ii[3];
        for (int ph = 0; ph < 3; ++ph) {
            vr[ph] = _mm256_loadu_pd(v.re[ph] + k);
            vi[ph] = _mm256_loadu_pd(v.im[ph] + k);
            ir[ph] = _mm256_loadu_pd(i.re[ph] + k);
            ii[ph] = _mm256_loadu_pd(i.im[ph] + k);
        }
        __m256d p = _mm256_setzero_pd(), q = _mm256_setzero_pd();
        __m256d vn = _mm256_setzero_pd(), in = _mm256_setzero_pd(), dn = _mm256_setzero_pd();
        for (int ph = 0; ph < 3; ++ph) {
            p = _mm256_fmadd_pd(vr[ph], ir[ph], _mm256_fmadd_pd(vi[ph], ii[ph], p));
            q = _mm256_fmadd_pd(vi[ph], ir[ph], _mm256_fnmadd_pd(vr[ph], ii[ph], q));
            vn = _mm256_fmadd_pd(vr[ph], vr[ph], _mm256_fmadd_pd(vi[ph], vi[ph], vn));
            in = _mm256_fmadd_pd(ir[ph], ir[ph], _mm256_fmadd_pd(ii[ph], ii[ph], in));
        }
        for (int ph = 0; ph < 3; ++ph) {
            const int l = (ph + 1) % 3, m = (ph + 2) % 3;
            const __m256d re = _mm256_sub_pd(cmul_re(vr[l], vi[l], ir[m], ii[m]), cmul_re(vr[m], vi[m], ir[l], ii[l]));
            const __m256d im = _mm256_sub_pd(cmul_im(vr[l], vi[l], ir[m], ii[m]), cmul_im(vr[m], vi[m], ir[l], ii[l]));
            dn = _mm256_fmadd_pd(re, re, _mm256_fmadd_pd(im, im, dn));
        }
        _mm256_storeu_pd(out.p + k, p);
        _mm256_storeu_pd(out.q + k, q);
        _mm256_storeu_pd(out.d_norm_sq + k, dn);
        _mm256_storeu_pd(out.v_norm_sq + k, vn);
        _mm256_storeu_pd(out.i_norm_sq + k, in);
    }
    if (k < n) {
        const BatchIn vt{{v.re[0] + k, v.re[1] + k, v.re[2] + k}, {v.im[0] + k, v.im[1] + k, v.im[2] + k}};
        const BatchIn it{{i.re[0] + k, i.re[1] + k, i.re[2] + k}, {i.im[0] + k, i.im[1] + k, i.im[2] + k}};
        const BatchOut ot{out.p + k, out.q + k, out.d_norm_sq + k, out.v_norm_sq + k, out.i_norm_sq + k};
        scalar_table().cvp_batch(vt, it, ot, n - k);
    }
}

constexpr KernelTable table{sinusoid, products, sum, centered_projection, residual_sq, cvp_batch};

} // namespace

const KernelTable& avx2_table() noexcept { return table; }

} // namespace cvp::simd::detail
