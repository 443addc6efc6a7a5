// Reference kernels. Every SIMD variant is checked against these.
#include "kernel_table.hpp"

#include <cmath>
#include <numbers>

namespace cvp::simd::detail {

namespace {

void sinusoid(double re, double im, const double* s, const double* c, double* out, std::size_t n) {
    const double a = std::numbers::sqrt2 * re;
    const double b = std::numbers::sqrt2 * im;
    for (std::size_t k = 0; k < n; ++k) out[k] = a * s[k] + b * c[k];
}

void products(const double* const* v, const double* const* i, double* p, double* const* d, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const double v1 = v[0][k], v2 = v[1][k], v3 = v[2][k];
        const double i1 = i[0][k], i2 = i[1][k], i3 = i[2][k];
        p[k] = v1 * i1 + v2 * i2 + v3 * i3;
        d[0][k] = v2 * i3 - v3 * i2;
        d[1][k] = v3 * i1 - v1 * i3;
        d[2][k] = v1 * i2 - v2 * i1;
    }
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k];
    return acc;
}

Projection centered_projection(const double* x, double shift, const double* c, const double* s, std::size_t n) {
    Projection r;
    for (std::size_t k = 0; k < n; ++k) {
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
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = x[k] - shift - a * c[k] - b * s[k];
        acc += e * e;
    }
    return acc;
}

void cvp_batch(const BatchIn& v, const BatchIn& i, const BatchOut& out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        double p = 0.0, q = 0.0, vn = 0.0, in = 0.0;
        for (int ph = 0; ph < 3; ++ph) {
            const double vr = v.re[ph][k], vi = v.im[ph][k];
            const double ir = i.re[ph][k], ii = i.im[ph][k];
            // V conj(I)
            p += vr * ir + vi * ii;
            q += vi * ir - vr * ii;
            vn += vr * vr + vi * vi;
            in += ir * ir + ii * ii;
        }
        double dn = 0.0;
        for (int ph = 0; ph < 3; ++ph) {
            const int l = (ph + 1) % 3, m = (ph + 2) % 3;
            const double re = (v.re[l][k] * i.re[m][k] - v.im[l][k] * i.im[m][k]) -
                              (v.re[m][k] * i.re[l][k] - v.im[m][k] * i.im[l][k]);
            const double im = (v.re[l][k] * i.im[m][k] + v.im[l][k] * i.re[m][k]) -
                              (v.re[m][k] * i.im[l][k] + v.im[m][k] * i.re[l][k]);
            dn += re * re + im * im;
        }
        out.p[k] = p;
        out.q[k] = q;
        out.d_norm_sq[k] = dn;
        out.v_norm_sq[k] = vn;
        out.i_norm_sq[k] = in;
    }
}

constexpr KernelTable table{sinusoid, products, sum, centered_projection, residual_sq, cvp_batch};

} // namespace

const KernelTable& scalar_table() noexcept { return table; }

} // namespace cvp::simd::detail
