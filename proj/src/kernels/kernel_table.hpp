#pragma once

#include "cvp/kernels.hpp"

#include <cstddef>

namespace cvp::simd::detail {

struct BatchIn {
    const double* re[3];
    const double* im[3];
};

struct BatchOut {
    double* p;
    double* q;
    double* d_norm_sq;
    double* v_norm_sq;
    double* i_norm_sq;
};

struct KernelTable {
    void (*sinusoid)(double re, double im, const double* s, const double* c, double* out, std::size_t n);
    void (*products)(const double* const* v, const double* const* i, double* p, double* const* d, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    Projection (*centered_projection)(const double* x, double shift, const double* c, const double* s,
                                      std::size_t n);
    double (*residual_sq)(const double* x, double shift, double a, double b, const double* c, const double* s,
                          std::size_t n);
    void (*cvp_batch)(const BatchIn& v, const BatchIn& i, const BatchOut& out, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

#if defined(CVP_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

} // namespace cvp::simd::detail
