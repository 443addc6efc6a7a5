#include "kernel_table.hpp"

#include "cvp/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

namespace cvp::simd {

namespace {

const detail::KernelTable& table_for(Backend b) {
#if defined(CVP_HAVE_AVX2)
    if (b == Backend::avx2) return detail::avx2_table();
#endif
    (void)b;
    return detail::scalar_table();
}

Backend initial_backend() noexcept { return best_backend(); }

std::atomic<Backend>& active() {
    static std::atomic<Backend> b{initial_backend()};
    return b;
}

void require_same_size(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        throw InvalidInput(std::string(what) + ": length " + std::to_string(got) + " does not match " +
                           std::to_string(expected));
    }
}

} // namespace

std::string_view name(Backend b) noexcept {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "unknown";
}

bool available(Backend b) noexcept {
    switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(CVP_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

Backend best_backend() noexcept {
    if (const char* env = std::getenv("CVP_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
        return Backend::scalar;
    }
    return available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() noexcept { return active().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!available(b)) throw InvalidConfig("SIMD backend '" + std::string(name(b)) + "' is not available");
    active().store(b, std::memory_order_relaxed);
}

Kernels kernels() { return Kernels(active_backend()); }

Kernels::Kernels(Backend b) : backend_(b), table_(&table_for(b)) {
    if (!available(b)) throw InvalidConfig("SIMD backend '" + std::string(name(b)) + "' is not available");
}

void Kernels::sinusoid(Phasor x, std::span<const double> sin_wt, std::span<const double> cos_wt,
                       std::span<double> out) const {
    require_same_size(out.size(), sin_wt.size(), "sinusoid sin basis");
    require_same_size(out.size(), cos_wt.size(), "sinusoid cos basis");
    table_->sinusoid(x.real(), x.imag(), sin_wt.data(), cos_wt.data(), out.data(), out.size());
}

void Kernels::instantaneous_products(const std::array<std::span<const double>, 3>& v,
                                     const std::array<std::span<const double>, 3>& i, std::span<double> p,
                                     const std::array<std::span<double>, 3>& d) const {
    const std::size_t n = p.size();
    for (int k = 0; k < 3; ++k) {
        require_same_size(n, v[k].size(), "voltage samples");
        require_same_size(n, i[k].size(), "current samples");
        require_same_size(n, d[k].size(), "cross samples");
    }
    const double* vp[3] = {v[0].data(), v[1].data(), v[2].data()};
    const double* ip[3] = {i[0].data(), i[1].data(), i[2].data()};
    double* dp[3] = {d[0].data(), d[1].data(), d[2].data()};
    table_->products(vp, ip, p.data(), dp, n);
}

double Kernels::sum(std::span<const double> x) const { return table_->sum(x.data(), x.size()); }

Projection Kernels::centered_projection(std::span<const double> x, double shift, std::span<const double> c,
                                        std::span<const double> s) const {
    require_same_size(x.size(), c.size(), "projection cos basis");
    require_same_size(x.size(), s.size(), "projection sin basis");
    return table_->centered_projection(x.data(), shift, c.data(), s.data(), x.size());
}

double Kernels::residual_sq(std::span<const double> x, double shift, double a, double b, std::span<const double> c,
                            std::span<const double> s) const {
    require_same_size(x.size(), c.size(), "residual cos basis");
    require_same_size(x.size(), s.size(), "residual sin basis");
    return table_->residual_sq(x.data(), shift, a, b, c.data(), s.data(), x.size());
}

CvpBatch Kernels::cvp_batch(const PhasorBatch& v, const PhasorBatch& i) const {
    const std::size_t n = v.size();
    for (int k = 0; k < 3; ++k) {
        require_same_size(n, v.re[k].size(), "voltage batch");
        require_same_size(n, v.im[k].size(), "voltage batch");
        require_same_size(n, i.re[k].size(), "current batch");
        require_same_size(n, i.im[k].size(), "current batch");
    }
    CvpBatch out;
    for (auto* vec : {&out.p, &out.q, &out.d_norm_sq, &out.v_norm_sq, &out.i_norm_sq}) vec->resize(n);
    const detail::BatchIn vin{{v.re[0].data(), v.re[1].data(), v.re[2].data()},
                              {v.im[0].data(), v.im[1].data(), v.im[2].data()}};
    const detail::BatchIn iin{{i.re[0].data(), i.re[1].data(), i.re[2].data()},
                              {i.im[0].data(), i.im[1].data(), i.im[2].data()}};
    const detail::BatchOut o{out.p.data(), out.q.data(), out.d_norm_sq.data(), out.v_norm_sq.data(),
                             out.i_norm_sq.data()};
    table_->cvp_batch(vin, iin, o, n);
    return out;
}

void PhasorBatch::reserve(std::size_t n) {
    for (int k = 0; k < 3; ++k) {
        re[k].reserve(n);
        im[k].reserve(n);
    }
}

void PhasorBatch::push_back(const PhasorTriple& x) {
    for (int k = 0; k < 3; ++k) {
        re[k].push_back(x[k].real());
        im[k].push_back(x[k].imag());
    }
}

PhasorTriple PhasorBatch::at(std::size_t n) const {
    return {{re[0].at(n), im[0].at(n)}, {re[1].at(n), im[1].at(n)}, {re[2].at(n), im[2].at(n)}};
}

} // namespace cvp::simd
