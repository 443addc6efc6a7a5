#pragma once

#include "cvp/phasor.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace cvp::simd {

enum class Backend { scalar, avx2 };

std::string_view name(Backend b) noexcept;

/// True when the backend was compiled in and the running CPU supports it.
bool available(Backend b) noexcept;

/// Widest available backend, unless CVP_SIMD=scalar is set in the environment.
Backend best_backend() noexcept;

Backend active_backend() noexcept;

/// Overrides the process-wide backend; throws InvalidConfig if unavailable.
void set_backend(Backend b);

/// Sums over a uniformly sampled signal x against the 2w basis (c, s), after subtracting `shift`.
struct Projection {
    double sum = 0.0;    // sum (x - shift)
    double dot_c = 0.0;  // sum (x - shift) c
    double dot_s = 0.0;  // sum (x - shift) s
    double sum_sq = 0.0; // sum (x - shift)^2
};

/// Structure-of-arrays batch of phasor triples.
struct PhasorBatch {
    std::array<std::vector<double>, 3> re;
    std::array<std::vector<double>, 3> im;

    std::size_t size() const noexcept { return re[0].size(); }
    void reserve(std::size_t n);
    void push_back(const PhasorTriple& x);
    PhasorTriple at(std::size_t n) const;
};

/// Per-pair scalar outputs of the batched decomposition.
struct CvpBatch {
    std::vector<double> p;
    std::vector<double> q;
    std::vector<double> d_norm_sq;
    std::vector<double> v_norm_sq;
    std::vector<double> i_norm_sq;
};

namespace detail {
struct KernelTable;
}

/// Handle to one backend's kernels. Cheap to copy.
class Kernels {
public:
    explicit Kernels(Backend b);

    Backend backend() const noexcept { return backend_; }

    /// out[n] = sqrt2 * (Re(x) sin_wt[n] + Im(x) cos_wt[n]), i.e. sqrt2 |x| sin(wt + arg x).
    void sinusoid(Phasor x, std::span<const double> sin_wt, std::span<const double> cos_wt,
                  std::span<double> out) const;

    /// p = sum_k v_k i_k and d = v x i, sample by sample.
    void instantaneous_products(const std::array<std::span<const double>, 3>& v,
                                const std::array<std::span<const double>, 3>& i, std::span<double> p,
                                const std::array<std::span<double>, 3>& d) const;

    double sum(std::span<const double> x) const;

    Projection centered_projection(std::span<const double> x, double shift, std::span<const double> c,
                                   std::span<const double> s) const;

    /// sum (x - shift - a c - b s)^2.
    double residual_sq(std::span<const double> x, double shift, double a, double b, std::span<const double> c,
                       std::span<const double> s) const;

    /// P, Q, |D|^2, |V|^2, |I|^2 for every pair (v[n], i[n]).
    CvpBatch cvp_batch(const PhasorBatch& v, const PhasorBatch& i) const;

private:
    Backend backend_;
    const detail::KernelTable* table_;
};

/// Kernels of the active backend.
Kernels kernels();

} // namespace cvp::simd
