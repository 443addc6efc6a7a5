#include "cvp/waveform.hpp"

#include "cvp/errors.hpp"
#include "cvp/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cvp {

namespace {

struct Basis {
    std::vector<double> s, c;
};

/// sin/cos of `harmonic` * w t_n, reduced to one cycle before evaluating.
Basis make_basis(const WaveformGrid& grid, int harmonic) {
    Basis b;
    const std::size_t n = grid.size();
    b.s.resize(n);
    b.c.resize(n);
    const auto spc = static_cast<std::size_t>(grid.samples_per_cycle);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = (static_cast<std::size_t>(harmonic) * k) % spc;
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(spc);
        b.s[k] = std::sin(theta);
        b.c[k] = std::cos(theta);
    }
    return b;
}

} // namespace

void WaveformGrid::validate() const {
    if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0) {
        throw InvalidConfig("frequency must be finite and > 0");
    }
    if (samples_per_cycle < min_samples_per_cycle) {
        throw InvalidConfig("samples per cycle must be >= " + std::to_string(min_samples_per_cycle) + ", got " +
                            std::to_string(samples_per_cycle));
    }
    if (cycles < 1) throw InvalidConfig("cycles must be >= 1, got " + std::to_string(cycles));
}

double time_average(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    return simd::kernels().sum(x) / static_cast<double>(x.size());
}

WaveformSet synthesize(const PhasorTriple& v, const PhasorTriple& i, const WaveformGrid& grid) {
    grid.validate();
    require_finite(v, "voltage");
    require_finite(i, "current");

    const std::size_t n = grid.size();
    const Basis fundamental = make_basis(grid, 1);
    const simd::Kernels kern = simd::kernels();

    WaveformSet w;
    w.t.resize(n);
    const double dt = grid.dt();
    for (std::size_t k = 0; k < n; ++k) w.t[k] = static_cast<double>(k) * dt;
    for (int ph = 0; ph < 3; ++ph) {
        w.v[ph].resize(n);
        w.i[ph].resize(n);
        w.d[ph].resize(n);
        kern.sinusoid(v[ph], fundamental.s, fundamental.c, w.v[ph]);
        kern.sinusoid(i[ph], fundamental.s, fundamental.c, w.i[ph]);
    }
    w.p.resize(n);
    kern.instantaneous_products({std::span<const double>(w.v[0]), w.v[1], w.v[2]},
                                {std::span<const double>(w.i[0]), w.i[1], w.i[2]}, w.p,
                                {std::span<double>(w.d[0]), w.d[1], w.d[2]});
    return w;
}

CrossTermDecomposition decompose_cross_term(const WaveformSet& w, const WaveformGrid& grid) {
    grid.validate();
    const std::size_t n = grid.size();
    if (w.size() != n || w.d[0].size() != n || w.d[1].size() != n || w.d[2].size() != n) {
        throw InvalidConfig("waveform has " + std::to_string(w.size()) + " samples, expected " + std::to_string(n) +
                            " (an integer number of cycles)");
    }

    const Basis second = make_basis(grid, 2);
    const simd::Kernels kern = simd::kernels();
    const auto cc = kern.centered_projection(second.c, 0.0, second.c, second.s);
    const auto ss = kern.centered_projection(second.s, 0.0, second.c, second.s);
    const double g_cc = cc.dot_c, g_cs = cc.dot_s, g_ss = ss.dot_s;
    const double det = g_cc * g_ss - g_cs * g_cs;
    const double basis_mean_c = cc.sum / static_cast<double>(n);
    const double basis_mean_s = ss.sum / static_cast<double>(n);

    CrossTermDecomposition r;
    double sigma_sq = 0.0;
    const double count = static_cast<double>(n);
    for (int k = 0; k < 3; ++k) {
        const double mean = kern.sum(w.d[k]) / count;
        const simd::Projection pr = kern.centered_projection(w.d[k], mean, second.c, second.s);
        const double a = (g_ss * pr.dot_c - g_cs * pr.dot_s) / det;
        const double b = (g_cc * pr.dot_s - g_cs * pr.dot_c) / det;
        r.mean[k] = mean;
        r.amplitude[k] = std::hypot(a, b);
        // a cos x + b sin x = R cos(x + phi) with phi = atan2(-b, a)
        r.phase_deg[k] = normalize_deg(std::atan2(-b, a) * deg_per_rad);
        r.sigma[k] = std::sqrt(pr.sum_sq / count);
        r.residual_rms[k] = std::sqrt(kern.residual_sq(w.d[k], mean, a, b, second.c, second.s) / count);
        r.oscillatory_mean[k] = a * basis_mean_c + b * basis_mean_s;
        sigma_sq += r.sigma[k] * r.sigma[k];
    }
    r.sigma_d = std::sqrt(sigma_sq);
    return r;
}

double verify_mean_power(const WaveformSet& w, const CvpResult& expected) {
    return std::abs(time_average(w.p) - expected.p);
}

} // namespace cvp
