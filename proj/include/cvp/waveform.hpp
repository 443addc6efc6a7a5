#pragma once

#include "cvp/phasor.hpp"
#include "cvp/power.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace cvp {

/// Uniform sampling of an integer number of fundamental cycles.
struct WaveformGrid {
    static constexpr int min_samples_per_cycle = 16;

    double frequency_hz = 50.0;
    int samples_per_cycle = 256;
    int cycles = 2;

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(samples_per_cycle) * static_cast<std::size_t>(cycles);
    }
    double dt() const noexcept { return 1.0 / (frequency_hz * samples_per_cycle); }
    void validate() const;
};

/// Sampled v_k(t) = sqrt2 |V_k| sin(wt + arg V_k), i_k(t), p(t) = sum v_k i_k, d(t) = v(t) x i(t).
struct WaveformSet {
    std::vector<double> t;
    std::array<std::vector<double>, 3> v;
    std::array<std::vector<double>, 3> i;
    std::vector<double> p;
    std::array<std::vector<double>, 3> d;

    std::size_t size() const noexcept { return t.size(); }
};

/// Mean + double-frequency split of each d_k(t) = mean_k + amplitude_k cos(2wt + phase_k).
struct CrossTermDecomposition {
    std::array<double, 3> mean{};
    std::array<double, 3> amplitude{};
    std::array<double, 3> phase_deg{};
    std::array<double, 3> sigma{};            // rms of d_k - mean_k
    std::array<double, 3> residual_rms{};     // rms misfit of the 2w sinusoid
    std::array<double, 3> oscillatory_mean{}; // mean of the fitted 2w sinusoid over the grid
    double sigma_d = 0.0;
};

WaveformSet synthesize(const PhasorTriple& v, const PhasorTriple& i, const WaveformGrid& grid);

/// Least-squares fit of A cos 2wt + B sin 2wt to each mean-removed d_k. The set must span exactly `grid`.
CrossTermDecomposition decompose_cross_term(const WaveformSet& w, const WaveformGrid& grid);

/// |<p(t)> - expected.p|.
double verify_mean_power(const WaveformSet& w, const CvpResult& expected);

double time_average(const std::vector<double>& x);

} // namespace cvp
