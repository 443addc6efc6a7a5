#pragma once
// Test-only reference computations. Nothing here calls into the library's arithmetic paths.

#include "cvp/phasor.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace cvp::oracle {

using C = std::complex<double>;
using Vec = std::array<C, 3>;
using Mat = std::array<std::array<C, 3>, 3>;

inline Vec vec(const PhasorTriple& x) { return {x[0], x[1], x[2]}; }

inline C dot_conj(const Vec& v, const Vec& i) {
    C s{};
    for (int k = 0; k < 3; ++k) s += v[k] * std::conj(i[k]);
    return s;
}

/// D_k = sum_{l,m} eps_{klm} V_l I_m.
inline Vec levi_civita_cross(const Vec& v, const Vec& i) {
    auto eps = [](int a, int b, int c) -> int {
        if (a == b || b == c || a == c) return 0;
        return ((b - a + 3) % 3 == 1) ? 1 : -1;
    };
    Vec d{};
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m) {
                const int e = eps(k, l, m);
                if (e != 0) d[k] += static_cast<double>(e) * v[l] * i[m];
            }
    return d;
}

inline double norm_sq(const Vec& x) {
    double s = 0.0;
    for (const C& c : x) s += std::norm(c);
    return s;
}

/// Both sides of the complex Lagrange identity expanded term by term over all (j, k) pairs.
struct LagrangeSides {
    double lhs = 0.0; // |V|^2 |I|^2
    double rhs = 0.0; // |V.I*|^2 + sum_{j<k} |V_j I_k - V_k I_j|^2
};

inline LagrangeSides lagrange_sides(const Vec& v, const Vec& i) {
    LagrangeSides s;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s.lhs += std::norm(v[j]) * std::norm(i[k]);
    C dot{};
    for (int j = 0; j < 3; ++j) dot += v[j] * std::conj(i[j]);
    s.rhs = std::norm(dot);
    for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k) s.rhs += std::norm(v[j] * i[k] - v[k] * i[j]);
    return s;
}

/// Fortescue matrix from std::polar, independent of the library's exact-constant construction.
inline Mat fortescue_trig() {
    const C a = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const double s = 1.0 / std::sqrt(3.0);
    return {{{s, s * a, s * a * a}, {s, s * a * a, s * a}, {s, s, s}}};
}

inline Vec matvec(const Mat& m, const Vec& x) {
    Vec r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i] += m[i][j] * x[j];
    return r;
}

inline Mat conj(const Mat& m) {
    Mat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = std::conj(m[i][j]);
    return r;
}

/// Leibniz formula over the six permutations.
inline C det_leibniz(const Mat& m) {
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    C d{};
    for (int p = 0; p < 6; ++p) {
        const double sign = p < 3 ? 1.0 : -1.0;
        d += sign * m[0][perms[p][0]] * m[1][perms[p][1]] * m[2][perms[p][2]];
    }
    return d;
}

/// Mean of v_l i_m - v_m i_l under the sine convention, by product-to-sum: Re{V_l conj(I_m) - V_m conj(I_l)}.
inline std::array<double, 3> cross_mean_closed_form(const Vec& v, const Vec& i) {
    std::array<double, 3> r{};
    for (int k = 0; k < 3; ++k) {
        const int l = (k + 1) % 3, m = (k + 2) % 3;
        r[k] = (v[l] * std::conj(i[m]) - v[m] * std::conj(i[l])).real();
    }
    return r;
}

/// rms of d_k(t) - mean over one period by composite trapezoid quadrature on a dense grid, evaluating sin() directly.
inline std::array<double, 3> cross_rms_quadrature(const Vec& v, const Vec& i, int points = 4096) {
    auto sample = [](const C& x, double wt) { return std::sqrt(2.0) * std::abs(x) * std::sin(wt + std::arg(x)); };
    const auto mean = cross_mean_closed_form(v, i);
    std::array<double, 3> acc{};
    for (int n = 0; n <= points; ++n) {
        const double wt = 2.0 * std::numbers::pi * n / points;
        const double weight = (n == 0 || n == points) ? 0.5 : 1.0;
        double vs[3], is[3];
        for (int k = 0; k < 3; ++k) {
            vs[k] = sample(v[k], wt);
            is[k] = sample(i[k], wt);
        }
        for (int k = 0; k < 3; ++k) {
            const int l = (k + 1) % 3, m = (k + 2) % 3;
            const double d = vs[l] * is[m] - vs[m] * is[l] - mean[k];
            acc[k] += weight * d * d;
        }
    }
    for (double& a : acc) a = std::sqrt(a / points);
    return acc;
}

using hp = boost::multiprecision::cpp_dec_float_50;

/// k(rho) = (sqrt(1 + 3 rho) - 1) / (3 rho) in 50-digit arithmetic, the un-rearranged form.
inline double k_factor_hp(double rho) {
    const hp r(rho);
    return static_cast<double>((boost::multiprecision::sqrt(hp(1) + 3 * r) - 1) / (3 * r));
}

inline double sqrt_hp(double x) { return static_cast<double>(boost::multiprecision::sqrt(hp(x))); }

/// Uniform magnitudes in [0, max_mag], uniform angles.
inline PhasorTriple random_triple(std::mt19937_64& rng, double max_mag, Unit u = Unit::dimensionless) {
    std::uniform_real_distribution<double> mag(0.0, max_mag);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    PhasorTriple t;
    t.unit = u;
    for (int k = 0; k < 3; ++k) t[k] = std::polar(mag(rng), ang(rng));
    return t;
}

/// Random triple with zero sum (three-wire currents).
inline PhasorTriple random_zero_sum(std::mt19937_64& rng, double max_mag) {
    PhasorTriple t = random_triple(rng, max_mag, Unit::ampere);
    t[2] = -(t[0] + t[1]);
    return t;
}

} // namespace cvp::oracle
