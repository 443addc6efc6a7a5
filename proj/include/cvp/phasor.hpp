#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string_view>

namespace cvp {

/// rms phasor in rectangular form.
using Phasor = std::complex<double>;

enum class Unit { volt, ampere, volt_ampere, dimensionless };

std::string_view to_string(Unit u) noexcept;

inline constexpr double deg_per_rad = 180.0 / std::numbers::pi;

/// Builds a phasor from rms magnitude and angle in degrees.
Phasor from_polar_deg(double magnitude, double angle_deg);

/// Angle in degrees normalized to (-180, 180].
double angle_deg(Phasor p);

double normalize_deg(double angle);

/// Shortest signed arc from `b` to `a` in degrees, in (-180, 180].
double angle_distance_deg(double a, double b);

inline bool is_finite(Phasor p) noexcept { return std::isfinite(p.real()) && std::isfinite(p.imag()); }

/// Ordered three-phase set (phases 1, 2, 3).
struct PhasorTriple {
    std::array<Phasor, 3> c{};
    Unit unit = Unit::dimensionless;

    PhasorTriple() = default;
    PhasorTriple(Phasor c1, Phasor c2, Phasor c3, Unit u = Unit::dimensionless) : c{c1, c2, c3}, unit(u) {}
    explicit PhasorTriple(const std::array<Phasor, 3>& v, Unit u = Unit::dimensionless) : c(v), unit(u) {}

    Phasor& operator[](std::size_t k) { return c[k]; }
    const Phasor& operator[](std::size_t k) const { return c[k]; }

    auto begin() const { return c.begin(); }
    auto end() const { return c.end(); }

    Phasor sum() const { return c[0] + c[1] + c[2]; }
    bool finite() const noexcept { return is_finite(c[0]) && is_finite(c[1]) && is_finite(c[2]); }

    friend bool operator==(const PhasorTriple&, const PhasorTriple&) = default;
};

PhasorTriple operator+(const PhasorTriple& a, const PhasorTriple& b);
PhasorTriple operator-(const PhasorTriple& a, const PhasorTriple& b);
PhasorTriple operator*(Phasor s, const PhasorTriple& a);

/// `x + s * (1,1,1)`: uniform shift of all three components.
PhasorTriple shifted(const PhasorTriple& x, Phasor s);

/// Euclidean norm sqrt(sum |c_k|^2).
double norm(const PhasorTriple& x);
double norm_sq(const PhasorTriple& x);

/// Throws InvalidInput naming `what` if any component is NaN or infinite.
void require_finite(const PhasorTriple& x, std::string_view what);

/// Polar constructor for triples; angles in degrees.
PhasorTriple triple_from_polar_deg(const std::array<double, 3>& mag, const std::array<double, 3>& ang,
                                   Unit u = Unit::dimensionless);

/// a = e^{j 2pi/3}, built from exact constants.
inline constexpr double half_sqrt3 = 0.86602540378443864676;
inline const Phasor rot120{-0.5, half_sqrt3};
inline const Phasor rot240{-0.5, -half_sqrt3};

/// Balanced positive-sequence set [m, m a^2, m a].
PhasorTriple balanced_set(double magnitude = 1.0, Unit u = Unit::dimensionless);

} // namespace cvp
