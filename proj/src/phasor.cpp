#include "cvp/phasor.hpp"

#include "cvp/errors.hpp"

#include <string>

namespace cvp {

std::string_view to_string(Unit u) noexcept {
    switch (u) {
    case Unit::volt: return "V";
    case Unit::ampere: return "A";
    case Unit::volt_ampere: return "VA";
    case Unit::dimensionless: return "";
    }
    return "";
}

Phasor from_polar_deg(double magnitude, double angle_deg) {
    // exact values at multiples of 90 degrees keep table inputs free of cos(90°) noise
    double a = std::fmod(angle_deg, 360.0);
    if (a < 0) a += 360.0;
    if (a == 0.0) return {magnitude, 0.0};
    if (a == 90.0) return {0.0, magnitude};
    if (a == 180.0) return {-magnitude, 0.0};
    if (a == 270.0) return {0.0, -magnitude};
    return std::polar(magnitude, angle_deg / deg_per_rad);
}

double normalize_deg(double angle) {
    double a = std::fmod(angle, 360.0);
    if (a <= -180.0) a += 360.0;
    else if (a > 180.0) a -= 360.0;
    return a;
}

double angle_deg(Phasor p) { return normalize_deg(std::arg(p) * deg_per_rad); }

double angle_distance_deg(double a, double b) { return normalize_deg(a - b); }

PhasorTriple operator+(const PhasorTriple& a, const PhasorTriple& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a.unit};
}

PhasorTriple operator-(const PhasorTriple& a, const PhasorTriple& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a.unit};
}

PhasorTriple operator*(Phasor s, const PhasorTriple& a) { return {s * a[0], s * a[1], s * a[2], a.unit}; }

PhasorTriple shifted(const PhasorTriple& x, Phasor s) { return {x[0] + s, x[1] + s, x[2] + s, x.unit}; }

double norm_sq(const PhasorTriple& x) { return std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]); }

double norm(const PhasorTriple& x) { return std::sqrt(norm_sq(x)); }

void require_finite(const PhasorTriple& x, std::string_view what) {
    for (std::size_t k = 0; k < 3; ++k) {
        if (!is_finite(x[k])) {
            throw InvalidInput(std::string(what) + "[" + std::to_string(k + 1) + "] is not finite");
        }
    }
}

PhasorTriple triple_from_polar_deg(const std::array<double, 3>& mag, const std::array<double, 3>& ang, Unit u) {
    return {from_polar_deg(mag[0], ang[0]), from_polar_deg(mag[1], ang[1]), from_polar_deg(mag[2], ang[2]), u};
}

PhasorTriple balanced_set(double magnitude, Unit u) {
    return {Phasor{magnitude, 0.0}, magnitude * rot240, magnitude * rot120, u};
}

} // namespace cvp
