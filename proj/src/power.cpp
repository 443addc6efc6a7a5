#include "cvp/power.hpp"

namespace cvp {

namespace {

Phasor dot_unchecked(const PhasorTriple& v, const PhasorTriple& i) {
    return v[0] * std::conj(i[0]) + v[1] * std::conj(i[1]) + v[2] * std::conj(i[2]);
}

PhasorTriple cross_unchecked(const PhasorTriple& v, const PhasorTriple& i) {
    return {v[1] * i[2] - v[2] * i[1], v[2] * i[0] - v[0] * i[2], v[0] * i[1] - v[1] * i[0], Unit::volt_ampere};
}

} // namespace

Phasor dot_power(const PhasorTriple& v, const PhasorTriple& i) {
    require_finite(v, "voltage");
    require_finite(i, "current");
    return dot_unchecked(v, i);
}

PhasorTriple cross_unbalance(const PhasorTriple& v, const PhasorTriple& i) {
    require_finite(v, "voltage");
    require_finite(i, "current");
    return cross_unchecked(v, i);
}

CvpResult cvp(const PhasorTriple& v, const PhasorTriple& i) {
    require_finite(v, "voltage");
    require_finite(i, "current");
    CvpResult r;
    const Phasor s = dot_unchecked(v, i);
    r.p = s.real();
    r.q = s.imag();
    r.d = cross_unchecked(v, i);
    r.s_norm = std::sqrt(std::norm(s) + norm_sq(r.d));
    if (r.s_norm > 0.0) r.pf = r.p / r.s_norm;
    return r;
}

double lagrange_residual(const PhasorTriple& v, const PhasorTriple& i) {
    require_finite(v, "voltage");
    require_finite(i, "current");
    double pairs = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = j + 1; k < 3; ++k) pairs += std::norm(v[j] * i[k] - v[k] * i[j]);
    }
    return norm_sq(v) * norm_sq(i) - std::norm(dot_unchecked(v, i)) - pairs;
}

} // namespace cvp
