#pragma once

#include "cvp/phasor.hpp"

#include <optional>

namespace cvp {

/// Intraphase complex power P + jQ together with the cross-phase unbalance vector D.
struct CvpResult {
    double p = 0.0;    // W
    double q = 0.0;    // var
    PhasorTriple d;    // VA
    double s_norm = 0.0;
    std::optional<double> pf; // P / s_norm, absent when s_norm == 0

    Phasor complex_power() const { return {p, q}; }
    double d_norm() const { return norm(d); }
};

/// sum_k V_k conj(I_k) = P + jQ.
Phasor dot_power(const PhasorTriple& v, const PhasorTriple& i);

/// V x I without conjugation: D_1 = V_2 I_3 - V_3 I_2 and cyclic.
PhasorTriple cross_unbalance(const PhasorTriple& v, const PhasorTriple& i);

/// Full decomposition; s_norm = sqrt(P^2 + Q^2 + |D|^2).
CvpResult cvp(const PhasorTriple& v, const PhasorTriple& i);

/// |V|^2 |I|^2 - |V.I*|^2 - sum_{j<k} |V_j I_k - V_k I_j|^2. Zero in exact arithmetic.
double lagrange_residual(const PhasorTriple& v, const PhasorTriple& i);

} // namespace cvp
