#pragma once

#include "cvp/phasor.hpp"

namespace cvp {

/// Symmetrical components in fixed (+, -, h) order.
struct SequenceTriple {
    Phasor plus{};
    Phasor minus{};
    Phasor homopolar{};
    Unit unit = Unit::dimensionless;

    /// Reinterprets (+, -, h) as a plain 3-vector for dot/cross products in sequence coordinates.
    PhasorTriple as_triple() const { return {plus, minus, homopolar, unit}; }
    static SequenceTriple from_triple(const PhasorTriple& x) { return {x[0], x[1], x[2], x.unit}; }

    friend bool operator==(const SequenceTriple&, const SequenceTriple&) = default;
};

using Matrix3 = std::array<std::array<Phasor, 3>, 3>;

/// Power-invariant Fortescue matrix A = (1/sqrt3) [[1,a,a^2],[1,a^2,a],[1,1,1]].
struct FortescueMatrix {
    static const Matrix3& forward();
    /// A^-1 = conj(A)^T.
    static const Matrix3& inverse();
    /// Elementwise conjugate A*.
    static const Matrix3& conjugate();
    /// Cofactor expansion of det(A); -j up to rounding.
    static Phasor determinant();
};

Matrix3 transpose(const Matrix3& m);
Matrix3 multiply(const Matrix3& a, const Matrix3& b);
PhasorTriple multiply(const Matrix3& m, const PhasorTriple& x);
Phasor determinant(const Matrix3& m);

SequenceTriple to_sequence(const PhasorTriple& x);
PhasorTriple from_sequence(const SequenceTriple& x);

/// || (AV) x (AI) - det(A) A* (V x I) ||.
double cross_transform_check(const PhasorTriple& v, const PhasorTriple& i);

} // namespace cvp
