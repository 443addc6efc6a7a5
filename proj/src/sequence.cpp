#include "cvp/sequence.hpp"

#include "cvp/errors.hpp"
#include "cvp/power.hpp"

namespace cvp {

namespace {

constexpr double inv_sqrt3 = 0.57735026918962576451;

Matrix3 build_forward() {
    const Phasor one{inv_sqrt3, 0.0};
    const Phasor a = inv_sqrt3 * rot120;
    const Phasor a2 = inv_sqrt3 * rot240;
    return {{{one, a, a2}, {one, a2, a}, {one, one, one}}};
}

Matrix3 conj_of(const Matrix3& m) {
    Matrix3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r[i][j] = std::conj(m[i][j]);
    return r;
}

} // namespace

const Matrix3& FortescueMatrix::forward() {
    static const Matrix3 a = build_forward();
    return a;
}

const Matrix3& FortescueMatrix::conjugate() {
    static const Matrix3 c = conj_of(forward());
    return c;
}

const Matrix3& FortescueMatrix::inverse() {
    static const Matrix3 inv = transpose(conjugate());
    return inv;
}

Phasor FortescueMatrix::determinant() { return cvp::determinant(forward()); }

Matrix3 transpose(const Matrix3& m) {
    Matrix3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r[i][j] = m[j][i];
    return r;
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
    Matrix3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

PhasorTriple multiply(const Matrix3& m, const PhasorTriple& x) {
    PhasorTriple r;
    r.unit = x.unit;
    for (std::size_t i = 0; i < 3; ++i) r[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
    return r;
}

Phasor determinant(const Matrix3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

SequenceTriple to_sequence(const PhasorTriple& x) {
    require_finite(x, "phase vector");
    return SequenceTriple::from_triple(multiply(FortescueMatrix::forward(), x));
}

PhasorTriple from_sequence(const SequenceTriple& x) {
    const PhasorTriple t = x.as_triple();
    require_finite(t, "sequence vector");
    return multiply(FortescueMatrix::inverse(), t);
}

double cross_transform_check(const PhasorTriple& v, const PhasorTriple& i) {
    const PhasorTriple lhs = cross_unbalance(to_sequence(v).as_triple(), to_sequence(i).as_triple());
    const PhasorTriple rhs = FortescueMatrix::determinant() * multiply(FortescueMatrix::conjugate(), cross_unbalance(v, i));
    return norm(lhs - rhs);
}

} // namespace cvp
