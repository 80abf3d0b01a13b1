#pragma once

#include <cmath>

#include <doctest.h>

#include "markdyn/dynamics.hpp"
#include "markdyn/rng.hpp"

namespace testsupport {

using markdyn::Complex;
using markdyn::Matrix;
using markdyn::Vector;

inline Matrix sigma_x() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    return m;
}

inline Matrix sigma_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline Matrix sigma_z() {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
    return m;
}

inline Vector ket0() {
    Vector v(2);
    v << Complex(1, 0), Complex(0, 0);
    return v;
}

inline Vector ket1() {
    Vector v(2);
    v << Complex(0, 0), Complex(1, 0);
    return v;
}

inline Vector ket_plus() {
    Vector v(2);
    v << Complex(M_SQRT1_2, 0), Complex(M_SQRT1_2, 0);
    return v;
}

/// F1: H = sigma_y, W = |+><+|, P = Q = |0><0|. Closed form Delta(t) = sin(2t)/2.
inline markdyn::ProcessInstance fixture_f1() {
    return markdyn::ProcessInstance(
        markdyn::DynamicalSystem(markdyn::Operator(sigma_y())),
        markdyn::DensityState::pure(ket_plus()),
        markdyn::Projection::rank_one(ket0()).op());
}

inline markdyn::Projection f1_projection() { return markdyn::Projection::rank_one(ket0()); }

/// Series oracle for exp(M), scaling-and-squaring plus Taylor. Independent of
/// the spectral route used by DynamicalSystem.
inline Matrix series_expm(const Matrix& m) {
    int squarings = 0;
    Matrix scaled = m;
    while (scaled.cwiseAbs().sum() > 0.5 && squarings < 100) {
        scaled *= 0.5;
        ++squarings;
    }
    Matrix term = Matrix::Identity(m.rows(), m.cols());
    Matrix sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace testsupport
