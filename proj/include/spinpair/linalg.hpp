#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace spinpair {

template <typename Scalar = double>
using Complex = std::complex<Scalar>;

template <typename Scalar = double>
using CVector2 = Eigen::Matrix<Complex<Scalar>, 2, 1>;
template <typename Scalar = double>
using CVector4 = Eigen::Matrix<Complex<Scalar>, 4, 1>;
template <typename Scalar = double>
using CMatrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar = double>
using CMatrix4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

// Absolute componentwise tolerance for analytic checks; all quantities
// in this project are O(1).
inline constexpr double kTol = 1e-12;

template <typename Scalar = double>
CMatrix2<Scalar> pauli_x() {
    CMatrix2<Scalar> m;
    m << Complex<Scalar>(0, 0), Complex<Scalar>(1, 0),
         Complex<Scalar>(1, 0), Complex<Scalar>(0, 0);
    return m;
}

template <typename Scalar = double>
CMatrix2<Scalar> pauli_y() {
    CMatrix2<Scalar> m;
    m << Complex<Scalar>(0, 0), Complex<Scalar>(0, -1),
         Complex<Scalar>(0, 1), Complex<Scalar>(0, 0);
    return m;
}

template <typename Scalar = double>
CMatrix2<Scalar> pauli_z() {
    CMatrix2<Scalar> m;
    m << Complex<Scalar>(1, 0), Complex<Scalar>(0, 0),
         Complex<Scalar>(0, 0), Complex<Scalar>(-1, 0);
    return m;
}

// Kronecker product with the (2i+k, 2j+l) index convention, matching the
// project-wide |++>, |+->, |-+>, |--> basis order.
template <typename Scalar>
CMatrix4<Scalar> kron(const CMatrix2<Scalar>& a, const CMatrix2<Scalar>& b) {
    CMatrix4<Scalar> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

template <typename Scalar>
CVector4<Scalar> kron(const CVector2<Scalar>& a, const CVector2<Scalar>& b) {
    CVector4<Scalar> out;
    out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return out;
}

// n . sigma for a unit vector n. Hermitian, traceless, eigenvalues +-1.
template <typename Derived>
CMatrix2<typename Derived::Scalar> pauli_along(const Eigen::MatrixBase<Derived>& n_expr) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Matrix<Scalar, 3, 1> n = n_expr;
    if (std::abs(n.norm() - Scalar(1)) > Scalar(kTol))
        throw std::invalid_argument("pauli_along: direction must be a unit vector");
    CMatrix2<Scalar> m;
    m << Complex<Scalar>(n.z(), 0),    Complex<Scalar>(n.x(), -n.y()),
         Complex<Scalar>(n.x(), n.y()), Complex<Scalar>(-n.z(), 0);
    return m;
}

template <typename Scalar>
Complex<Scalar> trace4(const CMatrix4<Scalar>& m) {
    return m.trace();
}

// <state| m |state>
template <typename Scalar>
Complex<Scalar> expectation(const CVector4<Scalar>& state, const CMatrix4<Scalar>& m) {
    return (state.adjoint() * m * state)(0, 0);
}

}  // namespace spinpair
