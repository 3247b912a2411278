#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "spinpair/linalg.hpp"
#include "spinpair/states.hpp"

namespace spinpair {

// Detector direction (polarizer angle / field direction), a unit 3-vector.
struct DetectorSetting {
    Vector3 n;

    explicit DetectorSetting(const Vector3& v) : n(v) {
        if (std::abs(v.norm() - 1.0) > kTol)
            throw std::invalid_argument("DetectorSetting: not a unit vector");
    }

    static DetectorSetting from_spherical(double theta, double phi) {
        return DetectorSetting(Vector3(std::sin(theta) * std::cos(phi),
                                       std::sin(theta) * std::sin(phi),
                                       std::cos(theta)));
    }
};

// <sigma_i^1 sigma_j^2> as a real 3x3 tensor, plus the single-spin
// expectation vectors <sigma^1> and <sigma^2>.
struct CorrelationTensor {
    Matrix3 t = Matrix3::Zero();
    Vector3 s1 = Vector3::Zero();
    Vector3 s2 = Vector3::Zero();
};

struct CorrelationDecomposition {
    double total = 0.0;
    double classical = 0.0;
    double quantum = 0.0;
};

namespace detail {

inline CMatrix2<> pauli_component(int i) {
    switch (i) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        default: return pauli_z();
    }
}

inline double real_trace(const CMatrix4<>& m) {
    const Complex<> tr = m.trace();
    if (std::abs(tr.imag()) > kTol)
        throw std::logic_error("correlation trace has imaginary residue");
    return tr.real();
}

}  // namespace detail

// t_ij = Tr(rho sigma_i x sigma_j), s1_i = Tr(rho sigma_i x I),
// s2_j = Tr(rho I x sigma_j).
inline CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
    CorrelationTensor out;
    const CMatrix4<>& r = rho.entries();
    const CMatrix2<> id = CMatrix2<>::Identity();
    for (int i = 0; i < 3; ++i) {
        const CMatrix2<> si = detail::pauli_component(i);
        out.s1(i) = detail::real_trace(r * kron(si, id));
        out.s2(i) = detail::real_trace(r * kron(id, si));
        for (int j = 0; j < 3; ++j)
            out.t(i, j) = detail::real_trace(r * kron(si, detail::pauli_component(j)));
    }
    return out;
}

// E(a, b) = a.t.b - (a.s1)(s2.b). The subtraction removes the product of
// single-spin means, so E is a covariance of the two +-1 outcomes.
inline double correlate(const CorrelationTensor& tensor, const DetectorSetting& a,
                        const DetectorSetting& b) {
    return a.n.dot(tensor.t * b.n) - a.n.dot(tensor.s1) * tensor.s2.dot(b.n);
}

// Orthonormal in-plane basis (e1, e2) perpendicular to `axis`; e1 lies in the
// meridian plane spanned by the axis and global x (global y when axis is
// parallel to x). Only azimuth differences are observable, but the reference
// must be fixed for reproducibility.
inline std::pair<Vector3, Vector3> meridian_basis(const Vector3& axis) {
    Vector3 seed = Vector3::UnitX();
    if (std::abs(std::abs(axis.dot(seed)) - 1.0) < 1e-9) seed = Vector3::UnitY();
    const Vector3 e1 = (seed - axis.dot(seed) * axis).normalized();
    const Vector3 e2 = axis.cross(e1);
    return {e1, e2};
}

// Splits E(a, b) of the (possibly phase-mismatched) singlet into its
// classical and quantum parts relative to the quantization axis:
//   classical = -cos(t_a) cos(t_b)
//   quantum   = -sin(t_a) sin(t_b) cos(phi_b - phi_a + delta)
// where (t_a, phi_a) are spherical coordinates of `a` relative to the axis.
inline CorrelationDecomposition decompose(const DetectorSetting& a,
                                          const DetectorSetting& b,
                                          const QuantizationAxis& axis,
                                          double delta) {
    const Vector3 p = axis.unit();
    const auto [e1, e2] = meridian_basis(p);
    const double cos_ta = a.n.dot(p);
    const double cos_tb = b.n.dot(p);
    const double sin_ta = std::hypot(a.n.dot(e1), a.n.dot(e2));
    const double sin_tb = std::hypot(b.n.dot(e1), b.n.dot(e2));
    const double phi_a = std::atan2(a.n.dot(e2), a.n.dot(e1));
    const double phi_b = std::atan2(b.n.dot(e2), b.n.dot(e1));
    CorrelationDecomposition out;
    out.classical = -cos_ta * cos_tb;
    out.quantum = -sin_ta * sin_tb * std::cos(phi_b - phi_a + delta);
    out.total = out.classical + out.quantum;
    return out;
}

// Closed form of the mismatched-singlet tensor (axis = z):
//   t = -zz - (xx + yy) cos(delta) + (xy - yx) sin(delta),  s1 = s2 = 0.
// At delta = 0 this is -Identity.
inline CorrelationTensor tensor_closed_form(double delta) {
    CorrelationTensor out;
    out.t(0, 0) = -std::cos(delta);
    out.t(1, 1) = -std::cos(delta);
    out.t(2, 2) = -1.0;
    out.t(0, 1) = std::sin(delta);
    out.t(1, 0) = -std::sin(delta);
    return out;
}

}  // namespace spinpair
