#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "spinpair/linalg.hpp"

namespace spinpair {

// Direction along which a spin state is a sigma-eigenstate. theta in [0, pi],
// phi in [0, 2pi).
struct QuantizationAxis {
    double theta = 0.0;
    double phi = 0.0;

    Vector3 unit() const {
        return Vector3(std::sin(theta) * std::cos(phi),
                       std::sin(theta) * std::sin(phi),
                       std::cos(theta));
    }
};

struct SpinState {
    CVector2<> amplitudes;
    QuantizationAxis axis;
    int sign = +1;  // +1 or -1 eigenvalue of the axis-aligned sigma
};

struct PairState {
    CVector4<> amplitudes;
    QuantizationAxis axis1;
    QuantizationAxis axis2;
    double delta = 0.0;  // azimuthal phase mismatch, if any
};

// 4x4 Hermitian, unit-trace, positive operator. Construction validates.
class DensityMatrix {
public:
    explicit DensityMatrix(const CMatrix4<>& entries) : m_(entries) {
        if (!entries.allFinite())
            throw std::invalid_argument("DensityMatrix: non-finite entries");
        if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kTol)
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        if (std::abs(entries.trace() - Complex<>(1, 0)) > kTol)
            throw std::invalid_argument("DensityMatrix: trace != 1");
        Eigen::SelfAdjointEigenSolver<CMatrix4<>> solver(entries);
        if (solver.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }

    const CMatrix4<>& entries() const { return m_; }

    double purity() const { return (m_ * m_).trace().real(); }

private:
    CMatrix4<> m_;
};

// Oriented eigenstates of n . sigma:
//   |+> = (cos(t/2), sin(t/2) e^{i phi})
//   |-> = (-sin(t/2) e^{-i phi}, cos(t/2))
inline SpinState make_spin_state(const QuantizationAxis& axis, int sign) {
    if (sign != +1 && sign != -1)
        throw std::invalid_argument("make_spin_state: sign must be +1 or -1");
    const double c = std::cos(axis.theta / 2);
    const double s = std::sin(axis.theta / 2);
    CVector2<> amps;
    if (sign > 0)
        amps << Complex<>(c, 0), s * std::exp(Complex<>(0, axis.phi));
    else
        amps << -s * std::exp(Complex<>(0, -axis.phi)), Complex<>(c, 0);
    return SpinState{amps, axis, sign};
}

// Antisymmetric combination (|+>_1 |->_2 - |->_1 |+>_2) / sqrt(2) with
// independent quantization axes for the two spins.
inline PairState make_pair_state(const QuantizationAxis& axis1,
                                 const QuantizationAxis& axis2) {
    const CVector2<> p1 = make_spin_state(axis1, +1).amplitudes;
    const CVector2<> m1 = make_spin_state(axis1, -1).amplitudes;
    const CVector2<> p2 = make_spin_state(axis2, +1).amplitudes;
    const CVector2<> m2 = make_spin_state(axis2, -1).amplitudes;
    CVector4<> amps = (kron(p1, m2) - kron(m1, p2)) / std::sqrt(2.0);
    return PairState{amps, axis1, axis2, 0.0};
}

inline PairState singlet() {
    return make_pair_state(QuantizationAxis{}, QuantizationAxis{});
}

namespace detail {

// Spin rotation about unit axis n by angle alpha: cos(a/2) I - i sin(a/2) n.sigma
inline CMatrix2<> rotation_about(const Vector3& n, double alpha) {
    return std::cos(alpha / 2) * CMatrix2<>::Identity() -
           Complex<>(0, 1) * std::sin(alpha / 2) * pauli_along(n);
}

}  // namespace detail

// Singlet with an azimuthal phase mismatch delta between the two spins:
// opposite rotations by +-delta/2 about the shared quantization axis.
// For axis = z the amplitudes are (0, e^{-i d/2}, -e^{+i d/2}, 0)/sqrt(2).
inline PairState make_mismatched_singlet(const QuantizationAxis& axis, double delta) {
    const Vector3 n = axis.unit();
    const CMatrix4<> twist =
        kron(detail::rotation_about(n, delta / 2), detail::rotation_about(n, -delta / 2));
    CVector4<> amps = twist * singlet().amplitudes;
    return PairState{amps, axis, axis, delta};
}

// The expanded antisymmetric pair state with equal polar angles and azimuths
// phi +- delta/2, written out componentwise:
//   v1 = cs (e^{-i p1} - e^{-i p2}) / sqrt(2)
//   v2 = (c^2 + s^2 e^{-i (p1 - p2)}) / sqrt(2)
//   v3 = -(c^2 + s^2 e^{+i (p1 - p2)}) / sqrt(2)
//   v4 = cs (e^{+i p1} - e^{+i p2}) / sqrt(2)
// with c = cos(theta/2), s = sin(theta/2), p1 = phi + delta/2, p2 = phi - delta/2.
// Differs from make_mismatched_singlet at second order in delta for theta != 0.
inline PairState make_mismatched_pair_eq7(double theta, double phi, double delta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const double p1 = phi + delta / 2;
    const double p2 = phi - delta / 2;
    const double rt2 = std::sqrt(2.0);
    const auto ei = [](double x) { return std::exp(Complex<>(0, x)); };
    CVector4<> amps;
    amps << c * s * (ei(-p1) - ei(-p2)) / rt2,
            (c * c + s * s * ei(-(p1 - p2))) / rt2,
            -(c * c + s * s * ei(p1 - p2)) / rt2,
            c * s * (ei(p1) - ei(p2)) / rt2;
    return PairState{amps, QuantizationAxis{theta, p1}, QuantizationAxis{theta, p2}, delta};
}

inline DensityMatrix to_density(const PairState& state) {
    if (std::abs(state.amplitudes.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("to_density: state is not normalized");
    CMatrix4<> rho = state.amplitudes * state.amplitudes.adjoint();
    return DensityMatrix(rho);
}

namespace detail {

// Unvalidated dephasing kernel, shared with the ensemble-averaging loop.
inline CMatrix4<> dephase_raw(const CMatrix4<>& rho, const QuantizationAxis& axis) {
    CMatrix4<> out = CMatrix4<>::Zero();
    for (int s1 : {+1, -1}) {
        for (int s2 : {+1, -1}) {
            const CVector4<> basis = kron(make_spin_state(axis, s1).amplitudes,
                                          make_spin_state(axis, s2).amplitudes);
            const double p = (basis.adjoint() * rho * basis)(0, 0).real();
            out += p * (basis * basis.adjoint());
        }
    }
    return out;
}

}  // namespace detail

// Projects rho onto the diagonal of the product eigenbasis of the axis-aligned
// Pauli operators, discarding all coherences between those basis states.
inline DensityMatrix dephase(const DensityMatrix& rho, const QuantizationAxis& axis) {
    return DensityMatrix(detail::dephase_raw(rho.entries(), axis));
}

// |<a|b>|, the phase-insensitive overlap used to compare pure states.
inline double fidelity(const PairState& a, const PairState& b) {
    return std::abs((a.amplitudes.adjoint() * b.amplitudes)(0, 0));
}

}  // namespace spinpair
