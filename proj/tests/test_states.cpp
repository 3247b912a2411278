#include <doctest.h>

#include <numbers>

#include "spinpair/correlations.hpp"
#include "spinpair/states.hpp"
#include "test_util.hpp"

using namespace spinpair;
using testing::random_axis;

namespace {

constexpr double kPi = std::numbers::pi;

CVector4<> singlet_vector() {
    CVector4<> v;
    v << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
    return v;
}

}  // namespace

TEST_CASE("oriented spin states at reference angles") {
    const CVector2<> up = make_spin_state({0, 0}, +1).amplitudes;
    CHECK(std::abs(up(0) - 1.0) < kTol);
    CHECK(std::abs(up(1)) < kTol);

    const CVector2<> px = make_spin_state({kPi / 2, 0}, +1).amplitudes;
    CHECK(std::abs(px(0) - 1 / std::sqrt(2.0)) < kTol);
    CHECK(std::abs(px(1) - 1 / std::sqrt(2.0)) < kTol);

    // theta = pi/2, phi = pi/2, minus branch: (-sin(pi/4) e^{-i pi/2}, cos(pi/4))
    const CVector2<> my = make_spin_state({kPi / 2, kPi / 2}, -1).amplitudes;
    CHECK(std::abs(my(0) - Complex<>(0, 1 / std::sqrt(2.0))) < kTol);
    CHECK(std::abs(my(1) - 1 / std::sqrt(2.0)) < kTol);
}

TEST_CASE("spin states are unit-norm sigma eigenstates for random axes") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const QuantizationAxis axis = random_axis(rng);
        const CMatrix2<> sigma = pauli_along(axis.unit());
        for (int sign : {+1, -1}) {
            const CVector2<> v = make_spin_state(axis, sign).amplitudes;
            CHECK(std::abs(v.norm() - 1.0) < kTol);
            CHECK((sigma * v - double(sign) * v).cwiseAbs().maxCoeff() < kTol);
        }
    }
}

TEST_CASE("equal axes always give the singlet up to a global phase") {
    const PairState psi = make_pair_state({1.1, 2.3}, {1.1, 2.3});
    PairState ref{singlet_vector(), {}, {}, 0.0};
    CHECK(fidelity(psi, ref) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singlet isotropy over random axes") {
    Rng rng(22);
    const PairState ref{singlet_vector(), {}, {}, 0.0};
    PairState prev = ref;
    for (int trial = 0; trial < 100; ++trial) {
        const QuantizationAxis axis = random_axis(rng);
        const PairState psi = make_pair_state(axis, axis);
        CHECK(fidelity(psi, ref) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fidelity(psi, prev) == doctest::Approx(1.0).epsilon(1e-12));
        prev = psi;
    }
}

TEST_CASE("antisymmetric pair state agrees with its expanded component form") {
    // theta1 = theta2 = pi/2, phi1 = pi/2, phi2 = -pi/2
    const PairState direct = make_pair_state({kPi / 2, kPi / 2}, {kPi / 2, -kPi / 2});
    const PairState expanded = make_mismatched_pair_eq7(kPi / 2, 0.0, kPi);
    CHECK((direct.amplitudes - expanded.amplitudes).cwiseAbs().maxCoeff() < kTol);
    CHECK(std::abs(direct.amplitudes.norm() - 1.0) < kTol);
}

TEST_CASE("pair states with unequal polar angles are still normalized") {
    const PairState psi = make_pair_state({0, 0}, {kPi, 0});
    CHECK(std::abs(psi.amplitudes.norm() - 1.0) < kTol);
}

TEST_CASE("mismatched singlet along z") {
    SUBCASE("delta = 0 reproduces the singlet") {
        const PairState psi = make_mismatched_singlet({0, 0}, 0.0);
        PairState ref{singlet_vector(), {}, {}, 0.0};
        CHECK(fidelity(psi, ref) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("explicit amplitudes (0, e^{-i d/2}, -e^{+i d/2}, 0)/sqrt(2)") {
        const double delta = 0.7;
        const PairState psi = make_mismatched_singlet({0, 0}, delta);
        CVector4<> expected;
        expected << 0, std::exp(Complex<>(0, -delta / 2)) / std::sqrt(2.0),
            -std::exp(Complex<>(0, delta / 2)) / std::sqrt(2.0), 0;
        CHECK((psi.amplitudes - expected).cwiseAbs().maxCoeff() < kTol);
    }
    SUBCASE("delta = pi is proportional to (0, 1, 1, 0)") {
        const PairState psi = make_mismatched_singlet({0, 0}, kPi);
        CVector4<> triplet;
        triplet << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
        PairState ref{triplet, {}, {}, 0.0};
        CHECK(fidelity(psi, ref) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("mismatched singlet at delta = 0 matches make_pair_state for random axes") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const QuantizationAxis axis = random_axis(rng);
        CHECK(fidelity(make_mismatched_singlet(axis, 0.0), make_pair_state(axis, axis)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("expanded mismatched pair state") {
    SUBCASE("theta = 0 kills all phase dependence") {
        const PairState psi = make_mismatched_pair_eq7(0.0, 1.7, 2.9);
        CHECK((psi.amplitudes - singlet_vector()).cwiseAbs().maxCoeff() < kTol);
    }
    SUBCASE("theta = pi/2, phi = 0 components") {
        const double delta = 0.9;
        const PairState psi = make_mismatched_pair_eq7(kPi / 2, 0.0, delta);
        const double r8 = 2.0 * std::sqrt(2.0);
        const Complex<> v1 =
            (std::exp(Complex<>(0, -delta / 2)) - std::exp(Complex<>(0, delta / 2))) / r8;
        const Complex<> v2 = (1.0 + std::exp(Complex<>(0, -delta))) / r8;
        CHECK(std::abs(psi.amplitudes(0) - v1) < kTol);
        CHECK(std::abs(psi.amplitudes(1) - v2) < kTol);
        CHECK(std::abs(psi.amplitudes(2) + std::conj(v2)) < kTol);
        CHECK(std::abs(psi.amplitudes(3) - std::conj(v1)) < kTol);
    }
    SUBCASE("unit norm for random angles") {
        Rng rng(24);
        for (int trial = 0; trial < 200; ++trial) {
            const PairState psi = make_mismatched_pair_eq7(
                kPi * rng.uniform(), 2 * kPi * rng.uniform(), 4 * kPi * (rng.uniform() - 0.5));
            CHECK(std::abs(psi.amplitudes.norm() - 1.0) < kTol);
        }
    }
}

TEST_CASE("the two mismatch constructions differ beyond first order for theta != 0") {
    const QuantizationAxis axis{kPi / 2, 0.0};
    CHECK(fidelity(make_mismatched_singlet(axis, 0.0), make_mismatched_pair_eq7(kPi / 2, 0, 0.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const double big = 1.0 - fidelity(make_mismatched_singlet(axis, 1.0),
                                      make_mismatched_pair_eq7(kPi / 2, 0, 1.0));
    const double small = 1.0 - fidelity(make_mismatched_singlet(axis, 0.01),
                                        make_mismatched_pair_eq7(kPi / 2, 0, 0.01));
    CHECK(big > 1e-4);      // genuinely distinct states at finite delta
    CHECK(small < 1e-4);    // but coinciding in the delta -> 0 limit
}

TEST_CASE("to_density builds the singlet projector") {
    const DensityMatrix rho = to_density(singlet());
    const CMatrix4<>& m = rho.entries();
    CHECK(std::abs(m(1, 1) - 0.5) < kTol);
    CHECK(std::abs(m(2, 2) - 0.5) < kTol);
    CHECK(std::abs(m(1, 2) + 0.5) < kTol);
    CHECK(std::abs(m(2, 1) + 0.5) < kTol);
    CHECK(std::abs(m(0, 0)) < kTol);
    CHECK(std::abs(m(3, 3)) < kTol);

    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<CMatrix4<>> solver(m);
    CHECK(solver.eigenvalues()(3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(solver.eigenvalues()(2)) < 1e-12);
}

TEST_CASE("to_density rejects unnormalized states") {
    PairState bad = singlet();
    bad.amplitudes *= 2.0;
    CHECK_THROWS_AS(to_density(bad), std::invalid_argument);
}

TEST_CASE("DensityMatrix validation") {
    CMatrix4<> m = CMatrix4<>::Zero();
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    CHECK_THROWS_AS((void)DensityMatrix(m), std::invalid_argument);  // negative eigenvalue

    m = CMatrix4<>::Identity() * 0.5;
    CHECK_THROWS_AS((void)DensityMatrix(m), std::invalid_argument);  // trace != 1

    m = CMatrix4<>::Zero();
    m(0, 0) = 1.0;
    m(0, 1) = Complex<>(0, 0.1);
    CHECK_THROWS_AS((void)DensityMatrix(m), std::invalid_argument);  // not Hermitian
}

TEST_CASE("dephasing the singlet along z") {
    const DensityMatrix rho = dephase(to_density(singlet()), {0, 0});
    CMatrix4<> expected = CMatrix4<>::Zero();
    expected(1, 1) = 0.5;
    expected(2, 2) = 0.5;
    CHECK((rho.entries() - expected).cwiseAbs().maxCoeff() < kTol);
}

TEST_CASE("dephasing is an idempotent, purity-non-increasing channel") {
    Rng rng(25);
    const DensityMatrix rho = to_density(singlet());
    for (int trial = 0; trial < 25; ++trial) {
        const QuantizationAxis axis = random_axis(rng);
        const DensityMatrix d1 = dephase(rho, axis);
        const DensityMatrix d2 = dephase(d1, axis);
        CHECK((d1.entries() - d2.entries()).cwiseAbs().maxCoeff() < kTol);
        CHECK(d1.purity() <= rho.purity() + kTol);

        const CMatrix2<> sigma = pauli_along(axis.unit());
        const CMatrix2<> id = CMatrix2<>::Identity();
        for (const CMatrix4<>& op : {kron(sigma, id), kron(id, sigma)}) {
            CHECK((d1.entries() * op - op * d1.entries()).cwiseAbs().maxCoeff() < kTol);
        }
    }
}
