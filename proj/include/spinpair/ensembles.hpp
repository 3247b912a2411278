#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "spinpair/correlations.hpp"
#include "spinpair/linalg.hpp"
#include "spinpair/rng.hpp"
#include "spinpair/states.hpp"

namespace spinpair {

// Distribution of quantization axes over which disentangled-pair
// correlations are averaged.
class AxisDistribution {
public:
    enum class Kind { Sphere, Plane, Fixed, Custom };

    static AxisDistribution sphere() { return AxisDistribution(Kind::Sphere, Vector3::UnitZ()); }

    static AxisDistribution plane(const Vector3& normal) {
        if (std::abs(normal.norm() - 1.0) > kTol)
            throw std::invalid_argument("AxisDistribution::plane: normal must be unit");
        return AxisDistribution(Kind::Plane, normal);
    }

    static AxisDistribution fixed(const Vector3& axis) {
        if (std::abs(axis.norm() - 1.0) > kTol)
            throw std::invalid_argument("AxisDistribution::fixed: axis must be unit");
        return AxisDistribution(Kind::Fixed, axis);
    }

    static AxisDistribution custom(std::function<Vector3(Rng&)> sampler) {
        AxisDistribution d(Kind::Custom, Vector3::UnitZ());
        d.custom_ = std::move(sampler);
        return d;
    }

    Kind kind() const { return kind_; }
    const Vector3& direction() const { return dir_; }

    // Sphere sampling uses cos(theta) ~ U(-1, 1), phi ~ U(0, 2 pi), which is
    // exactly area-uniform with no rejection.
    Vector3 sample(Rng& rng) const {
        switch (kind_) {
            case Kind::Sphere: {
                const double z = 2.0 * rng.uniform() - 1.0;
                const double phi = 2.0 * std::numbers::pi * rng.uniform();
                const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                return Vector3(r * std::cos(phi), r * std::sin(phi), z);
            }
            case Kind::Plane: {
                const auto [e1, e2] = meridian_basis(dir_);
                const double alpha = 2.0 * std::numbers::pi * rng.uniform();
                return std::cos(alpha) * e1 + std::sin(alpha) * e2;
            }
            case Kind::Fixed:
                return dir_;
            case Kind::Custom:
            default:
                return custom_(rng);
        }
    }

private:
    AxisDistribution(Kind kind, const Vector3& dir) : kind_(kind), dir_(dir) {}

    Kind kind_;
    Vector3 dir_;  // plane normal or fixed axis
    std::function<Vector3(Rng&)> custom_;
};

// Monte Carlo average of the disentangled correlation tensor -PP over the
// axis distribution. `tensor` carries the sign: averaged E_D(a,b) = a.tensor.b.
struct EnsembleAverage {
    Matrix3 tensor = Matrix3::Zero();
    std::int64_t n_samples = 0;
    Matrix3 std_error = Matrix3::Zero();
};

// Exact mean of PP over the distribution (no sign):
//   sphere       -> I/3
//   plane (n)    -> (I - nn)/2
// so the averaged disentangled correlation is -a . mean . b.
inline Matrix3 average_analytic(const AxisDistribution& dist) {
    switch (dist.kind()) {
        case AxisDistribution::Kind::Sphere:
            return Matrix3::Identity() / 3.0;
        case AxisDistribution::Kind::Plane: {
            const Vector3& n = dist.direction();
            return (Matrix3::Identity() - n * n.transpose()) / 2.0;
        }
        default:
            throw std::invalid_argument(
                "average_analytic: only sphere and plane distributions are supported");
    }
}

// Sample mean of -PP, with per-entry standard error (sample std / sqrt(n)).
// Sample i draws from substream (seed, i), so the result does not depend on
// how the loop is partitioned.
inline EnsembleAverage average_monte_carlo(const AxisDistribution& dist, std::int64_t n,
                                           std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("average_monte_carlo: n must be >= 1");
    Matrix3 mean = Matrix3::Zero();
    Matrix3 m2 = Matrix3::Zero();
    for (std::int64_t i = 0; i < n; ++i) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
        const Vector3 p = dist.sample(rng);
        const Matrix3 x = -(p * p.transpose());
        const Matrix3 d = x - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d.cwiseProduct(x - mean);
    }
    EnsembleAverage out;
    out.tensor = mean;
    out.n_samples = n;
    if (n > 1)
        out.std_error = (m2 / static_cast<double>(n - 1)).cwiseSqrt() /
                        std::sqrt(static_cast<double>(n));
    return out;
}

// Mean over axis samples of the singlet dephased along each sampled axis:
// the mixed state left after each pair disentangles along its own hidden axis.
inline DensityMatrix averaged_density(const AxisDistribution& dist, std::int64_t n,
                                      std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("averaged_density: n must be >= 1");
    const CMatrix4<> singlet_rho = to_density(singlet()).entries();
    CMatrix4<> acc = CMatrix4<>::Zero();
    for (std::int64_t i = 0; i < n; ++i) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
        const Vector3 p = dist.sample(rng);
        const QuantizationAxis axis{std::acos(std::clamp(p.z(), -1.0, 1.0)),
                                    std::atan2(p.y(), p.x())};
        acc += detail::dephase_raw(singlet_rho, axis);
    }
    return DensityMatrix(acc / static_cast<double>(n));
}

}  // namespace spinpair
