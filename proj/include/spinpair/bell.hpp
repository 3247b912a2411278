#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "spinpair/correlations.hpp"
#include "spinpair/linalg.hpp"

namespace spinpair {

// E(a, b) for arbitrary unit detector settings.
using Correlator = std::function<double(const Vector3&, const Vector3&)>;

struct ChshSettings {
    Vector3 a, a_prime, b, b_prime;
};

enum class BellClass { ClassicalCompatible, QuantumViolating };

struct ChshResult {
    double s_value = 0.0;
    ChshSettings settings;
    BellClass classification = BellClass::ClassicalCompatible;
};

inline const char* to_string(BellClass c) {
    return c == BellClass::QuantumViolating ? "quantum-violating" : "classical-compatible";
}

inline Correlator tensor_correlator(const CorrelationTensor& tensor) {
    return [tensor](const Vector3& a, const Vector3& b) {
        return a.dot(tensor.t * b) - a.dot(tensor.s1) * tensor.s2.dot(b);
    };
}

// E(a, b) = -k a.b (the singlet at k = 1, ensemble-averaged disentangled
// models at k = 1/3 and 1/2).
inline Correlator scaled_cosine_correlator(double k) {
    return [k](const Vector3& a, const Vector3& b) { return -k * a.dot(b); };
}

inline BellClass classify_chsh(double s_value) {
    return std::abs(s_value) > 2.0 + 1e-9 ? BellClass::QuantumViolating
                                          : BellClass::ClassicalCompatible;
}

// S = E(a,b) - E(a,b') + E(a',b) + E(a',b')
inline ChshResult chsh(const Correlator& correlator, const ChshSettings& s) {
    ChshResult out;
    out.settings = s;
    out.s_value = correlator(s.a, s.b) - correlator(s.a, s.b_prime) +
                  correlator(s.a_prime, s.b) + correlator(s.a_prime, s.b_prime);
    out.classification = classify_chsh(out.s_value);
    return out;
}

namespace detail {

inline Vector3 from_angles(double theta, double phi) {
    return Vector3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta));
}

}  // namespace detail

// Deterministic maximizer of |S| over detector tetrads. Stage 1 is a 1-degree
// grid over tetrads lying in each coordinate plane; for fixed (a, a') the two
// B-side maxima decouple, so the grid is cubic rather than quartic in the
// angle count. Stage 2 is coordinate descent over all eight spherical angles
// with step halving down to 1e-7 rad, so coplanarity is an initial guess, not
// an assumption. Ties resolve to the first (lexicographically smallest)
// angle tuple scanned.
inline ChshResult maximize_chsh(const Correlator& correlator) {
    constexpr int kSteps = 360;
    constexpr double kDeg = std::numbers::pi / 180.0;

    const std::array<std::pair<Vector3, Vector3>, 3> planes = {{
        {Vector3::UnitX(), Vector3::UnitY()},
        {Vector3::UnitX(), Vector3::UnitZ()},
        {Vector3::UnitY(), Vector3::UnitZ()},
    }};

    double best_abs = -1.0;
    std::array<Vector3, 4> best_vecs{};  // a, a', b, b'

    std::vector<double> e(kSteps * kSteps);
    std::vector<Vector3> u(kSteps);
    for (const auto& [e1, e2] : planes) {
        for (int k = 0; k < kSteps; ++k)
            u[k] = std::cos(k * kDeg) * e1 + std::sin(k * kDeg) * e2;
        for (int i = 0; i < kSteps; ++i)
            for (int k = 0; k < kSteps; ++k)
                e[i * kSteps + k] = correlator(u[i], u[k]);

        for (int i = 0; i < kSteps; ++i) {
            const double* ei = &e[i * kSteps];
            for (int j = 0; j < kSteps; ++j) {
                const double* ej = &e[j * kSteps];
                // g1(k) = E(a,u_k) + E(a',u_k), g2(k) = E(a',u_k) - E(a,u_k)
                double g1_max = -1e300, g1_min = 1e300, g2_max = -1e300, g2_min = 1e300;
                int k1_max = 0, k1_min = 0, k2_max = 0, k2_min = 0;
                for (int k = 0; k < kSteps; ++k) {
                    const double g1 = ei[k] + ej[k];
                    const double g2 = ej[k] - ei[k];
                    if (g1 > g1_max) { g1_max = g1; k1_max = k; }
                    if (g1 < g1_min) { g1_min = g1; k1_min = k; }
                    if (g2 > g2_max) { g2_max = g2; k2_max = k; }
                    if (g2 < g2_min) { g2_min = g2; k2_min = k; }
                }
                const double s_hi = g1_max + g2_max;
                const double s_lo = g1_min + g2_min;
                if (std::abs(s_hi) > best_abs) {
                    best_abs = std::abs(s_hi);
                    best_vecs = {u[i], u[j], u[k1_max], u[k2_max]};
                }
                if (std::abs(s_lo) > best_abs) {
                    best_abs = std::abs(s_lo);
                    best_vecs = {u[i], u[j], u[k1_min], u[k2_min]};
                }
            }
        }
    }

    // Stage 2: refine (theta, phi) of all four settings.
    std::array<double, 8> ang{};
    for (int v = 0; v < 4; ++v) {
        ang[2 * v] = std::acos(std::clamp(best_vecs[v].z(), -1.0, 1.0));
        ang[2 * v + 1] = std::atan2(best_vecs[v].y(), best_vecs[v].x());
    }
    const auto eval = [&](const std::array<double, 8>& x) {
        const Vector3 a = detail::from_angles(x[0], x[1]);
        const Vector3 ap = detail::from_angles(x[2], x[3]);
        const Vector3 b = detail::from_angles(x[4], x[5]);
        const Vector3 bp = detail::from_angles(x[6], x[7]);
        return correlator(a, b) - correlator(a, bp) + correlator(ap, b) + correlator(ap, bp);
    };
    double s_best = eval(ang);
    for (double step = 0.05; step >= 1e-7;) {
        bool improved = false;
        for (int c = 0; c < 8; ++c) {
            for (double d : {step, -step}) {
                std::array<double, 8> trial = ang;
                trial[c] += d;
                const double s = eval(trial);
                if (std::abs(s) > std::abs(s_best)) {
                    s_best = s;
                    ang = trial;
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2;
    }

    ChshResult out;
    out.settings = ChshSettings{detail::from_angles(ang[0], ang[1]),
                                detail::from_angles(ang[2], ang[3]),
                                detail::from_angles(ang[4], ang[5]),
                                detail::from_angles(ang[6], ang[7])};
    out.s_value = s_best;
    out.classification = classify_chsh(s_best);
    return out;
}

}  // namespace spinpair
