#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>

#include "spinpair/correlations.hpp"
#include "spinpair/ensembles.hpp"
#include "spinpair/format.hpp"
#include "spinpair/linalg.hpp"
#include "spinpair/rng.hpp"
#include "spinpair/states.hpp"

namespace spinpair {

// Coincidence source. Entangled and mismatched pairs carry their correlation
// tensor (computed once at construction); disentangled pairs carry the hidden
// axis distribution.
class SourceModel {
public:
    enum class Kind { Entangled, Disentangled, Mismatched };

    static SourceModel entangled() {
        return SourceModel(Kind::Entangled, correlation_tensor(to_density(singlet())),
                           AxisDistribution::sphere());
    }

    static SourceModel disentangled(const AxisDistribution& dist) {
        return SourceModel(Kind::Disentangled, CorrelationTensor{}, dist);
    }

    static SourceModel mismatched(const QuantizationAxis& axis, double delta) {
        return SourceModel(
            Kind::Mismatched,
            correlation_tensor(to_density(make_mismatched_singlet(axis, delta))),
            AxisDistribution::sphere());
    }

    Kind kind() const { return kind_; }
    const CorrelationTensor& tensor() const { return tensor_; }
    const AxisDistribution& dist() const { return dist_; }

private:
    SourceModel(Kind kind, CorrelationTensor tensor, AxisDistribution dist)
        : kind_(kind), tensor_(tensor), dist_(std::move(dist)) {}

    Kind kind_;
    CorrelationTensor tensor_;
    AxisDistribution dist_;
};

// One simulated coincidence: both settings and both +-1 outcomes.
struct EventRecord {
    Vector3 a, b;
    int r = +1, s = +1;
};

struct CorrelationEstimate {
    double e_hat = 0.0;
    std::int64_t n = 0;
    double std_error = 0.0;
};

// Outcome at one station of the local hidden-variable model. Takes only the
// station's own setting and the shared hidden axis: +1 with probability
// (1 + setting . hidden) / 2. Station 2 passes the negated axis, which is the
// only choice that reproduces the dephased-singlet correlation -(a.P)(P.b).
inline int local_outcome(const Vector3& setting, const Vector3& hidden_axis, double u) {
    return u < 0.5 * (1.0 + setting.dot(hidden_axis)) ? +1 : -1;
}

namespace detail {

// Quantum joint law P(r, s) = (1 + rs a.t.b + r a.s1 + s b.s2) / 4.
struct JointLaw {
    double p_pp, p_pm, p_mp;  // cumulative thresholds for (+,+), (+,-), (-,+)

    JointLaw(const CorrelationTensor& tensor, const Vector3& a, const Vector3& b) {
        const double c = a.dot(tensor.t * b);
        const double m1 = a.dot(tensor.s1);
        const double m2 = b.dot(tensor.s2);
        double p[4];
        int k = 0;
        for (int r : {+1, -1}) {
            for (int s : {+1, -1}) {
                const double prob = 0.25 * (1.0 + r * s * c + r * m1 + s * m2);
                if (prob < -kTol || prob > 1.0 + kTol)
                    throw std::logic_error("joint outcome probability out of range");
                p[k++] = std::clamp(prob, 0.0, 1.0);
            }
        }
        p_pp = p[0];
        p_pm = p_pp + p[1];
        p_mp = p_pm + p[2];
    }

    void sample(double u, int& r, int& s) const {
        if (u < p_pp) { r = +1; s = +1; }
        else if (u < p_pm) { r = +1; s = -1; }
        else if (u < p_mp) { r = -1; s = +1; }
        else { r = -1; s = -1; }
    }
};

inline void sample_outcomes(const SourceModel& model, const Vector3& a, const Vector3& b,
                            Rng& rng, int& r, int& s) {
    if (model.kind() == SourceModel::Kind::Disentangled) {
        const Vector3 p = model.dist().sample(rng);
        r = local_outcome(a, p, rng.uniform());
        s = local_outcome(b, -p, rng.uniform());
    } else {
        JointLaw(model.tensor(), a, b).sample(rng.uniform(), r, s);
    }
}

}  // namespace detail

inline EventRecord sample_event(const SourceModel& model, const DetectorSetting& a,
                                const DetectorSetting& b, Rng& rng) {
    EventRecord ev{a.n, b.n, +1, +1};
    detail::sample_outcomes(model, a.n, b.n, rng, ev.r, ev.s);
    return ev;
}

// Count-based estimate of E(a, b): mean(r s) - mean(r) mean(s). Event i draws
// from substream (seed, i), so the estimate is partition-independent.
inline CorrelationEstimate estimate_correlation(const SourceModel& model,
                                                const DetectorSetting& a,
                                                const DetectorSetting& b,
                                                std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("estimate_correlation: n must be >= 1");
    std::int64_t sum_rs = 0, sum_r = 0, sum_s = 0;
    if (model.kind() == SourceModel::Kind::Disentangled) {
        for (std::int64_t i = 0; i < n; ++i) {
            Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
            const Vector3 p = model.dist().sample(rng);
            const int r = local_outcome(a.n, p, rng.uniform());
            const int s = local_outcome(b.n, -p, rng.uniform());
            sum_rs += r * s;
            sum_r += r;
            sum_s += s;
        }
    } else {
        const detail::JointLaw law(model.tensor(), a.n, b.n);
        for (std::int64_t i = 0; i < n; ++i) {
            Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
            int r, s;
            law.sample(rng.uniform(), r, s);
            sum_rs += r * s;
            sum_r += r;
            sum_s += s;
        }
    }
    const double dn = static_cast<double>(n);
    CorrelationEstimate out;
    out.n = n;
    out.e_hat = static_cast<double>(sum_rs) / dn -
                (static_cast<double>(sum_r) / dn) * (static_cast<double>(sum_s) / dn);
    out.std_error = std::sqrt(std::max(0.0, 1.0 - out.e_hat * out.e_hat) / dn);
    return out;
}

// One record per line: ax,ay,az,bx,by,bz,r,s with a header line.
inline void write_event_log(std::ostream& os, std::span<const EventRecord> events) {
    os << "ax,ay,az,bx,by,bz,r,s\n";
    for (const EventRecord& ev : events) {
        os << fmt17(ev.a.x()) << ',' << fmt17(ev.a.y()) << ',' << fmt17(ev.a.z()) << ','
           << fmt17(ev.b.x()) << ',' << fmt17(ev.b.y()) << ',' << fmt17(ev.b.z()) << ','
           << ev.r << ',' << ev.s << '\n';
    }
}

}  // namespace spinpair
