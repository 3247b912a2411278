// Command-line front end: reproducible correlation experiments with CSV output.
//
// Subcommands: correlate, sweep, chsh, events, ensemble. Angles are given in
// degrees on the command line and converted to radians once on entry.
// Exit codes: 0 success, 2 argument errors, 1 internal consistency failures.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "spinpair/bell.hpp"
#include "spinpair/correlations.hpp"
#include "spinpair/ensembles.hpp"
#include "spinpair/events.hpp"
#include "spinpair/format.hpp"
#include "spinpair/states.hpp"

namespace {

using namespace spinpair;

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct AnglePair {
    double theta_deg = 0.0;
    double phi_deg = 0.0;

    DetectorSetting setting() const {
        return DetectorSetting::from_spherical(theta_deg * kDegToRad, phi_deg * kDegToRad);
    }
    QuantizationAxis axis() const {
        return QuantizationAxis{theta_deg * kDegToRad, phi_deg * kDegToRad};
    }
};

// Accepts "theta,phi" in degrees.
void add_angle_option(CLI::App* cmd, const std::string& name, AnglePair& out,
                      const std::string& desc, bool required) {
    auto* opt = cmd->add_option_function<std::vector<double>>(
        name,
        [&out](const std::vector<double>& v) {
            out.theta_deg = v[0];
            out.phi_deg = v[1];
        },
        desc + " as THETA_DEG,PHI_DEG");
    opt->delimiter(',')->expected(2);
    if (required) opt->required();
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("--out", "cannot open output file: " + path);
    return file;
}

AxisDistribution make_distribution(const std::string& kind, const AnglePair& dir) {
    if (kind == "sphere") return AxisDistribution::sphere();
    if (kind == "plane") return AxisDistribution::plane(dir.axis().unit());
    if (kind == "fixed") return AxisDistribution::fixed(dir.axis().unit());
    throw CLI::ValidationError("--dist", "unknown distribution: " + kind);
}

int run(int argc, char** argv) {
    CLI::App app{
        "Two-spin correlation experiments: entangled, phase-mismatched and "
        "disentangled pair sources.\nAll angles are degrees; output is CSV with "
        "a header row and 17-significant-digit floats."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    std::uint64_t seed = 12345;
    app.add_option("--out", out_path, "Write CSV to this file instead of stdout");
    app.add_option("--seed", seed, "Seed for all Monte Carlo subcommands")
        ->capture_default_str();

    // correlate: E(a,b) and its classical/quantum decomposition
    auto* correlate_cmd = app.add_subcommand(
        "correlate", "Correlation E(a,b) and its classical/quantum split");
    std::string correlate_model = "entangled";
    AnglePair ca, cb, caxis;
    double cdelta_deg = 0.0;
    correlate_cmd->add_option("--model", correlate_model, "entangled | mismatched")
        ->check(CLI::IsMember({"entangled", "mismatched"}))
        ->capture_default_str();
    add_angle_option(correlate_cmd, "--a", ca, "detector a", true);
    add_angle_option(correlate_cmd, "--b", cb, "detector b", true);
    add_angle_option(correlate_cmd, "--axis", caxis, "quantization axis", false);
    correlate_cmd->add_option("--delta", cdelta_deg, "phase mismatch (degrees)")
        ->capture_default_str();

    // sweep: E as a function of detector separation
    auto* sweep_cmd = app.add_subcommand("sweep", "E(theta_ab) curve for one model");
    std::string sweep_model = "entangled";
    double sweep_step_deg = 1.0, sweep_max_deg = 180.0, sweep_delta_deg = 0.0;
    sweep_cmd
        ->add_option("--model", sweep_model,
                     "entangled | disentangled-sphere | disentangled-plane | mismatched")
        ->check(CLI::IsMember(
            {"entangled", "disentangled-sphere", "disentangled-plane", "mismatched"}))
        ->capture_default_str();
    sweep_cmd->add_option("--step", sweep_step_deg, "grid step (degrees)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--max", sweep_max_deg, "last separation (degrees)")
        ->capture_default_str();
    sweep_cmd->add_option("--delta", sweep_delta_deg, "phase mismatch (degrees)")
        ->capture_default_str();

    // chsh: explicit tetrad or deterministic maximizer
    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value and Bell classification");
    std::string chsh_model = "entangled";
    AnglePair chsh_axis;
    double chsh_delta_deg = 0.0;
    std::vector<double> tetrad;
    chsh_cmd
        ->add_option("--model", chsh_model,
                     "entangled | disentangled-sphere | disentangled-plane | "
                     "disentangled-fixed | mismatched")
        ->check(CLI::IsMember({"entangled", "disentangled-sphere", "disentangled-plane",
                               "disentangled-fixed", "mismatched"}))
        ->capture_default_str();
    add_angle_option(chsh_cmd, "--axis", chsh_axis, "axis for disentangled-fixed/mismatched",
                     false);
    chsh_cmd->add_option("--delta", chsh_delta_deg, "phase mismatch (degrees)")
        ->capture_default_str();
    chsh_cmd
        ->add_option("--tetrad", tetrad,
                     "explicit settings: 4 xy-plane angles A,AP,B,BP or 8 values "
                     "theta,phi per setting (degrees); omit to run the maximizer")
        ->delimiter(',');

    // events: coincidence sampling and the count-based estimator
    auto* events_cmd = app.add_subcommand("events", "Sample coincidence events, estimate E");
    std::string events_model = "entangled", events_dist = "sphere", log_path;
    AnglePair ea, eb, events_dir;
    double events_delta_deg = 0.0;
    std::int64_t events_n = 0;
    events_cmd->add_option("--model", events_model, "entangled | disentangled | mismatched")
        ->check(CLI::IsMember({"entangled", "disentangled", "mismatched"}))
        ->capture_default_str();
    add_angle_option(events_cmd, "--a", ea, "detector a", true);
    add_angle_option(events_cmd, "--b", eb, "detector b", true);
    events_cmd->add_option("--n", events_n, "number of events")
        ->required()
        ->check(CLI::PositiveNumber);
    events_cmd->add_option("--dist", events_dist, "sphere | plane | fixed (disentangled)")
        ->capture_default_str();
    add_angle_option(events_cmd, "--axis", events_dir,
                     "plane normal / fixed axis / mismatch axis", false);
    events_cmd->add_option("--delta", events_delta_deg, "phase mismatch (degrees)")
        ->capture_default_str();
    events_cmd->add_option("--log", log_path, "write one record per event to this file");

    // ensemble: averaged disentangled correlation tensor
    auto* ensemble_cmd =
        app.add_subcommand("ensemble", "Axis-averaged disentangled correlation tensor");
    std::string ensemble_dist = "sphere";
    AnglePair ensemble_dir;
    std::int64_t ensemble_n = 0;
    bool analytic = false;
    ensemble_cmd->add_option("--dist", ensemble_dist, "sphere | plane | fixed")
        ->capture_default_str();
    add_angle_option(ensemble_cmd, "--axis", ensemble_dir, "plane normal / fixed axis", false);
    ensemble_cmd->add_option("--n", ensemble_n, "number of Monte Carlo samples")
        ->check(CLI::PositiveNumber);
    ensemble_cmd->add_flag("--analytic", analytic, "use the closed-form average");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::ofstream file;
    std::ostream& os = open_output(out_path, file);

    if (*correlate_cmd) {
        const double delta = cdelta_deg * kDegToRad;
        const QuantizationAxis axis = caxis.axis();
        const double used_delta = (correlate_model == "mismatched") ? delta : 0.0;
        const DetectorSetting a = ca.setting(), b = cb.setting();
        // closed-form E; equals correlate() on the state tensor within 1e-12
        const CorrelationDecomposition d = decompose(a, b, axis, used_delta);
        os << "E,classical,quantum\n"
           << fmt17(d.total) << ',' << fmt17(d.classical) << ',' << fmt17(d.quantum) << '\n';
        return 0;
    }

    if (*sweep_cmd) {
        double k = 1.0;
        if (sweep_model == "disentangled-sphere") k = 1.0 / 3.0;
        if (sweep_model == "disentangled-plane") k = 0.5;
        const double delta = sweep_delta_deg * kDegToRad;
        os << "theta_ab_deg,E\n";
        for (double deg = 0.0; deg <= sweep_max_deg + 1e-9; deg += sweep_step_deg) {
            // mismatched model: detectors separated by theta_ab in the plane
            // transverse to the mismatch axis, E = -cos(theta_ab + delta);
            // others: -k cos(theta_ab)
            const double rad = deg * kDegToRad;
            const double e = (sweep_model == "mismatched") ? -std::cos(rad + delta)
                                                           : -k * std::cos(rad);
            os << fmt17(deg) << ',' << fmt17(e) << '\n';
        }
        return 0;
    }

    if (*chsh_cmd) {
        Correlator correlator;
        if (chsh_model == "entangled") {
            correlator = scaled_cosine_correlator(1.0);
        } else if (chsh_model == "disentangled-sphere") {
            correlator = scaled_cosine_correlator(1.0 / 3.0);
        } else if (chsh_model == "disentangled-plane") {
            const Matrix3 mean = average_analytic(AxisDistribution::plane(Vector3::UnitZ()));
            correlator = [mean](const Vector3& a, const Vector3& b) {
                return -a.dot(mean * b);
            };
        } else if (chsh_model == "disentangled-fixed") {
            const Vector3 p = chsh_axis.axis().unit();
            correlator = [p](const Vector3& a, const Vector3& b) {
                return -a.dot(p) * p.dot(b);
            };
        } else {
            const CorrelationTensor ct = correlation_tensor(to_density(
                make_mismatched_singlet(chsh_axis.axis(), chsh_delta_deg * kDegToRad)));
            correlator = tensor_correlator(ct);
        }

        ChshResult result;
        if (tetrad.empty()) {
            result = maximize_chsh(correlator);
        } else if (tetrad.size() == 4) {
            const auto in_xy = [](double deg) {
                const double rad = deg * kDegToRad;
                return Vector3(std::cos(rad), std::sin(rad), 0.0);
            };
            result = chsh(correlator, ChshSettings{in_xy(tetrad[0]), in_xy(tetrad[1]),
                                                   in_xy(tetrad[2]), in_xy(tetrad[3])});
        } else if (tetrad.size() == 8) {
            const auto sph = [](double t, double p) {
                return AnglePair{t, p}.setting().n;
            };
            result = chsh(correlator,
                          ChshSettings{sph(tetrad[0], tetrad[1]), sph(tetrad[2], tetrad[3]),
                                       sph(tetrad[4], tetrad[5]), sph(tetrad[6], tetrad[7])});
        } else {
            throw CLI::ValidationError("--tetrad", "expected 4 or 8 comma-separated angles");
        }

        os << "ax,ay,az,apx,apy,apz,bx,by,bz,bpx,bpy,bpz,S,classification\n";
        for (const Vector3& v : {result.settings.a, result.settings.a_prime,
                                 result.settings.b, result.settings.b_prime})
            os << fmt17(v.x()) << ',' << fmt17(v.y()) << ',' << fmt17(v.z()) << ',';
        os << fmt17(result.s_value) << ',' << to_string(result.classification) << '\n';
        return 0;
    }

    if (*events_cmd) {
        std::optional<SourceModel> model;
        if (events_model == "entangled")
            model = SourceModel::entangled();
        else if (events_model == "disentangled")
            model = SourceModel::disentangled(make_distribution(events_dist, events_dir));
        else
            model = SourceModel::mismatched(events_dir.axis(), events_delta_deg * kDegToRad);

        const DetectorSetting a = ea.setting(), b = eb.setting();
        const CorrelationEstimate est = estimate_correlation(*model, a, b, events_n, seed);
        os << "e_hat,n,std_error,seed\n"
           << fmt17(est.e_hat) << ',' << est.n << ',' << fmt17(est.std_error) << ',' << seed
           << '\n';

        if (!log_path.empty()) {
            std::ofstream log(log_path);
            if (!log) throw CLI::ValidationError("--log", "cannot open log file: " + log_path);
            std::vector<EventRecord> events;
            events.reserve(static_cast<std::size_t>(events_n));
            for (std::int64_t i = 0; i < events_n; ++i) {
                Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
                events.push_back(sample_event(*model, a, b, rng));
            }
            write_event_log(log, events);
        }
        return 0;
    }

    if (*ensemble_cmd) {
        const AxisDistribution dist = make_distribution(ensemble_dist, ensemble_dir);
        os << "t00,t01,t02,t10,t11,t12,t20,t21,t22,n,seed\n";
        Matrix3 tensor;
        std::int64_t n_out = 0;
        if (analytic) {
            tensor = -average_analytic(dist);
        } else {
            if (ensemble_n < 1)
                throw CLI::ValidationError("--n", "required unless --analytic is given");
            const EnsembleAverage avg = average_monte_carlo(dist, ensemble_n, seed);
            tensor = avg.tensor;
            n_out = avg.n_samples;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) os << fmt17(tensor(i, j)) << ',';
        os << n_out << ',' << seed << '\n';
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
