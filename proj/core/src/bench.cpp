#include "cobell/bench.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cobell {

namespace {

constexpr double pi = std::numbers::pi;

void validate(const BenchConfig& config) {
    if (!(config.signal_amplitude > 0.0) || !std::isfinite(config.signal_amplitude))
        throw std::invalid_argument("signal_amplitude must be finite and > 0");
    if (!(config.noise_amplitude > 0.0) || !std::isfinite(config.noise_amplitude))
        throw std::invalid_argument("noise_amplitude must be finite and > 0");
}

}  // namespace

JonesMatrix BellPreparation::arm1_plate() const { return quarter_wave_plate(pi / 4.0); }

std::vector<JonesMatrix> BellPreparation::arm2_elements() const {
    switch (variant) {
        case BellState::PsiMinus:
            return {quarter_wave_plate(pi / 4.0)};
        case BellState::PsiPlus:
            return {half_wave_plate(0.0), quarter_wave_plate(-pi / 4.0)};
        case BellState::PhiPlus:
            return {half_wave_plate(0.0), quarter_wave_plate(pi / 4.0)};
        case BellState::PhiMinus:
            return {quarter_wave_plate(-pi / 4.0)};
    }
    throw std::invalid_argument("unknown preparation");
}

JonesMatrix BellPreparation::arm2_composite() const {
    JonesMatrix u = JonesMatrix::identity();
    for (const JonesMatrix& e : arm2_elements()) u = e * u;
    return u;
}

ArmAmplitudes arm_amplitudes(const BellPreparation& prep, Arm arm,
                             const AnalyzerSetting& theta,
                             const BenchConfig& config) {
    validate(config);

    // Vertically polarized signal on port 1, horizontally polarized noise on
    // port 2; the per-sample phasor e^{-iφ} multiplies the noise downstream.
    const JonesVector signal_in(0.0, config.signal_amplitude);
    const JonesVector noise_in(config.noise_amplitude, 0.0);
    const JonesVector zero;

    const auto [sig1, sig2] = beam_splitter(signal_in, zero);
    const auto [noi1, noi2] = beam_splitter(zero, noise_in);

    const JonesMatrix plates =
        arm == Arm::One ? prep.arm1_plate() : prep.arm2_composite();
    const JonesVector sig = plates * (arm == Arm::One ? sig1 : sig2);
    const JonesVector noi = plates * (arm == Arm::One ? noi1 : noi2);

    ArmAmplitudes out;
    out.signal = analyzer_amplitude(sig, theta);
    out.noise = analyzer_amplitude(noi, theta);
    out.dc = std::norm(out.signal) + std::norm(out.noise);
    out.scale = 2.0 / (config.signal_amplitude * config.noise_amplitude);
    return out;
}

double beat_sample(const ArmAmplitudes& arm, double phi) {
    const complexd field = arm.signal + arm.noise * std::polar(1.0, -phi);
    return (std::norm(field) - arm.dc) * arm.scale;
}

std::pair<BeatTrace, BeatTrace> simulate_beat_traces(const BellPreparation& prep,
                                                     const AnalyzerSetting& theta1,
                                                     const AnalyzerSetting& theta2,
                                                     const PhaseTrace& phases,
                                                     const BenchConfig& config) {
    if (phases.size() == 0) throw std::invalid_argument("empty phase trace");

    const ArmAmplitudes a1 = arm_amplitudes(prep, Arm::One, theta1, config);
    const ArmAmplitudes a2 = arm_amplitudes(prep, Arm::Two, theta2, config);

    BeatTrace t1, t2;
    t1.preparation = t2.preparation = prep.variant;
    t1.seed = t2.seed = phases.process.seed;
    t1.analyzer = theta1.radians();
    t2.analyzer = theta2.radians();
    t1.samples.resize(phases.size());
    t2.samples.resize(phases.size());

    for (std::size_t k = 0; k < phases.size(); ++k) {
        t1.samples[k] = beat_sample(a1, phases.samples[k]);
        t2.samples[k] = beat_sample(a2, phases.samples[k]);
    }

    if (config.dc_block == DcBlock::SampleMean) {
        for (BeatTrace* t : {&t1, &t2}) {
            double mean = 0.0;
            for (double s : t->samples) mean += s;
            mean /= static_cast<double>(t->samples.size());
            for (double& s : t->samples) s -= mean;
        }
    }
    return {std::move(t1), std::move(t2)};
}

double analytic_beat(BellState prep, const AnalyzerSetting& theta, double phi,
                     Arm arm) {
    const double two_theta = 2.0 * theta.radians();
    if (arm == Arm::One) return std::sin(two_theta + phi);
    switch (prep) {
        case BellState::PsiMinus: return -std::sin(two_theta + phi);
        case BellState::PsiPlus: return std::sin(two_theta - phi);
        case BellState::PhiPlus: return std::sin(two_theta + phi);
        case BellState::PhiMinus: return -std::sin(two_theta - phi);
    }
    throw std::invalid_argument("unknown preparation");
}

BeatDecomposition decompose_beat(const BeatTrace& trace, const PhaseTrace& phases) {
    const std::size_t n = trace.samples.size();
    if (n != phases.size())
        throw std::invalid_argument("trace and phase lengths differ");
    if (n < 2) throw std::invalid_argument("need at least 2 samples");

    // Normal equations for y ≈ w_s·sin(φ) + w_c·cos(φ).
    double ss = 0.0, cc = 0.0, sc = 0.0, ys = 0.0, yc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double s = std::sin(phases.samples[k]);
        const double c = std::cos(phases.samples[k]);
        const double y = trace.samples[k];
        ss += s * s;
        cc += c * c;
        sc += s * c;
        ys += y * s;
        yc += y * c;
    }
    const double det = ss * cc - sc * sc;
    if (!(det > 1e-9 * static_cast<double>(n) * static_cast<double>(n)))
        throw std::invalid_argument("phase trace spans too little of [0,2pi) to regress");
    return {(ys * cc - yc * sc) / det, (yc * ss - ys * sc) / det};
}

}  // namespace cobell
