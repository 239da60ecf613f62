#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "cobell/bell_state.hpp"
#include "cobell/jones.hpp"
#include "cobell/noise.hpp"

namespace cobell {

/// Detector arm of the two-beam bench.
enum class Arm : int { One = 1, Two = 2 };

/// How the constant (DC) intensity level is removed before output.
/// Analytic subtracts the exact level implied by the arm projections;
/// SampleMean subtracts the trace's own mean (integration-time realism).
enum class DcBlock { Analytic, SampleMean };

struct BenchConfig {
    double optical_frequency = 2.98e15;     // rad/s, bookkeeping
    double modulation_frequency = 6.91e8;   // rad/s, bookkeeping (baseband model)
    double signal_amplitude = 1.0;
    double noise_amplitude = 1.0;
    DcBlock dc_block = DcBlock::Analytic;
};

/// Wave-plate preparation that projects the classical analog of a Bell
/// state. Arm 1 always carries a QWP at +45°; arm 2 (which picks up the
/// beam-splitter π phase on the noise field) carries, per variant:
///   PsiMinus  {QWP(+45°)}            -> D2 = -K sin(2θ2+φ)
///   PsiPlus   {HWP(0°), QWP(-45°)}   -> D2 = +K sin(2θ2-φ)
///   PhiPlus   {HWP(0°), QWP(+45°)}   -> D2 = +K sin(2θ2+φ)
///   PhiMinus  {QWP(-45°)}            -> D2 = -K sin(2θ2-φ)
/// so each variant's correlation matches its quantum closed form.
struct BellPreparation {
    BellState variant = BellState::PsiMinus;

    JonesMatrix arm1_plate() const;
    std::vector<JonesMatrix> arm2_elements() const;  // application order
    JonesMatrix arm2_composite() const;
};

/// Beat-signal trace of one detector after square-law detection and DC
/// removal, normalized so the beat amplitude K = 1.
struct BeatTrace {
    std::vector<double> samples;
    double dt = 1.0;  // seconds per sample, bookkeeping
    BellState preparation = BellState::PsiMinus;
    double analyzer = 0.0;  // radians
    std::uint64_t seed = 0;
};

/// Constant per-(preparation, arm, analyzer) pieces of the detected field:
/// the analyzer amplitudes of the unit signal and noise fields, the exact
/// DC level and the output scale. One beat sample costs one complex phasor.
struct ArmAmplitudes {
    complexd signal;
    complexd noise;
    double dc;
    double scale;
};

ArmAmplitudes arm_amplitudes(const BellPreparation& prep, Arm arm,
                             const AnalyzerSetting& theta,
                             const BenchConfig& config);

/// Detected beat at noise phase φ: scale·(|signal + noise·e^{-iφ}|² - dc).
double beat_sample(const ArmAmplitudes& arm, double phi);

/// Full-field simulation of both detectors over a shared phase trace.
std::pair<BeatTrace, BeatTrace> simulate_beat_traces(const BellPreparation& prep,
                                                     const AnalyzerSetting& theta1,
                                                     const AnalyzerSetting& theta2,
                                                     const PhaseTrace& phases,
                                                     const BenchConfig& config);

/// Closed-form beat (K = 1): arm 1 is sin(2θ+φ) for every preparation;
/// arm 2 follows the sign table on BellPreparation.
double analytic_beat(BellState prep, const AnalyzerSetting& theta, double phi,
                     Arm arm);

/// Least-squares weights of the sin(φ) and cos(φ) regressors in a beat
/// trace; arm-1 traces give (cos2θ, sin2θ)·K. Throws on length mismatch or
/// degenerate regressors.
struct BeatDecomposition {
    double in_phase;    // sin(φ) weight
    double quadrature;  // cos(φ) weight
};

BeatDecomposition decompose_beat(const BeatTrace& trace, const PhaseTrace& phases);

}  // namespace cobell
