#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cobell/noise.hpp"
#include "cobell/rng.hpp"

using namespace cobell;
using namespace cobell::rng;
using std::numbers::pi;

namespace {

PhaseProcess piecewise(std::uint64_t seed, std::size_t dwell = 1) {
    PhaseProcess p;
    p.kind = PhaseKind::PiecewiseUniform;
    p.seed = seed;
    p.dwell_samples = dwell;
    return p;
}

PhaseProcess wiener(std::uint64_t seed, double rate) {
    PhaseProcess p;
    p.kind = PhaseKind::WienerDiffusion;
    p.seed = seed;
    p.diffusion_rate = rate;
    return p;
}

}  // namespace

TEST_CASE("seed derivation separates streams and is deterministic") {
    CHECK(derive_seed(1, 0, 0) == derive_seed(1, 0, 0));
    CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
    CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
    CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));

    Stream a(derive_seed(42, stream_tag::scan_point, 3));
    Stream b(derive_seed(42, stream_tag::scan_point, 3));
    for (int i = 0; i < 100; ++i) CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("uniform01 stays in [0,1) and uniform_angle in [0,2pi)") {
    Stream s(derive_seed(7, 0, 0));
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double a = s.uniform_angle();
        CHECK(a >= 0.0);
        CHECK(a < 2 * pi);
    }
}

TEST_CASE("normal draws have roughly standard moments") {
    Stream s(derive_seed(11, 0, 0));
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = s.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("piecewise phase redraws every dwell block") {
    const PhaseTrace trace = sample_phase_trace(piecewise(5, 4), 64);
    REQUIRE(trace.size() == 64);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(trace.samples[i] >= 0.0);
        CHECK(trace.samples[i] < 2 * pi);
        // Within a dwell block the phase is constant.
        CHECK(trace.samples[i] == trace.samples[(i / 4) * 4]);
    }
    // Adjacent blocks almost surely differ.
    int changes = 0;
    for (std::size_t b = 1; b < 16; ++b)
        if (trace.samples[b * 4] != trace.samples[(b - 1) * 4]) ++changes;
    CHECK(changes >= 14);
}

TEST_CASE("piecewise phase with dwell 1 redraws every sample") {
    const PhaseTrace trace = sample_phase_trace(piecewise(9), 1000);
    int repeats = 0;
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace.samples[i] == trace.samples[i - 1]) ++repeats;
    CHECK(repeats == 0);
}

TEST_CASE("wiener phase stays wrapped and diffuses") {
    const PhaseTrace trace = sample_phase_trace(wiener(13, 0.01), 5000);
    for (const double phi : trace.samples) {
        CHECK(phi >= 0.0);
        CHECK(phi < 2 * pi);
    }
    // Increments (mod 2pi, mapped to [-pi,pi)) should have variance ~ rate^... 0.01^2? rate is the std.
    double sum2 = 0.0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        double d = trace.samples[i] - trace.samples[i - 1];
        while (d >= pi) d -= 2 * pi;
        while (d < -pi) d += 2 * pi;
        sum2 += d * d;
    }
    const double var = sum2 / static_cast<double>(trace.size() - 1);
    CHECK(var == doctest::Approx(0.01 * 0.01).epsilon(0.1));
}

TEST_CASE("phase trace sampling validates its inputs") {
    CHECK_THROWS_AS(sample_phase_trace(piecewise(1), 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_phase_trace(piecewise(1, 0), 8), std::invalid_argument);
    CHECK_THROWS_AS(sample_phase_trace(wiener(1, -0.5), 8), std::invalid_argument);
}

TEST_CASE("chi-square statistic flags structure and passes uniform input") {
    // A ramp hitting every bin equally often gives a statistic of zero.
    std::vector<double> ramp(8000);
    for (std::size_t i = 0; i < ramp.size(); ++i)
        ramp[i] = (static_cast<double>(i % 80) + 0.5) / 80.0 * 2 * pi;
    PhaseTrace ramp_trace;
    ramp_trace.samples = ramp;
    CHECK(empirical_phase_uniformity(ramp_trace, 8) < 1e-9);

    // All mass in one of 8 bins: statistic is exactly 7n.
    PhaseTrace constant;
    constant.samples.assign(1000, 0.5);
    CHECK(empirical_phase_uniformity(constant, 8) == doctest::Approx(7000.0));
    CHECK(empirical_phase_uniformity(constant, 8) > 24.3219);  // chi2_7 at 99.9%

    // Freshly sampled piecewise phases look uniform (chi2_15 99% = 30.5779).
    const PhaseTrace trace = sample_phase_trace(piecewise(21), 100000);
    CHECK(empirical_phase_uniformity(trace, 16) < 30.5779);
}

TEST_CASE("wiener phases decorrelate toward uniformity over long runs") {
    const PhaseTrace trace = sample_phase_trace(wiener(17, 0.8), 200000);
    // Generous bound: long diffusive runs fill the circle.
    CHECK(empirical_phase_uniformity(trace, 8) < 200.0);
}

TEST_CASE("uniformity statistic validates its inputs") {
    PhaseTrace tiny;
    tiny.samples.assign(5, 0.1);
    CHECK_THROWS_AS(empirical_phase_uniformity(tiny, 8), std::invalid_argument);
    PhaseTrace enough;
    enough.samples.assign(100, 0.1);
    CHECK_THROWS_AS(empirical_phase_uniformity(enough, 1), std::invalid_argument);
}
