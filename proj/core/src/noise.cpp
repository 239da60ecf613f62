#include "cobell/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cobell/rng.hpp"

namespace cobell {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phase(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

void validate(const PhaseProcess& p) {
    if (p.dwell_samples == 0)
        throw std::invalid_argument("dwell_samples must be >= 1");
    if (!(p.diffusion_rate >= 0.0) || !std::isfinite(p.diffusion_rate))
        throw std::invalid_argument("diffusion_rate must be finite and >= 0");
}

}  // namespace

PhaseProcess PhaseProcess::with_stream(std::uint64_t master, std::uint64_t tag,
                                       std::uint64_t index) const {
    PhaseProcess p = *this;
    p.seed = rng::derive_seed(master, tag, index);
    return p;
}

PhaseTrace sample_phase_trace(const PhaseProcess& process, std::size_t n) {
    validate(process);
    if (n == 0) throw std::invalid_argument("phase trace length must be >= 1");

    PhaseTrace trace;
    trace.process = process;
    trace.samples.resize(n);
    rng::Stream stream(process.seed);

    switch (process.kind) {
        case PhaseKind::PiecewiseUniform: {
            double value = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k % process.dwell_samples == 0) value = stream.uniform_angle();
                trace.samples[k] = value;
            }
            break;
        }
        case PhaseKind::WienerDiffusion: {
            const double step = std::sqrt(process.diffusion_rate);
            double value = stream.uniform_angle();
            trace.samples[0] = value;
            for (std::size_t k = 1; k < n; ++k) {
                value = wrap_phase(value + step * stream.normal());
                trace.samples[k] = value;
            }
            break;
        }
    }
    return trace;
}

double empirical_phase_uniformity(const PhaseTrace& trace, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("need at least 2 bins");
    const std::size_t n = trace.size();
    if (n < 10 * bins)
        throw std::invalid_argument("need at least 10 samples per bin");

    std::vector<std::size_t> counts(bins, 0);
    for (double phi : trace.samples) {
        const double w = wrap_phase(phi);
        auto b = static_cast<std::size_t>(w / two_pi * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }

    const double expected = static_cast<double>(n) / static_cast<double>(bins);
    double chi2 = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    return chi2;
}

}  // namespace cobell
