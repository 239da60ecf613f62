#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cobell {

/// Stochastic model for the relative phase φ between the signal and noise
/// fields. PiecewiseUniform redraws φ ~ U[0,2π) every dwell_samples samples
/// (dwell 1 = i.i.d. per sample); WienerDiffusion random-walks it with
/// per-sample Gaussian increments of variance diffusion_rate, wrapped to
/// [0, 2π).
enum class PhaseKind { PiecewiseUniform, WienerDiffusion };

struct PhaseProcess {
    PhaseKind kind = PhaseKind::PiecewiseUniform;
    std::uint64_t seed = 0;
    std::size_t dwell_samples = 1;
    double diffusion_rate = 0.0;  // rad^2 per sample; Wiener only

    /// Copy with the seed replaced by the (master, tag, index) stream seed.
    PhaseProcess with_stream(std::uint64_t master, std::uint64_t tag,
                             std::uint64_t index) const;
};

struct PhaseTrace {
    std::vector<double> samples;  // each in [0, 2π)
    PhaseProcess process;

    std::size_t size() const { return samples.size(); }
};

/// Draw n phase samples. Identical (kind, seed, params, n) give a
/// bit-identical trace. Throws std::invalid_argument on n = 0, dwell = 0 or
/// negative/non-finite diffusion_rate.
PhaseTrace sample_phase_trace(const PhaseProcess& process, std::size_t n);

/// Pearson chi-square statistic of the binned trace against the uniform
/// law on [0, 2π), with `bins` equal cells (dof = bins - 1). Requires
/// n >= 10·bins so expected counts stay in the chi-square regime.
double empirical_phase_uniformity(const PhaseTrace& trace, std::size_t bins);

}  // namespace cobell
