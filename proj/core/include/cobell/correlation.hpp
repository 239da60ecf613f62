#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cobell/bench.hpp"
#include "cobell/noise.hpp"

namespace cobell {

/// Mean of a product trace with its statistical error. calibration = 0
/// means not yet normalized; normalized_value and normalized_error divide
/// the raw quantities by the stored calibration magnitude.
struct CorrelationEstimate {
    double raw_mean = 0.0;
    double std_error = 0.0;  // of raw_mean
    std::size_t n_samples = 0;
    double calibration = 0.0;
    double normalized_value = 0.0;

    bool is_normalized() const { return calibration > 0.0; }
    double normalized_error() const;
    CorrelationEstimate normalized(double calibration_magnitude) const;
};

/// Elementwise product of the two detector traces (the analog multiplier).
std::vector<double> multiply_traces(const BeatTrace& t1, const BeatTrace& t2);

/// Sample mean and standard error of a product trace. With a dwelled phase
/// process, consecutive samples repeat; dwell_samples shrinks the effective
/// sample count to n/dwell so the error is not understated. Requires at
/// least 2 effective samples.
CorrelationEstimate estimate_correlation(std::span<const double> product,
                                         std::size_t dwell_samples = 1);

/// |raw mean| of the product at θ1 = θ2 = 0 for the given preparation; the
/// normalization magnitude for scans (≈ K²/2).
double calibrate(const BellPreparation& prep, const BenchConfig& config,
                 std::size_t n_samples, const PhaseProcess& process);

struct ScanPoint {
    double theta2;  // radians
    CorrelationEstimate estimate;
};

struct ScanConfig {
    BenchConfig bench;
    PhaseProcess noise;  // seed ignored: points use (master_seed, tag, index) streams
    std::size_t n_samples = 100000;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;  // 0 = hardware count; result independent of it
};

/// Normalized correlation C(θ1, θ2) over a θ2 grid at fixed θ1. Each grid
/// point draws an independent phase stream derived from (master_seed,
/// index); a shared calibration stream fixes the normalization. The table
/// is bit-identical for identical seed, grid and config.
std::vector<ScanPoint> correlation_scan(const BellPreparation& prep,
                                        const AnalyzerSetting& theta1,
                                        std::span<const double> theta2_grid,
                                        const ScanConfig& config);

/// One normalized correlation estimate at (θ1, θ2) with an explicit phase
/// stream seed; building block shared by scans, Bell curves and tests.
CorrelationEstimate estimate_point(const BellPreparation& prep,
                                   const AnalyzerSetting& theta1,
                                   const AnalyzerSetting& theta2,
                                   std::uint64_t stream_seed, double calibration,
                                   const ScanConfig& config);

}  // namespace cobell
