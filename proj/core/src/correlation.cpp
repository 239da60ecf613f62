#include "cobell/correlation.hpp"

#include <cmath>
#include <stdexcept>

#include "cobell/parallel.hpp"
#include "cobell/rng.hpp"

namespace cobell {

double CorrelationEstimate::normalized_error() const {
    if (!is_normalized()) throw std::logic_error("estimate not normalized");
    return std_error / calibration;
}

CorrelationEstimate CorrelationEstimate::normalized(double calibration_magnitude) const {
    if (!(calibration_magnitude > 0.0))
        throw std::invalid_argument("calibration must be > 0");
    CorrelationEstimate e = *this;
    e.calibration = calibration_magnitude;
    e.normalized_value = e.raw_mean / calibration_magnitude;
    return e;
}

std::vector<double> multiply_traces(const BeatTrace& t1, const BeatTrace& t2) {
    if (t1.samples.size() != t2.samples.size())
        throw std::invalid_argument("detector traces differ in length");
    std::vector<double> product(t1.samples.size());
    for (std::size_t k = 0; k < product.size(); ++k)
        product[k] = t1.samples[k] * t2.samples[k];
    return product;
}

CorrelationEstimate estimate_correlation(std::span<const double> product,
                                         std::size_t dwell_samples) {
    if (dwell_samples == 0) throw std::invalid_argument("dwell_samples must be >= 1");
    const std::size_t n = product.size();
    const std::size_t n_eff = n / dwell_samples;
    if (n_eff < 2)
        throw std::invalid_argument("need at least 2 effective samples");

    double mean = 0.0;
    for (double p : product) mean += p;
    mean /= static_cast<double>(n);

    double ssd = 0.0;
    for (double p : product) ssd += (p - mean) * (p - mean);
    const double variance = ssd / static_cast<double>(n - 1);

    CorrelationEstimate e;
    e.raw_mean = mean;
    e.std_error = std::sqrt(variance / static_cast<double>(n_eff));
    e.n_samples = n;
    return e;
}

double calibrate(const BellPreparation& prep, const BenchConfig& config,
                 std::size_t n_samples, const PhaseProcess& process) {
    if (n_samples < 2) throw std::invalid_argument("calibration needs >= 2 samples");
    const AnalyzerSetting zero(0.0);
    const PhaseTrace phases = sample_phase_trace(process, n_samples);
    const auto [t1, t2] = simulate_beat_traces(prep, zero, zero, phases, config);
    const auto product = multiply_traces(t1, t2);
    double mean = 0.0;
    for (double p : product) mean += p;
    mean /= static_cast<double>(n_samples);
    const double magnitude = std::abs(mean);
    if (!(magnitude > 0.0)) throw std::runtime_error("degenerate calibration run");
    return magnitude;
}

CorrelationEstimate estimate_point(const BellPreparation& prep,
                                   const AnalyzerSetting& theta1,
                                   const AnalyzerSetting& theta2,
                                   std::uint64_t stream_seed, double calibration,
                                   const ScanConfig& config) {
    PhaseProcess process = config.noise;
    process.seed = stream_seed;
    const PhaseTrace phases = sample_phase_trace(process, config.n_samples);
    const auto [t1, t2] = simulate_beat_traces(prep, theta1, theta2, phases, config.bench);
    const auto product = multiply_traces(t1, t2);
    return estimate_correlation(product, process.dwell_samples).normalized(calibration);
}

std::vector<ScanPoint> correlation_scan(const BellPreparation& prep,
                                        const AnalyzerSetting& theta1,
                                        std::span<const double> theta2_grid,
                                        const ScanConfig& config) {
    if (theta2_grid.empty()) throw std::invalid_argument("empty scan grid");

    const double cal = calibrate(
        prep, config.bench, config.n_samples,
        config.noise.with_stream(config.master_seed, rng::stream_tag::calibration, 0));

    std::vector<ScanPoint> table(theta2_grid.size());
    parallel_for(theta2_grid.size(), config.threads, [&](std::size_t i) {
        const AnalyzerSetting theta2(theta2_grid[i]);
        const std::uint64_t seed =
            rng::derive_seed(config.master_seed, rng::stream_tag::scan_point, i);
        table[i] = {theta2_grid[i],
                    estimate_point(prep, theta1, theta2, seed, cal, config)};
    });
    return table;
}

}  // namespace cobell
