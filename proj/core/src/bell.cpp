#include "cobell/bell.hpp"

#include <cmath>
#include <stdexcept>

#include "cobell/parallel.hpp"
#include "cobell/rng.hpp"

namespace cobell {

double bell_F(double c_ab, double c_ac, double c_bc) {
    return std::abs(c_ab - c_ac) - 1.0 - c_bc;
}

BellScanResult violation_scan(const BellPreparation& prep, double a, double b,
                              std::span<const double> c_grid,
                              const ScanConfig& config) {
    if (c_grid.empty()) throw std::invalid_argument("empty c grid");

    const double cal = calibrate(
        prep, config.bench, config.n_samples,
        config.noise.with_stream(config.master_seed, rng::stream_tag::calibration, 0));

    BellScanResult result;
    result.a = a;
    result.b = b;

    const AnalyzerSetting sa(a), sb(b);
    result.c_ab = estimate_point(
        prep, sa, sb, rng::derive_seed(config.master_seed, rng::stream_tag::bell_ab, 0),
        cal, config);

    result.curve.resize(c_grid.size());
    parallel_for(c_grid.size(), config.threads, [&](std::size_t i) {
        const AnalyzerSetting sc(c_grid[i]);
        BellCurvePoint& pt = result.curve[i];
        pt.c = c_grid[i];
        pt.c_ac = estimate_point(
            prep, sa, sc,
            rng::derive_seed(config.master_seed, rng::stream_tag::bell_ac, i), cal,
            config);
        pt.c_bc = estimate_point(
            prep, sb, sc,
            rng::derive_seed(config.master_seed, rng::stream_tag::bell_bc, i), cal,
            config);
        pt.f_value = bell_F(result.c_ab.normalized_value, pt.c_ac.normalized_value,
                            pt.c_bc.normalized_value);
        const double e_ab = result.c_ab.normalized_error();
        const double e_ac = pt.c_ac.normalized_error();
        const double e_bc = pt.c_bc.normalized_error();
        pt.f_error = std::sqrt(e_ab * e_ab + e_ac * e_ac + e_bc * e_bc);
    });

    result.max_F = result.curve.front().f_value;
    result.argmax_c = result.curve.front().c;
    for (const BellCurvePoint& pt : result.curve) {
        if (pt.f_value > result.max_F) {
            result.max_F = pt.f_value;
            result.argmax_c = pt.c;
        }
    }
    return result;
}

}  // namespace cobell
