#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cobell/correlation.hpp"

namespace cobell {

/// Bell comparison function F(a,b,c) = |C(a,b) - C(a,c)| - 1 - C(b,c).
/// Any local-hidden-variable correlation keeps F <= 0; the singlet analog
/// reaches +1/2 at (a,b,c) = (0°, 30°, 60°).
double bell_F(double c_ab, double c_ac, double c_bc);

struct BellCurvePoint {
    double c;  // radians
    double f_value;
    double f_error;  // statistical, three estimate errors in quadrature
    CorrelationEstimate c_ac;
    CorrelationEstimate c_bc;
};

struct BellScanResult {
    double a = 0.0;
    double b = 0.0;
    CorrelationEstimate c_ab;  // shared by every point; its error is common-mode
    std::vector<BellCurvePoint> curve;
    double max_F = 0.0;
    double argmax_c = 0.0;  // radians
};

/// F over a grid of analyzer angles c at fixed a, b. C(a,b) is estimated
/// once; each c draws independent streams for C(a,c) and C(b,c). All three
/// estimates share one calibration run.
BellScanResult violation_scan(const BellPreparation& prep, double a, double b,
                              std::span<const double> c_grid,
                              const ScanConfig& config);

}  // namespace cobell
