#include "cobell/jones.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cobell {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_half_turn(double a) {
    double r = std::fmod(a, pi);
    if (r < 0.0) r += pi;
    return r;
}

}  // namespace

double JonesMatrix::unitarity_defect() const {
    const JonesMatrix p = adjoint() * (*this);
    const JonesMatrix i = identity();
    double worst = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            worst = std::max(worst, std::abs(p.m[r][c] - i.m[r][c]));
    return worst;
}

AnalyzerSetting::AnalyzerSetting(double radians) {
    if (!std::isfinite(radians))
        throw std::invalid_argument("analyzer angle must be finite");
    angle_ = wrap_half_turn(radians);
}

AnalyzerSetting AnalyzerSetting::from_degrees(double degrees) {
    return AnalyzerSetting(degrees * pi / 180.0);
}

double AnalyzerSetting::degrees() const { return angle_ * 180.0 / pi; }

JonesMatrix quarter_wave_plate(double fast_axis) {
    if (!std::isfinite(fast_axis))
        throw std::invalid_argument("wave-plate axis must be finite");
    const double c = std::cos(fast_axis);
    const double s = std::sin(fast_axis);
    // R(θ)·diag(e^{-iπ/4}, e^{+iπ/4})·R(-θ): retards the slow axis by a
    // quarter wave; the e^{-iπ/4} split keeps the overall phase at zero for
    // the ±45° settings used by the bench.
    const complexd ef = std::polar(1.0, -pi / 4.0);
    const complexd es = std::polar(1.0, pi / 4.0);
    return {ef * c * c + es * s * s, (ef - es) * s * c,
            (ef - es) * s * c, ef * s * s + es * c * c};
}

JonesMatrix half_wave_plate(double fast_axis) {
    if (!std::isfinite(fast_axis))
        throw std::invalid_argument("wave-plate axis must be finite");
    const double c2 = std::cos(2.0 * fast_axis);
    const double s2 = std::sin(2.0 * fast_axis);
    return {complexd(c2), complexd(s2), complexd(s2), complexd(-c2)};
}

std::pair<JonesVector, JonesVector> beam_splitter(const JonesVector& in1,
                                                  const JonesVector& in2) {
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    return {(in1 + in2) * complexd(inv_sqrt2), (in1 - in2) * complexd(inv_sqrt2)};
}

complexd analyzer_amplitude(const JonesVector& field, const AnalyzerSetting& setting) {
    return std::cos(setting.radians()) * field.h + std::sin(setting.radians()) * field.v;
}

}  // namespace cobell
