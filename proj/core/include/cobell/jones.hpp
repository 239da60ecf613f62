#pragma once

#include <array>
#include <complex>
#include <utility>

namespace cobell {

using complexd = std::complex<double>;

/// Transverse field amplitude in the (H, V) linear basis.
struct JonesVector {
    complexd h{0.0, 0.0};
    complexd v{0.0, 0.0};

    JonesVector() = default;
    JonesVector(complexd h_, complexd v_) : h(h_), v(v_) {}

    double norm_sq() const { return std::norm(h) + std::norm(v); }

    JonesVector operator+(const JonesVector& o) const { return {h + o.h, v + o.v}; }
    JonesVector operator-(const JonesVector& o) const { return {h - o.h, v - o.v}; }
    JonesVector operator*(complexd s) const { return {h * s, v * s}; }
    JonesVector operator/(double s) const { return {h / s, v / s}; }
};

/// 2x2 complex operator on (H, V); row-major.
struct JonesMatrix {
    std::array<std::array<complexd, 2>, 2> m{};

    JonesMatrix() = default;
    JonesMatrix(complexd a, complexd b, complexd c, complexd d) : m{{{a, b}, {c, d}}} {}

    static JonesMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

    JonesVector operator*(const JonesVector& x) const {
        return {m[0][0] * x.h + m[0][1] * x.v, m[1][0] * x.h + m[1][1] * x.v};
    }

    JonesMatrix operator*(const JonesMatrix& o) const {
        JonesMatrix r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }

    JonesMatrix adjoint() const {
        return {std::conj(m[0][0]), std::conj(m[1][0]),
                std::conj(m[0][1]), std::conj(m[1][1])};
    }

    /// max |(M†M - I)_ij|; zero for a unitary element.
    double unitarity_defect() const;
};

/// Polarizer/analyzer orientation, canonicalized to [0, pi): a linear
/// analyzer is invariant under a half-turn.
class AnalyzerSetting {
  public:
    explicit AnalyzerSetting(double radians);
    static AnalyzerSetting from_degrees(double degrees);

    double radians() const { return angle_; }
    double degrees() const;

  private:
    double angle_;
};

/// Quarter-wave plate, fast axis at `fast_axis` radians from H.
/// Phase convention: QWP(+45°) maps V -> (-i,1)/√2 and H -> (1,-i)/√2 exactly.
JonesMatrix quarter_wave_plate(double fast_axis);

/// Half-wave plate, fast axis at `fast_axis` radians from H.
/// HWP(0°) maps (h,v) -> (h,-v); HWP(45°) swaps H and V.
JonesMatrix half_wave_plate(double fast_axis);

/// Lossless symmetric 50/50 splitter acting per polarization component:
/// out1 = (in1 + in2)/√2, out2 = (in1 - in2)/√2.
std::pair<JonesVector, JonesVector> beam_splitter(const JonesVector& in1,
                                                  const JonesVector& in2);

/// Scalar amplitude passed by a linear analyzer at `setting`:
/// cosθ·h + sinθ·v.
complexd analyzer_amplitude(const JonesVector& field, const AnalyzerSetting& setting);

}  // namespace cobell
