#include "cobell/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cobell {

PolarizationOperator analyzer_operator(const AnalyzerSetting& setting) {
    const double c = std::cos(setting.radians());
    const double s = std::sin(setting.radians());
    // |θ⟩⟨θ| - |θ⊥⟩⟨θ⊥| with |θ⊥⟩ = -sinθ|H⟩ + cosθ|V⟩.
    return {complexd(c * c - s * s), complexd(2.0 * c * s),
            complexd(2.0 * c * s), complexd(s * s - c * c)};
}

std::pair<double, double> hermitian_eigenvalues(const PolarizationOperator& op) {
    const double tr = (op.m[0][0] + op.m[1][1]).real();
    const complexd det_c = op.m[0][0] * op.m[1][1] - op.m[0][1] * op.m[1][0];
    const double disc = tr * tr / 4.0 - det_c.real();
    const double root = std::sqrt(std::max(0.0, disc));
    return {tr / 2.0 + root, tr / 2.0 - root};
}

TwoPhotonState TwoPhotonState::bell(BellState s) {
    const double r = std::numbers::sqrt2 / 2.0;
    TwoPhotonState st;
    switch (s) {  // amplitude order (HH, HV, VH, VV)
        case BellState::PsiMinus: st.amp = {0.0, r, -r, 0.0}; break;
        case BellState::PsiPlus: st.amp = {0.0, r, r, 0.0}; break;
        case BellState::PhiPlus: st.amp = {r, 0.0, 0.0, r}; break;
        case BellState::PhiMinus: st.amp = {r, 0.0, 0.0, -r}; break;
    }
    return st;
}

double TwoPhotonState::norm_sq() const {
    double n = 0.0;
    for (const complexd& a : amp) n += std::norm(a);
    return n;
}

double quantum_correlation(const TwoPhotonState& state,
                           const AnalyzerSetting& theta1,
                           const AnalyzerSetting& theta2) {
    if (std::abs(state.norm_sq() - 1.0) > 1e-9)
        throw std::invalid_argument("two-photon state must be normalized");

    const PolarizationOperator a = analyzer_operator(theta1);
    const PolarizationOperator b = analyzer_operator(theta2);

    // ⟨ψ| A⊗B |ψ⟩, composite index 2i+j for photon indices (i, j).
    complexd acc{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    acc += std::conj(state.amp[2 * i + j]) * a.m[i][k] *
                           b.m[j][l] * state.amp[2 * k + l];
    return acc.real();
}

double closed_form_correlation(BellState s, double theta1, double theta2) {
    switch (s) {
        case BellState::PsiMinus: return -std::cos(2.0 * (theta1 - theta2));
        case BellState::PsiPlus: return -std::cos(2.0 * (theta1 + theta2));
        case BellState::PhiPlus: return std::cos(2.0 * (theta1 - theta2));
        case BellState::PhiMinus: return std::cos(2.0 * (theta1 + theta2));
    }
    throw std::invalid_argument("unknown Bell state");
}

}  // namespace cobell
