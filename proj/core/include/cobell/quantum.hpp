#pragma once

#include <array>
#include <complex>
#include <utility>

#include "cobell/bell_state.hpp"
#include "cobell/jones.hpp"

namespace cobell {

/// Hermitian single-photon polarization observable. analyzer_operator
/// returns |θ⟩⟨θ| - |θ⊥⟩⟨θ⊥| with |θ⟩ = cosθ|H⟩ + sinθ|V⟩: eigenvalue +1
/// for the transmitted polarization, -1 for the blocked one.
using PolarizationOperator = JonesMatrix;

PolarizationOperator analyzer_operator(const AnalyzerSetting& setting);

/// Eigenvalues of a 2x2 Hermitian operator, descending.
std::pair<double, double> hermitian_eigenvalues(const PolarizationOperator& op);

/// Two-photon pure state on the product basis, amplitude order
/// (HH, HV, VH, VV). Must be normalized to enter quantum_correlation.
struct TwoPhotonState {
    std::array<complexd, 4> amp{};

    static TwoPhotonState bell(BellState s);
    double norm_sq() const;
};

/// ⟨state| A(θ1) ⊗ A(θ2) |state⟩ by explicit 4x4 contraction. Throws
/// std::invalid_argument if the state is not normalized to 1e-9.
double quantum_correlation(const TwoPhotonState& state,
                           const AnalyzerSetting& theta1,
                           const AnalyzerSetting& theta2);

/// Closed-form Bell-state correlations:
/// psi∓: -cos2(θ1∓θ2), phi±: +cos2(θ1∓θ2).
double closed_form_correlation(BellState s, double theta1, double theta2);

}  // namespace cobell
