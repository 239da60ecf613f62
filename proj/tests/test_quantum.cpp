#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cobell/quantum.hpp"

using namespace cobell;
using std::numbers::pi;

TEST_CASE("analyzer operator has eigenvalues +1 and -1") {
    for (const double theta : {0.0, pi / 8, pi / 6, pi / 4, 1.3}) {
        const auto [hi, lo] = hermitian_eigenvalues(analyzer_operator(AnalyzerSetting(theta)));
        CHECK(lo == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("analyzer operator sign convention: aligned polarization gets +1") {
    const PolarizationOperator a0 = analyzer_operator(AnalyzerSetting(0.0));
    const JonesVector h{1.0, 0.0};
    const JonesVector ah = a0 * h;
    CHECK(std::abs(ah.h - h.h) < 1e-15);
    CHECK(std::abs(ah.v - h.v) < 1e-15);

    const JonesVector v{0.0, 1.0};
    const JonesVector av = a0 * v;
    CHECK(std::abs(av.v + v.v) < 1e-15);
}

TEST_CASE("bell states are normalized") {
    for (const BellState s : all_bell_states) {
        CHECK(TwoPhotonState::bell(s).norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("quantum correlation matches the closed forms on a dense angle set") {
    for (const BellState s : all_bell_states) {
        const TwoPhotonState psi = TwoPhotonState::bell(s);
        for (int i = 0; i < 12; ++i) {
            for (int j = 0; j < 12; ++j) {
                const AnalyzerSetting t1(i * pi / 12.0);
                const AnalyzerSetting t2(j * pi / 12.0 + 0.05);
                const double contraction = quantum_correlation(psi, t1, t2);
                const double closed = closed_form_correlation(s, t1.radians(), t2.radians());
                CHECK(contraction == doctest::Approx(closed).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("pinned quantum values") {
    CHECK(closed_form_correlation(BellState::PsiMinus, 0.0, 0.0) == doctest::Approx(-1.0));
    CHECK(closed_form_correlation(BellState::PsiMinus, 0.0, pi / 3) == doctest::Approx(0.5));
    CHECK(closed_form_correlation(BellState::PhiPlus, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(closed_form_correlation(BellState::PsiPlus, pi / 8, -pi / 8) == doctest::Approx(-1.0));
    CHECK(closed_form_correlation(BellState::PhiMinus, pi / 8, -pi / 8) == doctest::Approx(1.0));
    // Perfect (anti)correlations: psi-minus anti-correlates at equal angles for every angle.
    for (int k = 0; k < 10; ++k) {
        const AnalyzerSetting t(0.31 * k);
        CHECK(quantum_correlation(TwoPhotonState::bell(BellState::PsiMinus), t, t) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("quantum correlation rejects unnormalized states") {
    TwoPhotonState bad = TwoPhotonState::bell(BellState::PhiPlus);
    bad.amp[0] *= 2.0;
    CHECK_THROWS_AS(
        quantum_correlation(bad, AnalyzerSetting(0.0), AnalyzerSetting(0.0)),
        std::invalid_argument);
}

TEST_CASE("bell state names round-trip") {
    for (const BellState s : all_bell_states) {
        CHECK(bell_state_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(bell_state_from_string("sigma-plus"), std::invalid_argument);
}
