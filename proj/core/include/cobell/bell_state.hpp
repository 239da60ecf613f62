#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cobell {

/// The four maximally entangled two-photon states; also labels the bench
/// preparation that projects the corresponding classical analog.
enum class BellState { PsiMinus, PsiPlus, PhiPlus, PhiMinus };

inline constexpr std::array<BellState, 4> all_bell_states = {
    BellState::PsiMinus, BellState::PsiPlus, BellState::PhiPlus,
    BellState::PhiMinus};

inline std::string_view to_string(BellState s) {
    switch (s) {
        case BellState::PsiMinus: return "psi-minus";
        case BellState::PsiPlus: return "psi-plus";
        case BellState::PhiPlus: return "phi-plus";
        case BellState::PhiMinus: return "phi-minus";
    }
    return "?";
}

inline BellState bell_state_from_string(std::string_view name) {
    for (BellState s : all_bell_states)
        if (name == to_string(s)) return s;
    throw std::invalid_argument("unknown Bell state: " + std::string(name) +
                                " (expected psi-minus, psi-plus, phi-plus or phi-minus)");
}

}  // namespace cobell
