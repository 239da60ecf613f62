#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cobell/bench.hpp"
#include "cobell/noise.hpp"

namespace cobell {

/// Comparator output for one averaged beat sample.
enum class KeySymbol : std::uint8_t { Zero = 0, One = 1, Erasure = 2 };

/// Sign comparator: sample > threshold -> One, sample < -threshold -> Zero,
/// |sample| <= threshold -> Erasure. threshold must be >= 0.
KeySymbol comparator_encode(double sample, double threshold);

struct SessionConfig {
    std::size_t n_rounds = 10000;
    std::vector<double> alice_angles;  // radians; default 0°, 30°, 60°
    std::vector<double> bob_angles;    // radians; default 30°, 60°, 90°
    std::size_t samples_per_round = 1;
    BellState preparation = BellState::PsiMinus;
    std::uint64_t seed = 1;
    double channel_decorrelation = 0.0;  // rad std of extra arm-2 phase per sample
    double comparator_threshold = 1e-6;  // in units of the beat amplitude K
    // Analyzer triple for the in-session Bell check, resolved against the
    // angle lists; rounds with these (alice, bob) pairs feed C(a,b) etc.
    double bell_a = 0.0, bell_b = 0.0, bell_c = 0.0;  // radians; default 0/30/60°
    BenchConfig bench;
    PhaseProcess noise;  // seed ignored: rounds derive their own streams

    SessionConfig();
};

struct RoundRecord {
    double alice_angle;  // radians
    double bob_angle;
    KeySymbol alice;
    KeySymbol bob;
    bool matched;  // bases equal
    bool sifted;   // matched and neither side erased
};

struct SessionBellCheck {
    double c_ab, c_ac, c_bc;  // normalized
    double f_value;
    double f_error;
    std::size_t n_ab, n_ac, n_bc;
    double calibration;  // |mean matched-basis product|
};

struct SessionTranscript {
    std::vector<RoundRecord> rounds;
    std::vector<std::uint8_t> alice_key;  // sifted bits
    std::vector<std::uint8_t> bob_key;    // sifted bits, inverted for psi preparations
    bool bob_inverted = false;
    std::size_t n_erasures = 0;
    std::optional<double> qber;  // empty when nothing sifted
    std::optional<SessionBellCheck> bell_check;
};

/// Run a full session: per round, fresh shared phase, random bases, one
/// (or the mean of samples_per_round) beat sample per party with extra
/// arm-2 phase jitter of std channel_decorrelation, comparator encoding,
/// sifting on matched bases, QBER, and a Bell check from the mismatched
/// rounds. Deterministic in config.seed.
SessionTranscript run_session(const SessionConfig& config);

/// Fraction of disagreeing sifted bits. Throws if the sifted key is empty.
double estimate_qber(const SessionTranscript& transcript);

/// Sifted key packed MSB-first, 8 bits per byte, zero-padded, lowercase hex.
std::string key_to_hex(const std::vector<std::uint8_t>& bits);

}  // namespace cobell
