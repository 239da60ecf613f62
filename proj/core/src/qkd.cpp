#include "cobell/qkd.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "cobell/bell.hpp"
#include "cobell/correlation.hpp"
#include "cobell/rng.hpp"

namespace cobell {

namespace {

constexpr double pi = std::numbers::pi;

bool same_angle(double a, double b) { return std::abs(a - b) < 1e-12; }

struct PairStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return sum / static_cast<double>(n); }
    double std_error() const {
        const double m = mean();
        const double var =
            (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
};

}  // namespace

SessionConfig::SessionConfig()
    : alice_angles{0.0, pi / 6.0, pi / 3.0},
      bob_angles{pi / 6.0, pi / 3.0, pi / 2.0},
      bell_a(0.0),
      bell_b(pi / 6.0),
      bell_c(pi / 3.0) {}

KeySymbol comparator_encode(double sample, double threshold) {
    if (!(threshold >= 0.0) || !std::isfinite(threshold))
        throw std::invalid_argument("comparator threshold must be finite and >= 0");
    if (sample > threshold) return KeySymbol::One;
    if (sample < -threshold) return KeySymbol::Zero;
    return KeySymbol::Erasure;
}

SessionTranscript run_session(const SessionConfig& config) {
    if (config.n_rounds == 0) throw std::invalid_argument("n_rounds must be >= 1");
    if (config.alice_angles.empty() || config.bob_angles.empty())
        throw std::invalid_argument("both parties need at least one analyzer angle");
    if (config.samples_per_round == 0)
        throw std::invalid_argument("samples_per_round must be >= 1");
    if (!(config.channel_decorrelation >= 0.0) ||
        !std::isfinite(config.channel_decorrelation))
        throw std::invalid_argument("channel_decorrelation must be finite and >= 0");

    const BellPreparation prep{config.preparation};
    // Anti-correlated preparations key on inverted Bob bits.
    const bool invert = config.preparation == BellState::PsiMinus ||
                        config.preparation == BellState::PsiPlus;

    // Analyzer projections are per-angle constants; hoist them.
    std::vector<ArmAmplitudes> alice_arms, bob_arms;
    alice_arms.reserve(config.alice_angles.size());
    for (double a : config.alice_angles)
        alice_arms.push_back(
            arm_amplitudes(prep, Arm::One, AnalyzerSetting(a), config.bench));
    bob_arms.reserve(config.bob_angles.size());
    for (double b : config.bob_angles)
        bob_arms.push_back(
            arm_amplitudes(prep, Arm::Two, AnalyzerSetting(b), config.bench));

    SessionTranscript out;
    out.rounds.reserve(config.n_rounds);
    out.bob_inverted = invert;

    // Product statistics per (alice_idx, bob_idx) for the Bell check;
    // matched-basis pairs double as the calibration sample.
    std::map<std::pair<std::size_t, std::size_t>, PairStats> stats;
    PairStats matched_products;

    for (std::size_t r = 0; r < config.n_rounds; ++r) {
        rng::Stream stream(rng::derive_seed(config.seed, rng::stream_tag::qkd_round, r));
        const std::size_t ai = stream.uniform_index(config.alice_angles.size());
        const std::size_t bi = stream.uniform_index(config.bob_angles.size());

        PhaseProcess round_phase =
            config.noise.with_stream(config.seed, rng::stream_tag::qkd_phase, r);
        const double phi = sample_phase_trace(round_phase, 1).samples[0];

        const double d1 = beat_sample(alice_arms[ai], phi);
        double d2 = 0.0;
        for (std::size_t s = 0; s < config.samples_per_round; ++s) {
            const double jitter = config.channel_decorrelation > 0.0
                                      ? stream.normal() * config.channel_decorrelation
                                      : 0.0;
            d2 += beat_sample(bob_arms[bi], phi + jitter);
        }
        d2 /= static_cast<double>(config.samples_per_round);

        RoundRecord rec;
        rec.alice_angle = config.alice_angles[ai];
        rec.bob_angle = config.bob_angles[bi];
        rec.alice = comparator_encode(d1, config.comparator_threshold);
        rec.bob = comparator_encode(d2, config.comparator_threshold);
        rec.matched = same_angle(rec.alice_angle, rec.bob_angle);
        const bool erased =
            rec.alice == KeySymbol::Erasure || rec.bob == KeySymbol::Erasure;
        if (erased) ++out.n_erasures;
        rec.sifted = rec.matched && !erased;

        stats[{ai, bi}].add(d1 * d2);
        if (rec.matched) matched_products.add(d1 * d2);

        if (rec.sifted) {
            out.alice_key.push_back(static_cast<std::uint8_t>(rec.alice));
            const auto bob_bit = static_cast<std::uint8_t>(rec.bob);
            out.bob_key.push_back(invert ? static_cast<std::uint8_t>(1 - bob_bit)
                                         : bob_bit);
        }
        out.rounds.push_back(rec);
    }

    if (!out.alice_key.empty()) out.qber = estimate_qber(out);

    // Bell check on the configured triple, from mismatched-basis rounds.
    const auto find_idx = [](const std::vector<double>& list, double angle) {
        for (std::size_t i = 0; i < list.size(); ++i)
            if (same_angle(list[i], angle)) return static_cast<std::ptrdiff_t>(i);
        return static_cast<std::ptrdiff_t>(-1);
    };
    const std::ptrdiff_t a_idx = find_idx(config.alice_angles, config.bell_a);
    const std::ptrdiff_t b_alice = find_idx(config.alice_angles, config.bell_b);
    const std::ptrdiff_t b_bob = find_idx(config.bob_angles, config.bell_b);
    const std::ptrdiff_t c_idx = find_idx(config.bob_angles, config.bell_c);

    if (a_idx >= 0 && b_alice >= 0 && b_bob >= 0 && c_idx >= 0 &&
        matched_products.n >= 2) {
        const auto it_ab = stats.find({static_cast<std::size_t>(a_idx),
                                       static_cast<std::size_t>(b_bob)});
        const auto it_ac = stats.find({static_cast<std::size_t>(a_idx),
                                       static_cast<std::size_t>(c_idx)});
        const auto it_bc = stats.find({static_cast<std::size_t>(b_alice),
                                       static_cast<std::size_t>(c_idx)});
        const double cal = std::abs(matched_products.mean());
        if (it_ab != stats.end() && it_ac != stats.end() && it_bc != stats.end() &&
            it_ab->second.n >= 2 && it_ac->second.n >= 2 && it_bc->second.n >= 2 &&
            cal > 0.0) {
            SessionBellCheck check;
            check.calibration = cal;
            check.c_ab = it_ab->second.mean() / cal;
            check.c_ac = it_ac->second.mean() / cal;
            check.c_bc = it_bc->second.mean() / cal;
            check.n_ab = it_ab->second.n;
            check.n_ac = it_ac->second.n;
            check.n_bc = it_bc->second.n;
            check.f_value = bell_F(check.c_ab, check.c_ac, check.c_bc);
            const double e_ab = it_ab->second.std_error() / cal;
            const double e_ac = it_ac->second.std_error() / cal;
            const double e_bc = it_bc->second.std_error() / cal;
            check.f_error = std::sqrt(e_ab * e_ab + e_ac * e_ac + e_bc * e_bc);
            out.bell_check = check;
        }
    }
    return out;
}

double estimate_qber(const SessionTranscript& transcript) {
    if (transcript.alice_key.size() != transcript.bob_key.size())
        throw std::invalid_argument("sifted keys differ in length");
    if (transcript.alice_key.empty())
        throw std::invalid_argument("no sifted bits to compare");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < transcript.alice_key.size(); ++i)
        if (transcript.alice_key[i] != transcript.bob_key[i]) ++mismatches;
    return static_cast<double>(mismatches) /
           static_cast<double>(transcript.alice_key.size());
}

std::string key_to_hex(const std::vector<std::uint8_t>& bits) {
    static const char digits[] = "0123456789abcdef";
    std::string hex;
    hex.reserve((bits.size() + 7) / 8 * 2);
    for (std::size_t i = 0; i < bits.size(); i += 8) {
        unsigned byte = 0;
        for (std::size_t j = 0; j < 8; ++j) {
            byte <<= 1;
            if (i + j < bits.size() && bits[i + j]) byte |= 1;
        }
        hex.push_back(digits[byte >> 4]);
        hex.push_back(digits[byte & 0xF]);
    }
    return hex;
}

}  // namespace cobell
