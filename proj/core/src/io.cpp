#include "cobell/io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "cobell/version.hpp"

namespace cobell {

namespace {

using nlohmann::json;

// Angles travel through the library in radians; files report degrees.
// Converting deg -> rad -> deg costs half an ulp, which would print 15 as
// 14.999999999999998 — snap to the nearest 1e-9 degree so decimal grids
// round-trip (and irrational angles keep nine stable decimals).
inline double degrees(double radians) {
    const double d = radians * (180.0 / std::numbers::pi);
    return std::round(d * 1e9) / 1e9;
}

json provenance_json(const Provenance& p) {
    json j;
    j["tool"] = "cobell";
    j["version"] = std::string(version);
    j["subcommand"] = p.subcommand;
    j["seed"] = p.seed;
    j["config"] = json::parse(p.config_json);
    j["config_hash"] = fnv1a64_hex(p.config_json);
    return j;
}

json estimate_json(const CorrelationEstimate& e) {
    return {{"value", e.normalized_value},
            {"std_error", e.normalized_error()},
            {"n_samples", e.n_samples}};
}

json symbol_json(KeySymbol s) {
    if (s == KeySymbol::Erasure) return nullptr;
    return static_cast<int>(s);
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc()) throw std::runtime_error("float formatting failed");
    return std::string(buf, res.ptr);
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    static const char digits[] = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return hex;
}

void write_provenance_comments(std::ostream& os, const Provenance& p) {
    os << "# cobell v" << version << ' ' << p.subcommand << '\n';
    os << "# config: " << p.config_json << '\n';
    os << "# config_hash: " << fnv1a64_hex(p.config_json) << '\n';
    os << "# seed: " << p.seed << '\n';
}

void write_trace_csv(std::ostream& os, const Provenance& p, const PhaseTrace& phases,
                     const BeatTrace& t1, const BeatTrace& t2) {
    if (phases.size() != t1.samples.size() || phases.size() != t2.samples.size())
        throw std::invalid_argument("trace/phase lengths differ");
    write_provenance_comments(os, p);
    os << "k,phi,d1,d2,product\n";
    for (std::size_t k = 0; k < phases.size(); ++k) {
        os << k << ',' << format_double(phases.samples[k]) << ','
           << format_double(t1.samples[k]) << ',' << format_double(t2.samples[k])
           << ',' << format_double(t1.samples[k] * t2.samples[k]) << '\n';
    }
}

void write_scan_csv(std::ostream& os, const Provenance& p,
                    std::span<const ScanPoint> table) {
    write_provenance_comments(os, p);
    os << "theta2_deg,corr_normalized,std_error,n_samples\n";
    for (const ScanPoint& pt : table) {
        os << format_double(degrees(pt.theta2)) << ','
           << format_double(pt.estimate.normalized_value) << ','
           << format_double(pt.estimate.normalized_error()) << ','
           << pt.estimate.n_samples << '\n';
    }
}

void write_bell_csv(std::ostream& os, const Provenance& p, const BellScanResult& r) {
    write_provenance_comments(os, p);
    os << "c_deg,F,F_err\n";
    for (const BellCurvePoint& pt : r.curve) {
        os << format_double(degrees(pt.c)) << ',' << format_double(pt.f_value)
           << ',' << format_double(pt.f_error) << '\n';
    }
}

void write_quantum_csv(std::ostream& os, const Provenance& p,
                       std::span<const double> theta2_grid,
                       std::span<const double> values) {
    if (theta2_grid.size() != values.size())
        throw std::invalid_argument("grid/value lengths differ");
    write_provenance_comments(os, p);
    os << "theta2_deg,c_quantum\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << format_double(degrees(theta2_grid[i])) << ','
           << format_double(values[i]) << '\n';
}

std::string scan_json(const Provenance& p, std::span<const ScanPoint> table) {
    json j;
    j["provenance"] = provenance_json(p);
    json points = json::array();
    for (const ScanPoint& pt : table) {
        points.push_back({{"theta2_deg", degrees(pt.theta2)},
                          {"corr_normalized", pt.estimate.normalized_value},
                          {"std_error", pt.estimate.normalized_error()},
                          {"n_samples", pt.estimate.n_samples}});
    }
    j["points"] = std::move(points);
    return j.dump(2) + "\n";
}

std::string bell_summary_json(const Provenance& p, const BellScanResult& r) {
    json j;
    j["provenance"] = provenance_json(p);
    j["a_deg"] = degrees(r.a);
    j["b_deg"] = degrees(r.b);
    j["c_ab"] = estimate_json(r.c_ab);
    j["max_F"] = r.max_F;
    j["argmax_c_deg"] = degrees(r.argmax_c);
    j["n_points"] = r.curve.size();
    j["note"] =
        "F errors are statistical (three estimates in quadrature); the shared "
        "C(a,b) term makes errors common-mode across the curve";
    return j.dump(2) + "\n";
}

std::string transcript_json(const Provenance& p, const SessionConfig& config,
                            const SessionTranscript& t, bool include_rounds) {
    json j;
    j["provenance"] = provenance_json(p);

    json summary;
    summary["preparation"] = std::string(to_string(config.preparation));
    summary["n_rounds"] = t.rounds.size();
    summary["n_sifted"] = t.alice_key.size();
    summary["n_erasures"] = t.n_erasures;
    summary["bob_bits_inverted"] = t.bob_inverted;
    summary["qber"] = t.qber ? json(*t.qber) : json(nullptr);
    summary["alice_key_hex"] = key_to_hex(t.alice_key);
    summary["bob_key_hex"] = key_to_hex(t.bob_key);
    summary["n_key_bits"] = t.alice_key.size();
    if (t.bell_check) {
        const SessionBellCheck& b = *t.bell_check;
        summary["bell_check"] = {
            {"a_deg", degrees(config.bell_a)},
            {"b_deg", degrees(config.bell_b)},
            {"c_deg", degrees(config.bell_c)},
            {"c_ab", b.c_ab},
            {"c_ac", b.c_ac},
            {"c_bc", b.c_bc},
            {"F", b.f_value},
            {"F_err", b.f_error},
            {"n_ab", b.n_ab},
            {"n_ac", b.n_ac},
            {"n_bc", b.n_bc},
            {"calibration", b.calibration}};
    } else {
        summary["bell_check"] = nullptr;
    }
    j["summary"] = std::move(summary);

    if (include_rounds) {
        json rounds = json::array();
        for (std::size_t r = 0; r < t.rounds.size(); ++r) {
            const RoundRecord& rec = t.rounds[r];
            rounds.push_back({{"round", r},
                              {"alice_deg", degrees(rec.alice_angle)},
                              {"bob_deg", degrees(rec.bob_angle)},
                              {"alice_bit", symbol_json(rec.alice)},
                              {"bob_bit", symbol_json(rec.bob)},
                              {"sifted", rec.sifted}});
        }
        j["rounds"] = std::move(rounds);
    }
    return j.dump(2) + "\n";
}

}  // namespace cobell
