#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cobell/bell.hpp"
#include "cobell/bench.hpp"
#include "cobell/correlation.hpp"
#include "cobell/qkd.hpp"

namespace cobell {

/// Shortest round-trip decimal form of x; locale-free and byte-stable, so
/// identical runs write identical files.
std::string format_double(double x);

/// FNV-1a 64-bit hash, lowercase hex; used to fingerprint configs.
std::string fnv1a64_hex(std::string_view bytes);

/// Run identification embedded at the top of every output. config_json is
/// the canonical single-line JSON of the fully resolved configuration, so
/// a run is reproducible from its header alone.
struct Provenance {
    std::string subcommand;
    std::uint64_t seed = 0;
    std::string config_json;
};

/// '#'-prefixed provenance lines; CSV column headers below them are the
/// stable parse contract.
void write_provenance_comments(std::ostream& os, const Provenance& p);

// CSV writers. Columns:
//   trace: k,phi,d1,d2,product
//   scan:  theta2_deg,corr_normalized,std_error,n_samples (std_error normalized)
//   bell:  c_deg,F,F_err
//   quantum: theta2_deg,c_quantum
void write_trace_csv(std::ostream& os, const Provenance& p, const PhaseTrace& phases,
                     const BeatTrace& t1, const BeatTrace& t2);
void write_scan_csv(std::ostream& os, const Provenance& p,
                    std::span<const ScanPoint> table);
void write_bell_csv(std::ostream& os, const Provenance& p, const BellScanResult& r);
void write_quantum_csv(std::ostream& os, const Provenance& p,
                       std::span<const double> theta2_grid,
                       std::span<const double> values);

// JSON writers (pretty-printed, sorted keys, trailing newline).
std::string scan_json(const Provenance& p, std::span<const ScanPoint> table);
std::string bell_summary_json(const Provenance& p, const BellScanResult& r);
std::string transcript_json(const Provenance& p, const SessionConfig& config,
                            const SessionTranscript& t, bool include_rounds);

}  // namespace cobell
