// cobell: command-line front end for the two-beam correlation bench.
// Subcommands: trace, scan, bell, quantum, qkd. Angles are degrees at this
// boundary (radians inside the library); grids use start:stop:step syntax.
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cobell/bell.hpp"
#include "cobell/bench.hpp"
#include "cobell/correlation.hpp"
#include "cobell/io.hpp"
#include "cobell/noise.hpp"
#include "cobell/qkd.hpp"
#include "cobell/quantum.hpp"
#include "cobell/rng.hpp"
#include "cobell/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double deg = std::numbers::pi / 180.0;
constexpr const char* seed_env_var = "COBELL_SEED";

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::uint64_t default_seed() {
    const char* env = std::getenv(seed_env_var);
    if (env == nullptr || *env == '\0') return 1;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(env, &pos);
        if (env[pos] != '\0') throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string(seed_env_var) + " must be an unsigned integer, got '" +
                          env + "'");
    }
}

std::vector<double> parse_grid_degrees(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    try {
        if (parts.size() == 1) return {std::stod(parts[0])};
        if (parts.size() == 3) {
            const double start = std::stod(parts[0]);
            const double stop = std::stod(parts[1]);
            const double step = std::stod(parts[2]);
            if (!(step > 0.0)) throw ConfigError("grid step must be > 0");
            if (stop < start) throw ConfigError("grid stop must be >= start");
            std::vector<double> grid;
            const double eps = step * 1e-9;
            for (std::size_t k = 0;; ++k) {
                const double v = start + static_cast<double>(k) * step;
                if (v > stop + eps) break;
                grid.push_back(v);
            }
            return grid;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        // fall through to the shared message
    }
    throw ConfigError("bad grid '" + text + "': expected degrees as start:stop:step or a single value");
}

std::vector<double> parse_angle_list_degrees(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    try {
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    } catch (const std::exception&) {
        throw ConfigError("bad angle list '" + text + "': expected comma-separated degrees");
    }
    if (out.empty()) throw ConfigError("angle list is empty");
    return out;
}

cobell::PhaseKind parse_noise_kind(const std::string& name) {
    if (name == "piecewise") return cobell::PhaseKind::PiecewiseUniform;
    if (name == "wiener") return cobell::PhaseKind::WienerDiffusion;
    throw ConfigError("unknown noise kind '" + name + "' (expected piecewise or wiener)");
}

// ---- output plumbing -------------------------------------------------------

std::string run_stamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    return buf;
}

fs::path resolve_out_dir(const std::string& out_flag, const std::string& subcommand) {
    if (!out_flag.empty()) return fs::path(out_flag);
    return fs::path("out") / (subcommand + "-" + run_stamp());
}

void write_file(const fs::path& dir, const std::string& name, bool force,
                const std::string& content) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    const fs::path path = dir / name;
    if (fs::exists(path) && !force)
        throw ConfigError(path.string() + " exists; pass --force to overwrite");
    std::ofstream os(path, std::ios::binary);
    os << content;
    os.close();
    if (!os) throw std::runtime_error("failed writing " + path.string());
    std::cout << "wrote " << path.string() << '\n';
}

// ---- config file handling --------------------------------------------------

// The JSON config file uses the long flag names (without --) as keys and the
// same value syntax as the command line. Values act as defaults; explicit
// flags win. Unknown keys are rejected.
json load_config_file(const std::string& path, const std::vector<std::string>& allowed) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool known = false;
        for (const std::string& a : allowed) known = known || a == key;
        if (!known) throw ConfigError("unknown config key '" + key + "' in " + path);
    }
    return j;
}

std::optional<std::string> prescan_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc) throw ConfigError("--config needs a file path");
            return std::string(argv[i + 1]);
        }
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return std::nullopt;
}

template <typename T>
void apply_key(const json& cfg, const char* key, T& target) {
    if (!cfg.contains(key)) return;
    try {
        target = cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

// ---- shared option bundles -------------------------------------------------

struct CommonOpts {
    std::uint64_t seed = 1;
    std::string out;
    bool force = false;
    unsigned threads = 0;
};

struct NoiseOpts {
    std::string kind = "piecewise";
    std::size_t dwell = 1;
    double diffusion = 0.0;

    cobell::PhaseProcess process(std::uint64_t seed) const {
        cobell::PhaseProcess p;
        p.kind = parse_noise_kind(kind);
        p.seed = seed;
        p.dwell_samples = dwell;
        p.diffusion_rate = diffusion;
        return p;
    }

    void to_json(json& j) const {
        j["noise"] = kind;
        j["dwell"] = dwell;
        j["diffusion"] = diffusion;
    }
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--seed", c.seed, "Master seed (default: $" + std::string(seed_env_var) + " or 1)");
    sub->add_option("--out", c.out, "Output directory (default out/<subcommand>-<utc stamp>)");
    sub->add_flag("--force", c.force, "Overwrite existing output files");
    sub->add_option("--threads", c.threads, "Worker threads, 0 = hardware (results identical)");
    sub->add_option("--config", "JSON config file; keys = long flag names, flags override")
        ->expected(1);
}

void add_noise(CLI::App* sub, NoiseOpts& n) {
    sub->add_option("--noise", n.kind, "Phase process: piecewise | wiener")
        ->check(CLI::IsMember({"piecewise", "wiener"}));
    sub->add_option("--dwell", n.dwell, "Samples per piecewise phase dwell (>= 1)");
    sub->add_option("--diffusion", n.diffusion, "Wiener diffusion rate, rad^2/sample");
}

void apply_common(const json& cfg, CommonOpts& c) {
    apply_key(cfg, "seed", c.seed);
    apply_key(cfg, "out", c.out);
    apply_key(cfg, "force", c.force);
    apply_key(cfg, "threads", c.threads);
}

void apply_noise(const json& cfg, NoiseOpts& n) {
    apply_key(cfg, "noise", n.kind);
    apply_key(cfg, "dwell", n.dwell);
    apply_key(cfg, "diffusion", n.diffusion);
}

const std::vector<std::string> common_keys = {"seed", "out", "force", "threads"};
const std::vector<std::string> noise_keys = {"noise", "dwell", "diffusion"};

std::vector<std::string> merge_keys(std::initializer_list<std::vector<std::string>> lists) {
    std::vector<std::string> all;
    for (const auto& l : lists) all.insert(all.end(), l.begin(), l.end());
    return all;
}

// Only result-affecting settings enter the provenance config (out/force/
// threads change neither values nor bytes).
json base_config(const CommonOpts& c) {
    json j;
    j["seed"] = c.seed;
    return j;
}

// ---- subcommands -----------------------------------------------------------

struct TraceArgs {
    CommonOpts common;
    NoiseOpts noise;
    std::string prep = "psi-minus";
    double theta1_deg = 22.5;
    double theta2_deg = 22.5;
    std::size_t n = 2000;
};

int run_trace(const TraceArgs& a) {
    json cfg = base_config(a.common);
    a.noise.to_json(cfg);
    cfg["prep"] = a.prep;
    cfg["theta1"] = a.theta1_deg;
    cfg["theta2"] = a.theta2_deg;
    cfg["n"] = a.n;

    const cobell::BellPreparation prep{cobell::bell_state_from_string(a.prep)};
    const cobell::PhaseTrace phases =
        cobell::sample_phase_trace(a.noise.process(a.common.seed), a.n);
    const cobell::BenchConfig bench;
    const auto [t1, t2] = cobell::simulate_beat_traces(
        prep, cobell::AnalyzerSetting(a.theta1_deg * deg),
        cobell::AnalyzerSetting(a.theta2_deg * deg), phases, bench);

    const cobell::Provenance prov{"trace", a.common.seed, cfg.dump()};
    std::ostringstream os;
    cobell::write_trace_csv(os, prov, phases, t1, t2);
    write_file(resolve_out_dir(a.common.out, "trace"), "trace.csv", a.common.force, os.str());
    return 0;
}

struct ScanArgs {
    CommonOpts common;
    NoiseOpts noise;
    std::string prep = "psi-minus";
    double theta1_deg = 0.0;
    std::string grid = "0:90:5";
    std::size_t n = 100000;
    std::string format = "csv";
};

int run_scan(const ScanArgs& a) {
    json cfg = base_config(a.common);
    a.noise.to_json(cfg);
    cfg["prep"] = a.prep;
    cfg["theta1"] = a.theta1_deg;
    cfg["grid"] = a.grid;
    cfg["n"] = a.n;

    const std::vector<double> grid_deg = parse_grid_degrees(a.grid);
    std::vector<double> grid_rad(grid_deg.size());
    for (std::size_t i = 0; i < grid_deg.size(); ++i) grid_rad[i] = grid_deg[i] * deg;

    cobell::ScanConfig sc;
    sc.noise = a.noise.process(0);
    sc.n_samples = a.n;
    sc.master_seed = a.common.seed;
    sc.threads = a.common.threads;

    const cobell::BellPreparation prep{cobell::bell_state_from_string(a.prep)};
    const auto table = cobell::correlation_scan(
        prep, cobell::AnalyzerSetting(a.theta1_deg * deg), grid_rad, sc);

    const cobell::Provenance prov{"scan", a.common.seed, cfg.dump()};
    const fs::path dir = resolve_out_dir(a.common.out, "scan");
    if (a.format == "json") {
        write_file(dir, "scan.json", a.common.force, cobell::scan_json(prov, table));
    } else {
        std::ostringstream os;
        cobell::write_scan_csv(os, prov, table);
        write_file(dir, "scan.csv", a.common.force, os.str());
    }
    return 0;
}

struct BellArgs {
    CommonOpts common;
    NoiseOpts noise;
    std::string prep = "psi-minus";
    double a_deg = 0.0;
    double b_deg = 30.0;
    std::string c_grid = "0:90:5";
    std::size_t n = 100000;
};

int run_bell(const BellArgs& a) {
    json cfg = base_config(a.common);
    a.noise.to_json(cfg);
    cfg["prep"] = a.prep;
    cfg["a"] = a.a_deg;
    cfg["b"] = a.b_deg;
    cfg["c-grid"] = a.c_grid;
    cfg["n"] = a.n;

    const std::vector<double> grid_deg = parse_grid_degrees(a.c_grid);
    std::vector<double> grid_rad(grid_deg.size());
    for (std::size_t i = 0; i < grid_deg.size(); ++i) grid_rad[i] = grid_deg[i] * deg;

    cobell::ScanConfig sc;
    sc.noise = a.noise.process(0);
    sc.n_samples = a.n;
    sc.master_seed = a.common.seed;
    sc.threads = a.common.threads;

    const cobell::BellPreparation prep{cobell::bell_state_from_string(a.prep)};
    const cobell::BellScanResult result =
        cobell::violation_scan(prep, a.a_deg * deg, a.b_deg * deg, grid_rad, sc);

    const cobell::Provenance prov{"bell", a.common.seed, cfg.dump()};
    const fs::path dir = resolve_out_dir(a.common.out, "bell");
    std::ostringstream os;
    cobell::write_bell_csv(os, prov, result);
    write_file(dir, "bell_curve.csv", a.common.force, os.str());
    write_file(dir, "bell_summary.json", a.common.force,
               cobell::bell_summary_json(prov, result));
    return 0;
}

struct QuantumArgs {
    CommonOpts common;
    std::string state = "psi-minus";
    double theta1_deg = 0.0;
    std::string grid = "0:90:1";
};

int run_quantum(const QuantumArgs& a) {
    json cfg = base_config(a.common);
    cfg["state"] = a.state;
    cfg["theta1"] = a.theta1_deg;
    cfg["grid"] = a.grid;

    const std::vector<double> grid_deg = parse_grid_degrees(a.grid);
    const cobell::BellState state = cobell::bell_state_from_string(a.state);

    std::vector<double> grid_rad(grid_deg.size()), values(grid_deg.size());
    for (std::size_t i = 0; i < grid_deg.size(); ++i) {
        grid_rad[i] = grid_deg[i] * deg;
        values[i] = cobell::closed_form_correlation(state, a.theta1_deg * deg, grid_rad[i]);
    }

    const cobell::Provenance prov{"quantum", a.common.seed, cfg.dump()};
    std::ostringstream os;
    cobell::write_quantum_csv(os, prov, grid_rad, values);
    write_file(resolve_out_dir(a.common.out, "quantum"), "quantum.csv", a.common.force,
               os.str());
    return 0;
}

struct QkdArgs {
    CommonOpts common;
    NoiseOpts noise;
    std::string prep = "psi-minus";
    std::size_t rounds = 10000;
    std::size_t samples_per_round = 1;
    double decorrelation = 0.0;
    double threshold = 1e-6;
    std::string alice = "0,30,60";
    std::string bob = "30,60,90";
    bool no_rounds = false;
};

int run_qkd(const QkdArgs& a) {
    json cfg = base_config(a.common);
    a.noise.to_json(cfg);
    cfg["prep"] = a.prep;
    cfg["rounds"] = a.rounds;
    cfg["samples-per-round"] = a.samples_per_round;
    cfg["decorrelation"] = a.decorrelation;
    cfg["threshold"] = a.threshold;
    cfg["alice"] = a.alice;
    cfg["bob"] = a.bob;

    cobell::SessionConfig sc;
    sc.n_rounds = a.rounds;
    sc.samples_per_round = a.samples_per_round;
    sc.preparation = cobell::bell_state_from_string(a.prep);
    sc.seed = a.common.seed;
    sc.channel_decorrelation = a.decorrelation;
    sc.comparator_threshold = a.threshold;
    sc.noise = a.noise.process(0);
    sc.alice_angles.clear();
    for (double d : parse_angle_list_degrees(a.alice)) sc.alice_angles.push_back(d * deg);
    sc.bob_angles.clear();
    for (double d : parse_angle_list_degrees(a.bob)) sc.bob_angles.push_back(d * deg);

    const cobell::SessionTranscript transcript = cobell::run_session(sc);
    const cobell::Provenance prov{"qkd", a.common.seed, cfg.dump()};
    write_file(resolve_out_dir(a.common.out, "qkd"), "qkd.json", a.common.force,
               cobell::transcript_json(prov, sc, transcript, !a.no_rounds));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        CLI::App app{"cobell: coherent-field Bell correlation bench"};
        app.set_version_flag("--version", std::string(cobell::version));
        app.require_subcommand(1);

        const std::uint64_t env_seed = default_seed();

        TraceArgs trace;
        ScanArgs scan;
        BellArgs bell;
        QuantumArgs quantum;
        QkdArgs qkd;
        trace.common.seed = scan.common.seed = bell.common.seed =
            quantum.common.seed = qkd.common.seed = env_seed;

        // Config file (if any) seeds the defaults before flags are parsed.
        if (const auto cfg_path = prescan_config_path(argc, argv)) {
            std::string sub;
            for (int i = 1; i < argc; ++i) {
                if (argv[i][0] != '-') {
                    sub = argv[i];
                    break;
                }
            }
            if (sub == "trace") {
                const json cfg = load_config_file(
                    *cfg_path, merge_keys({common_keys, noise_keys,
                                           {"prep", "theta1", "theta2", "n"}}));
                apply_common(cfg, trace.common);
                apply_noise(cfg, trace.noise);
                apply_key(cfg, "prep", trace.prep);
                apply_key(cfg, "theta1", trace.theta1_deg);
                apply_key(cfg, "theta2", trace.theta2_deg);
                apply_key(cfg, "n", trace.n);
            } else if (sub == "scan") {
                const json cfg = load_config_file(
                    *cfg_path, merge_keys({common_keys, noise_keys,
                                           {"prep", "theta1", "grid", "n", "format"}}));
                apply_common(cfg, scan.common);
                apply_noise(cfg, scan.noise);
                apply_key(cfg, "prep", scan.prep);
                apply_key(cfg, "theta1", scan.theta1_deg);
                apply_key(cfg, "grid", scan.grid);
                apply_key(cfg, "n", scan.n);
                apply_key(cfg, "format", scan.format);
            } else if (sub == "bell") {
                const json cfg = load_config_file(
                    *cfg_path, merge_keys({common_keys, noise_keys,
                                           {"prep", "a", "b", "c-grid", "n"}}));
                apply_common(cfg, bell.common);
                apply_noise(cfg, bell.noise);
                apply_key(cfg, "prep", bell.prep);
                apply_key(cfg, "a", bell.a_deg);
                apply_key(cfg, "b", bell.b_deg);
                apply_key(cfg, "c-grid", bell.c_grid);
                apply_key(cfg, "n", bell.n);
            } else if (sub == "quantum") {
                const json cfg = load_config_file(
                    *cfg_path,
                    merge_keys({common_keys, {"state", "theta1", "grid"}}));
                apply_common(cfg, quantum.common);
                apply_key(cfg, "state", quantum.state);
                apply_key(cfg, "theta1", quantum.theta1_deg);
                apply_key(cfg, "grid", quantum.grid);
            } else if (sub == "qkd") {
                const json cfg = load_config_file(
                    *cfg_path,
                    merge_keys({common_keys, noise_keys,
                                {"prep", "rounds", "samples-per-round", "decorrelation",
                                 "threshold", "alice", "bob", "no-rounds"}}));
                apply_common(cfg, qkd.common);
                apply_noise(cfg, qkd.noise);
                apply_key(cfg, "prep", qkd.prep);
                apply_key(cfg, "rounds", qkd.rounds);
                apply_key(cfg, "samples-per-round", qkd.samples_per_round);
                apply_key(cfg, "decorrelation", qkd.decorrelation);
                apply_key(cfg, "threshold", qkd.threshold);
                apply_key(cfg, "alice", qkd.alice);
                apply_key(cfg, "bob", qkd.bob);
                apply_key(cfg, "no-rounds", qkd.no_rounds);
            } else {
                throw ConfigError("--config requires a subcommand");
            }
        }

        const std::vector<std::string> preps = {"psi-minus", "psi-plus", "phi-plus",
                                                "phi-minus"};

        CLI::App* t = app.add_subcommand("trace", "Write one beat-signal trace pair");
        add_common(t, trace.common);
        add_noise(t, trace.noise);
        t->add_option("--prep", trace.prep, "Bell-state preparation")->check(CLI::IsMember(preps));
        t->add_option("--theta1", trace.theta1_deg, "Arm-1 analyzer, degrees");
        t->add_option("--theta2", trace.theta2_deg, "Arm-2 analyzer, degrees");
        t->add_option("--n", trace.n, "Samples");

        CLI::App* s = app.add_subcommand("scan", "Correlation vs arm-2 analyzer angle");
        add_common(s, scan.common);
        add_noise(s, scan.noise);
        s->add_option("--prep", scan.prep, "Bell-state preparation")->check(CLI::IsMember(preps));
        s->add_option("--theta1", scan.theta1_deg, "Arm-1 analyzer, degrees");
        s->add_option("--grid", scan.grid, "theta2 grid, degrees start:stop:step");
        s->add_option("--n", scan.n, "Samples per grid point");
        s->add_option("--format", scan.format, "Table format")->check(CLI::IsMember({"csv", "json"}));

        CLI::App* b = app.add_subcommand("bell", "Bell comparison function over c");
        add_common(b, bell.common);
        add_noise(b, bell.noise);
        b->add_option("--prep", bell.prep, "Bell-state preparation")->check(CLI::IsMember(preps));
        b->add_option("--a", bell.a_deg, "First analyzer angle, degrees");
        b->add_option("--b", bell.b_deg, "Second analyzer angle, degrees");
        b->add_option("--c-grid", bell.c_grid, "Third-angle grid, degrees start:stop:step");
        b->add_option("--n", bell.n, "Samples per correlation estimate");

        CLI::App* q = app.add_subcommand("quantum", "Quantum closed-form reference curve");
        add_common(q, quantum.common);
        q->add_option("--state", quantum.state, "Bell state")->check(CLI::IsMember(preps));
        q->add_option("--theta1", quantum.theta1_deg, "Arm-1 analyzer, degrees");
        q->add_option("--grid", quantum.grid, "theta2 grid, degrees start:stop:step");

        CLI::App* k = app.add_subcommand("qkd", "Comparator-encoded key exchange session");
        add_common(k, qkd.common);
        add_noise(k, qkd.noise);
        k->add_option("--prep", qkd.prep, "Bell-state preparation")->check(CLI::IsMember(preps));
        k->add_option("--rounds", qkd.rounds, "Session rounds");
        k->add_option("--samples-per-round", qkd.samples_per_round,
                      "Beat samples averaged per round");
        k->add_option("--decorrelation", qkd.decorrelation,
                      "Std of extra arm-2 phase, radians");
        k->add_option("--threshold", qkd.threshold, "Comparator erasure threshold");
        k->add_option("--alice", qkd.alice, "Alice analyzer angles, degrees, comma-separated");
        k->add_option("--bob", qkd.bob, "Bob analyzer angles, degrees, comma-separated");
        k->add_flag("--no-rounds", qkd.no_rounds, "Omit per-round records from qkd.json");

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return 1;
        }

        if (t->parsed()) return run_trace(trace);
        if (s->parsed()) return run_scan(scan);
        if (b->parsed()) return run_bell(bell);
        if (q->parsed()) return run_quantum(quantum);
        if (k->parsed()) return run_qkd(qkd);
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
