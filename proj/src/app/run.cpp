#include "app/run.hpp"

#include "app/commands.hpp"
#include "qclock/qclock.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

namespace qclock::app {

namespace {

struct RawFlags {
    std::optional<std::string> config, j, m_prime, omega, hbar, quad_order, sweep, xi, xi_prime, theta, chart, m_list,
        pairs, phi_prime, format, out, seed, threads;
    bool timing = false;
};

void add_common_flags(CLI::App* cmd, RawFlags& f)
{
    cmd->add_option("--config", f.config, "JSON file with flag values; flags given here take precedence");
    cmd->add_option("--j", f.j, "spin j (integer, half-integer or N/2)");
    cmd->add_option("--m-prime", f.m_prime, "number sector m' = 2j");
    cmd->add_option("--omega", f.omega, "oscillator frequency (default 1)");
    cmd->add_option("--hbar", f.hbar, "Planck constant (default 1)");
    cmd->add_option("--quad-order", f.quad_order, "Gauss-Legendre order of the sphere grid");
    cmd->add_option("--sweep", f.sweep, "VAR:MIN:MAX:COUNT");
    cmd->add_option("--xi", f.xi, "reduced coordinate RE,IM");
    cmd->add_option("--phi-prime", f.phi_prime, "clock phase phi'");
    cmd->add_option("--format", f.format, "csv or json");
    cmd->add_option("--out", f.out, "output path (default stdout)");
    cmd->add_option("--seed", f.seed, "random seed for sampled checks");
    cmd->add_option("--threads", f.threads, "worker threads (0 = all cores, default 1)");
    cmd->add_flag("--timing", f.timing, "add wall-clock seconds to JSON metadata");
}

double to_double(const std::string& s, const char* flag)
{
    std::size_t used = 0;
    try {
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(flag) + " expects a number, got '" + s + "'");
}

long long to_integer(const std::string& s, const char* flag)
{
    std::size_t used = 0;
    try {
        const long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(flag) + " expects an integer, got '" + s + "'");
}

RunConfig build_config(const RawFlags& f)
{
    RunConfig cfg;
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in) throw UsageError("cannot open config file " + *f.config);
        nlohmann::json file;
        try {
            in >> file;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config file " + *f.config + " is not valid JSON: " + e.what());
        }
        apply_config_file(cfg, file);
    }
    if (f.j && f.m_prime) throw UsageError("give exactly one of --j and --m-prime");
    if (f.j) cfg.spin = parse_spin(*f.j);
    if (f.m_prime) {
        const long long m = to_integer(*f.m_prime, "--m-prime");
        if (m < 0 || m > 100000) throw UsageError("--m-prime must be in [0, 100000]");
        cfg.spin = Spin::from_m_prime(int(m));
    }
    if (f.omega) cfg.omega = to_double(*f.omega, "--omega");
    if (f.hbar) cfg.hbar = to_double(*f.hbar, "--hbar");
    if (f.quad_order) cfg.quad_order = int(to_integer(*f.quad_order, "--quad-order"));
    if (f.sweep) cfg.sweep = parse_sweep(*f.sweep);
    if (f.xi) cfg.xi = parse_complex(*f.xi);
    if (f.xi_prime) cfg.xi_prime = parse_complex(*f.xi_prime);
    if (f.theta) cfg.theta = to_double(*f.theta, "--theta");
    if (f.chart) cfg.chart = *f.chart;
    if (f.m_list) cfg.m_list = parse_int_list(*f.m_list);
    if (f.pairs) cfg.pairs = int(to_integer(*f.pairs, "--pairs"));
    if (f.phi_prime) cfg.phi_prime = to_double(*f.phi_prime, "--phi-prime");
    if (f.format) cfg.format = parse_format(*f.format);
    if (f.out) cfg.out = *f.out;
    if (f.seed) {
        const long long s = to_integer(*f.seed, "--seed");
        if (s < 0) throw UsageError("--seed must be non-negative");
        cfg.seed = std::uint64_t(s);
    }
    if (f.threads) cfg.threads = int(to_integer(*f.threads, "--threads"));
    if (f.timing) cfg.timing = true;
    validate(cfg);
    return cfg;
}

void emit(Table& table, const RunConfig& cfg, std::ostream& out, double seconds)
{
    if (cfg.timing) table.metadata["timing"] = {{"seconds", seconds}};
    std::ostringstream buffer;
    write_table(buffer, table, cfg.format);
    if (cfg.out.empty() || cfg.out == "-") {
        out << buffer.str();
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + cfg.out);
    file << buffer.str();
    if (!file) throw UsageError("failed writing output file " + cfg.out);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app("Two-oscillator quantum clock: SU(2) coherent states, symbols and clock correlations", "qclock");
    app.require_subcommand(1);
    app.set_version_flag("--version", qclock::version);

    RawFlags flags;
    int which = 0;

    auto* overlap_cmd = app.add_subcommand("overlap", "coherent-state overlaps <xi|xi'>");
    add_common_flags(overlap_cmd, flags);
    overlap_cmd->add_option("--xi-prime", flags.xi_prime, "second label RE,IM (default: --xi)");
    overlap_cmd->add_option("--pairs", flags.pairs, "emit N random (xi, xi') pairs drawn from --seed");

    auto* figure_cmd = app.add_subcommand("figure", "correlation traces for Figure 1 (amplitude) or 2 (phase)");
    add_common_flags(figure_cmd, flags);
    figure_cmd->add_option("which", which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    figure_cmd->add_option("--theta", flags.theta, "Figure 1 reference angle Theta (tan Theta = |xi|)");
    figure_cmd->add_option("--chart", flags.chart, "xi or antipodal (Figure 1)");

    auto* clock_cmd = app.add_subcommand("clock-trace", "clock symbol of q1 against the classical motion");
    add_common_flags(clock_cmd, flags);
    clock_cmd->add_option("--m-list", flags.m_list, "comma-separated sectors for the classical-limit table");

    auto* symbols_cmd = app.add_subcommand("symbols", "upper and lower symbols of the spin generators");
    add_common_flags(symbols_cmd, flags);

    auto* verify_cmd = app.add_subcommand("verify", "property suite; exit 2 when any check fails");
    add_common_flags(verify_cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return success;
    } catch (const CLI::CallForVersion&) {
        out << qclock::version << '\n';
        return success;
    } catch (const CLI::ParseError& e) {
        err << "qclock: " << e.what() << "\nRun with --help for usage.\n";
        return usage_error;
    }

    try {
        const RunConfig cfg = build_config(flags);
        const auto start = std::chrono::steady_clock::now();
        const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

        if (verify_cmd->parsed()) {
            auto report = cmd_verify(cfg);
            emit(report.table, cfg, out, elapsed());
            if (!report.all_pass) {
                err << "qclock verify: one or more checks failed\n";
                return verification_failure;
            }
            return success;
        }
        Table table;
        if (overlap_cmd->parsed()) table = cmd_overlap(cfg);
        else if (figure_cmd->parsed()) table = cmd_figure(which, cfg);
        else if (clock_cmd->parsed()) table = cmd_clock_trace(cfg);
        else table = cmd_symbols(cfg);
        emit(table, cfg, out, elapsed());
        return success;
    } catch (const UsageError& e) {
        err << "qclock: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        // Library contract violations (chart poles, invalid spins) trace back to the inputs.
        err << "qclock: " << e.what() << '\n';
        return usage_error;
    }
}

} // namespace qclock::app
