#ifndef QCLOCK_APP_CONFIG_HPP
#define QCLOCK_APP_CONFIG_HPP

#include "qclock/types.hpp"

#include <json.hpp>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qclock::app {

/// Raised for anything the user can fix on the command line; maps to exit 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct Sweep {
    std::string variable;
    double min = 0;
    double max = 0;
    int count = 0;

    std::vector<double> values() const;
};

struct RunConfig {
    double hbar = 1;
    double omega = 1;
    std::optional<Spin> spin;
    std::optional<int> quad_order;
    std::optional<Sweep> sweep;
    std::optional<std::complex<double>> xi;
    std::optional<std::complex<double>> xi_prime;
    std::optional<double> theta;
    std::optional<std::string> chart;
    std::vector<int> m_list;
    int pairs = 0;
    double phi_prime = 0;
    Format format = Format::csv;
    std::string out;
    std::uint64_t seed = 20240601;
    int threads = 1;
    bool timing = false;

    Spin spin_or(Spin fallback) const { return spin ? *spin : fallback; }

    /// Effective configuration as echoed into output metadata.
    nlohmann::ordered_json echo() const;
};

Sweep parse_sweep(const std::string& text);
std::complex<double> parse_complex(const std::string& text);
Spin parse_spin(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
Format parse_format(const std::string& text);

/// Applies the keys of a JSON config object (same names as the long flags,
/// with '-' or '_') on top of cfg.
void apply_config_file(RunConfig& cfg, const nlohmann::json& file);

void validate(const RunConfig& cfg);

} // namespace qclock::app

#endif // QCLOCK_APP_CONFIG_HPP
