#ifndef QCLOCK_APP_OUTPUT_HPP
#define QCLOCK_APP_OUTPUT_HPP

#include "app/config.hpp"

#include <json.hpp>

#include <functional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qclock::app {

using Cell = std::variant<double, long long, std::string>;

/// Column-named rows plus a metadata object. CSV writes the header and the
/// rows; JSON writes {"metadata": ..., "columns": {name: [...]}}.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    void add_row(std::vector<Cell> row);
};

/// Program, version, command and the effective config.
nlohmann::ordered_json base_metadata(const char* command, const RunConfig& cfg);

/// Round-trip formatting: 17 significant digits, "nan"/"inf" spelled out.
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, Format format);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Callers write into slot i, so results assemble in index
/// order whatever the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

} // namespace qclock::app

#endif // QCLOCK_APP_OUTPUT_HPP
