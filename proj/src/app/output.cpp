#include "app/output.hpp"

#include "qclock/qclock.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qclock::app {

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) throw std::logic_error("table row width does not match the header");
    rows.push_back(std::move(row));
}

nlohmann::ordered_json base_metadata(const char* command, const RunConfig& cfg)
{
    nlohmann::ordered_json meta;
    meta["program"] = "qclock";
    meta["version"] = qclock::version;
    meta["command"] = command;
    meta["config"] = cfg.echo();
    return meta;
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0) v = 0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_cell(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

nlohmann::ordered_json json_cell(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d == 0 ? 0.0 : *d;
    }
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
}

} // namespace

void write_csv(std::ostream& out, const Table& table)
{
    for (std::size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << table.columns[k];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table)
{
    nlohmann::ordered_json doc;
    doc["metadata"] = table.metadata;
    auto& cols = doc["columns"] = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) arr.push_back(json_cell(row[k]));
        cols[table.columns[k]] = std::move(arr);
    }
    out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, Format format)
{
    if (format == Format::csv) write_csv(out, table);
    else write_json(out, table);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body)
{
    std::size_t workers = threads > 0 ? std::size_t(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace qclock::app
