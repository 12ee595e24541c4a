#include "app/config.hpp"

#include "app/output.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qclock::app {

namespace {

double parse_double(const std::string& text, const char* what)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(std::string("cannot parse ") + what + " from '" + text + "'");
    }
    if (used != text.size()) throw UsageError(std::string("trailing characters in ") + what + " '" + text + "'");
    if (!std::isfinite(v)) throw UsageError(std::string(what) + " must be finite");
    return v;
}

int parse_int(const std::string& text, const char* what)
{
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw UsageError(std::string("cannot parse ") + what + " from '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

} // namespace

std::vector<double> Sweep::values() const
{
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) xs[k] = k + 1 == count ? max : min + (max - min) * k / (count - 1);
    return xs;
}

Sweep parse_sweep(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 4 || parts[0].empty()) throw UsageError("--sweep expects VAR:MIN:MAX:COUNT, got '" + text + "'");
    Sweep s{parts[0], parse_double(parts[1], "sweep minimum"), parse_double(parts[2], "sweep maximum"),
            parse_int(parts[3], "sweep count")};
    if (s.count < 2) throw UsageError("--sweep count must be at least 2");
    if (s.min == s.max) throw UsageError("--sweep has zero width (min = max)");
    if (s.min > s.max) throw UsageError("--sweep minimum exceeds maximum");
    return s;
}

std::complex<double> parse_complex(const std::string& text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw UsageError("expected RE,IM, got '" + text + "'");
    return {parse_double(parts[0], "real part"), parse_double(parts[1], "imaginary part")};
}

Spin parse_spin(const std::string& text)
{
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            const int num = parse_int(text.substr(0, slash), "spin numerator");
            const int den = parse_int(text.substr(slash + 1), "spin denominator");
            if (den == 1) return Spin::from_twice(2 * num);
            if (den == 2) return Spin::from_twice(num);
            throw UsageError("spin must be a multiple of 1/2, got '" + text + "'");
        }
        return Spin::from_value(parse_double(text, "spin"));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_int(part, "list entry"));
    if (out.empty()) throw UsageError("empty list");
    return out;
}

Format parse_format(const std::string& text)
{
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw UsageError("--format must be csv or json, got '" + text + "'");
}

namespace {

const nlohmann::json* find_key(const nlohmann::json& obj, const std::string& name)
{
    for (const std::string& key : {name, [&] {
             std::string k = name;
             for (auto& c : k)
                 if (c == '-') c = '_';
             return k;
         }()}) {
        const auto it = obj.find(key);
        if (it != obj.end()) return &*it;
    }
    return nullptr;
}

std::string as_text(const nlohmann::json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    throw UsageError("config file value has an unsupported type: " + v.dump());
}

} // namespace

void apply_config_file(RunConfig& cfg, const nlohmann::json& file)
{
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    static const char* known[] = {"hbar",  "omega", "j",     "m-prime", "quad-order", "sweep", "xi",      "xi-prime",
                                  "theta", "chart", "m-list", "pairs",  "phi-prime",  "format", "out",    "seed",
                                  "threads", "timing"};
    for (auto it = file.begin(); it != file.end(); ++it) {
        std::string k = it.key();
        for (auto& c : k)
            if (c == '_') c = '-';
        bool ok = false;
        for (const char* name : known) ok = ok || k == name;
        if (!ok) throw UsageError("unknown key in config file: " + it.key());
    }
    if (find_key(file, "j") && find_key(file, "m-prime")) throw UsageError("config file sets both j and m-prime");
    try {
        if (const auto* v = find_key(file, "hbar")) cfg.hbar = v->get<double>();
        if (const auto* v = find_key(file, "omega")) cfg.omega = v->get<double>();
        if (const auto* v = find_key(file, "j")) cfg.spin = parse_spin(as_text(*v));
        if (const auto* v = find_key(file, "m-prime")) cfg.spin = Spin::from_m_prime(v->get<int>());
        if (const auto* v = find_key(file, "quad-order")) cfg.quad_order = v->get<int>();
        if (const auto* v = find_key(file, "sweep")) cfg.sweep = parse_sweep(v->get<std::string>());
        if (const auto* v = find_key(file, "xi"))
            cfg.xi = v->is_array() ? std::complex<double>(v->at(0).get<double>(), v->at(1).get<double>())
                                   : parse_complex(v->get<std::string>());
        if (const auto* v = find_key(file, "xi-prime"))
            cfg.xi_prime = v->is_array() ? std::complex<double>(v->at(0).get<double>(), v->at(1).get<double>())
                                         : parse_complex(v->get<std::string>());
        if (const auto* v = find_key(file, "theta")) cfg.theta = v->get<double>();
        if (const auto* v = find_key(file, "chart")) cfg.chart = v->get<std::string>();
        if (const auto* v = find_key(file, "m-list"))
            cfg.m_list = v->is_array() ? v->get<std::vector<int>>() : parse_int_list(v->get<std::string>());
        if (const auto* v = find_key(file, "pairs")) cfg.pairs = v->get<int>();
        if (const auto* v = find_key(file, "phi-prime")) cfg.phi_prime = v->get<double>();
        if (const auto* v = find_key(file, "format")) cfg.format = parse_format(v->get<std::string>());
        if (const auto* v = find_key(file, "out")) cfg.out = v->get<std::string>();
        if (const auto* v = find_key(file, "seed")) cfg.seed = v->get<std::uint64_t>();
        if (const auto* v = find_key(file, "threads")) cfg.threads = v->get<int>();
        if (const auto* v = find_key(file, "timing")) cfg.timing = v->get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad value in config file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void validate(const RunConfig& cfg)
{
    if (!(cfg.hbar > 0) || !std::isfinite(cfg.hbar)) throw UsageError("--hbar must be positive");
    if (!(cfg.omega > 0) || !std::isfinite(cfg.omega)) throw UsageError("--omega must be positive");
    if (cfg.quad_order && *cfg.quad_order < 1) throw UsageError("--quad-order must be at least 1");
    if (cfg.pairs < 0) throw UsageError("--pairs must be non-negative");
    if (cfg.threads < 0) throw UsageError("--threads must be non-negative");
    if (!std::isfinite(cfg.phi_prime)) throw UsageError("--phi-prime must be finite");
    if (cfg.chart && *cfg.chart != "xi" && *cfg.chart != "antipodal")
        throw UsageError("--chart must be xi or antipodal");
    for (std::size_t i = 0; i < cfg.m_list.size(); ++i) {
        if (cfg.m_list[i] < 0) throw UsageError("--m-list entries must be non-negative");
        if (i > 0 && cfg.m_list[i] <= cfg.m_list[i - 1]) throw UsageError("--m-list must increase");
    }
}

nlohmann::ordered_json RunConfig::echo() const
{
    nlohmann::ordered_json j;
    j["hbar"] = hbar;
    j["omega"] = omega;
    if (spin) {
        j["j"] = spin->value();
        j["m_prime"] = spin->m_prime();
    }
    if (quad_order) j["quad_order"] = *quad_order;
    if (sweep) j["sweep"] = {{"variable", sweep->variable}, {"min", sweep->min}, {"max", sweep->max}, {"count", sweep->count}};
    if (xi) j["xi"] = {xi->real(), xi->imag()};
    if (xi_prime) j["xi_prime"] = {xi_prime->real(), xi_prime->imag()};
    if (theta) j["theta"] = *theta;
    if (chart) j["chart"] = *chart;
    if (!m_list.empty()) j["m_list"] = m_list;
    if (pairs) j["pairs"] = pairs;
    j["phi_prime"] = phi_prime;
    j["format"] = format == Format::csv ? "csv" : "json";
    j["seed"] = seed;
    return j;
}

} // namespace qclock::app
