#include "app/commands.hpp"

#include "qclock/qclock.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qclock::app {

using cd = std::complex<double>;
using std::numbers::pi;

namespace {

void require_variable(const Sweep& sweep, std::initializer_list<const char*> allowed, const char* command)
{
    std::string list;
    for (const char* a : allowed) {
        if (sweep.variable == a) return;
        list += list.empty() ? a : std::string(", ") + a;
    }
    throw UsageError(std::string(command) + ": --sweep variable must be one of " + list + ", got '" + sweep.variable + "'");
}

Spin spin_at_least_half(const RunConfig& cfg, Spin fallback, const char* command)
{
    const Spin j = cfg.spin_or(fallback);
    if (j.twice() < 1) throw UsageError(std::string(command) + ": needs j >= 1/2");
    return j;
}

} // namespace

Table cmd_overlap(const RunConfig& cfg)
{
    const Spin j = cfg.spin_or(Spin::from_twice(2));
    const cd xi = cfg.xi.value_or(cd(0));
    std::vector<std::pair<cd, cd>> pairs;

    if (cfg.pairs > 0) {
        if (cfg.sweep) throw UsageError("overlap: --pairs and --sweep are exclusive");
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int k = 0; k < cfg.pairs; ++k) {
            const cd a(g(rng), g(rng));
            const cd b(g(rng), g(rng));
            pairs.emplace_back(a, b);
        }
    } else if (cfg.sweep) {
        require_variable(*cfg.sweep, {"xi_re", "theta", "phi"}, "overlap");
        const cd base = cfg.xi_prime.value_or(xi);
        for (double x : cfg.sweep->values()) {
            cd prime;
            if (cfg.sweep->variable == "xi_re") prime = cd(x, base.imag());
            else if (cfg.sweep->variable == "phi") prime = std::polar(std::abs(base), x);
            else {
                if (!(std::abs(x) < pi / 2))
                    throw UsageError("overlap: theta sweep reaches the chart pole |Theta'| = pi/2 (xi' = tan Theta')");
                prime = cd(std::tan(x));
            }
            pairs.emplace_back(xi, prime);
        }
    } else {
        pairs.emplace_back(xi, cfg.xi_prime.value_or(xi));
    }

    std::vector<cd> values(pairs.size());
    parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
        values[i] = overlap(ReducedLabel<double>{pairs[i].first, j}, ReducedLabel<double>{pairs[i].second, j});
    });

    Table t;
    t.columns = {"xi_re", "xi_im", "xi_prime_re", "xi_prime_im", "overlap_re", "overlap_im", "overlap_abs"};
    for (std::size_t i = 0; i < pairs.size(); ++i)
        t.add_row({pairs[i].first.real(), pairs[i].first.imag(), pairs[i].second.real(), pairs[i].second.imag(),
                   values[i].real(), values[i].imag(), std::abs(values[i])});
    t.metadata = base_metadata("overlap", cfg);
    t.metadata["overlap_convention"] = "<xi|xi'>";
    return t;
}

namespace {

struct FigureSection {
    std::string chart;
    std::string label;
    double theta;
};

double distance_to_pole(const std::string& chart, double theta)
{
    return chart == "xi" ? pi / 2 - std::abs(theta) : pi / 2 - std::abs(pi / 2 - theta);
}

Table figure_one(const RunConfig& cfg)
{
    const Spin j = spin_at_least_half(cfg, Spin::from_twice(20), "figure 1");
    if (cfg.sweep) require_variable(*cfg.sweep, {"theta"}, "figure 1");

    std::vector<FigureSection> sections;
    if (cfg.theta || cfg.chart) {
        const std::string chart = cfg.chart.value_or("xi");
        const double theta = cfg.theta.value_or(chart == "xi" ? pi / 4 : pi / 2);
        sections.push_back({chart, chart == "xi" ? "tan_theta_eq_abs_xi" : "antipodal_chart", theta});
    } else {
        sections.push_back({"xi", "default_theta_pi_over_4", pi / 4});
        sections.push_back({"antipodal", "literal_theta_pi_over_2", pi / 2});
    }

    const double sigma = std::sqrt(1.0 / j.twice());
    Table t;
    t.columns = {"section", "chart", "theta_ref", "theta_prime", "overlap", "fitted_gaussian", "sigma2_fit", "sigma2_pred"};
    t.metadata = base_metadata("figure", cfg);
    t.metadata["figure"] = 1;
    auto summary = nlohmann::ordered_json::array();
    for (const auto& s : sections) {
        if (!(distance_to_pole(s.chart, s.theta) > 0)) {
            if (s.chart == "xi")
                throw UsageError("figure 1: Theta = " + format_number(s.theta) +
                                 " is the pole of the xi chart (tan Theta = |xi|); rerun with --chart antipodal");
            throw UsageError("figure 1: Theta = " + format_number(s.theta) +
                             " is the pole of the antipodal chart; rerun with --chart xi");
        }
        const std::vector<double> sweep =
            cfg.sweep ? cfg.sweep->values()
                      : centered_sweep(s.theta, std::min(4 * sigma, 0.98 * distance_to_pole(s.chart, s.theta)), 201);
        const auto trace = [&] {
            try {
                return s.chart == "xi" ? amplitude_correlation<double>(s.theta, j, sweep)
                                       : amplitude_correlation_antipodal<double>(s.theta, j, sweep);
            } catch (const ChartSingularity& e) {
                throw UsageError(std::string("figure 1: ") + e.what() + "; narrow the sweep or switch --chart");
            }
        }();
        for (std::size_t i = 0; i < trace.sweep.size(); ++i)
            t.add_row({s.label, s.chart, s.theta, trace.sweep[i], trace.overlaps[i], trace.fitted_gaussian(trace.sweep[i]),
                       trace.sigma2_fit, trace.sigma2_pred});
        summary.push_back({{"section", s.label},
                           {"chart", s.chart},
                           {"theta_ref", s.theta},
                           {"sigma2_fit", trace.sigma2_fit},
                           {"sigma2_pred", trace.sigma2_pred},
                           {"fit_over_pred", trace.sigma2_fit / trace.sigma2_pred},
                           {"peak_at", trace.sweep[trace.argmax()]}});
    }
    t.metadata["sections"] = summary;
    t.metadata["fit_window"] = "|overlap| > exp(-1/2)";
    return t;
}

Table figure_two(const RunConfig& cfg)
{
    const Spin j = spin_at_least_half(cfg, Spin::from_twice(20), "figure 2");
    if (cfg.sweep) require_variable(*cfg.sweep, {"dphi"}, "figure 2");
    const double mag = std::abs(cfg.xi.value_or(cd(1)));
    if (!(mag > 0)) throw UsageError("figure 2: |xi| = 0 carries no phase information; pass --xi with |xi| > 0");
    const auto [e1, e2] = oscillator_quanta(mag, j);
    const double sigma = std::sqrt(j.twice() / (e1 * e2));
    const std::vector<double> sweep = cfg.sweep ? cfg.sweep->values() : centered_sweep(0.0, std::min(4 * sigma, pi), 201);
    const auto trace = phase_correlation<double>(mag, j, sweep);

    Table t;
    t.columns = {"dphi", "overlap", "fitted_gaussian", "sigma2_fit", "sigma2_pred"};
    for (std::size_t i = 0; i < trace.sweep.size(); ++i)
        t.add_row({trace.sweep[i], trace.overlaps[i], trace.fitted_gaussian(trace.sweep[i]), trace.sigma2_fit,
                   trace.sigma2_pred});
    t.metadata = base_metadata("figure", cfg);
    t.metadata["figure"] = 2;
    t.metadata["xi_abs"] = mag;
    t.metadata["E1_quanta"] = e1;
    t.metadata["E2_quanta"] = e2;
    t.metadata["sigma2_fit"] = trace.sigma2_fit;
    t.metadata["sigma2_pred"] = trace.sigma2_pred;
    t.metadata["fit_over_pred"] = trace.sigma2_fit / trace.sigma2_pred;
    t.metadata["fit_window"] = "|overlap| > exp(-1/2)";
    return t;
}

} // namespace

Table cmd_figure(int which, const RunConfig& cfg)
{
    if (which == 1) return figure_one(cfg);
    if (which == 2) return figure_two(cfg);
    throw UsageError("figure: expected 1 or 2");
}

Table cmd_clock_trace(const RunConfig& cfg)
{
    const cd xi = cfg.xi.value_or(cd(1));
    const double period = 2 * pi / cfg.omega;

    if (!cfg.m_list.empty()) {
        if (cfg.spin) throw UsageError("clock-trace: --m-list replaces --j / --m-prime");
        std::vector<double> taus(64);
        for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = period * double(i) / double(taus.size());
        const auto report = classical_limit_check<double>(xi, cfg.m_list, taus, cfg.phi_prime, cfg.omega, cfg.hbar);
        Table t;
        t.columns = {"m",         "quantum_amplitude", "classical_amplitude", "ratio", "limiting_ratio",
                     "deviation", "fitted_phase",      "expected_phase",      "fit_residual"};
        for (const auto& e : report.entries)
            t.add_row({static_cast<long long>(e.m), e.quantum_amplitude, e.classical_amplitude, e.ratio,
                       report.limiting_ratio, e.deviation, e.fitted_phase, e.expected_phase, e.fit_residual});
        t.metadata = base_metadata("clock-trace", cfg);
        t.metadata["mode"] = "classical_limit";
        auto successive = nlohmann::ordered_json::array();
        for (std::size_t i = 1; i < report.entries.size(); ++i)
            successive.push_back(report.entries[i - 1].deviation / report.entries[i].deviation);
        t.metadata["deviation_ratios"] = successive;
        return t;
    }

    const int m = cfg.spin_or(Spin::from_m_prime(100)).m_prime();
    if (cfg.sweep) require_variable(*cfg.sweep, {"tau"}, "clock-trace");
    std::vector<double> taus;
    if (cfg.sweep) taus = cfg.sweep->values();
    else
        for (int i = 0; i <= 200; ++i) taus.push_back(period * i / 200.0);

    const auto classical = config_from_reduced(xi, cfg.hbar * cfg.omega * (m + 1), cfg.omega, cfg.phi_prime);
    const auto radial = RadialGrid<double>::for_sector(m);
    const auto q1 = q1_symbol<double>();
    std::vector<std::array<double, 3>> rows(taus.size());
    parallel_for(taus.size(), cfg.threads, [&](std::size_t i) {
        rows[i] = {clock_symbol_q1(xi, m, taus[i], cfg.phi_prime, cfg.omega),
                   deparameterize(q1, xi, radial, taus[i], cfg.phi_prime, cfg.omega), trajectory(classical, taus[i]).q1};
    });

    Table t;
    t.columns = {"tau", "q1_closed_form", "q1_quadrature", "q1_classical", "ratio"};
    double best = -1, factor = std::nan("");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const auto& [closed, quad, cl] = rows[i];
        const double ratio = std::abs(cl) > 1e-3 * classical.A ? closed / cl : std::nan("");
        t.add_row({taus[i], closed, quad, cl, ratio});
        if (std::abs(closed) > best && closed != 0) {
            best = std::abs(closed);
            factor = quad / closed;
        }
    }
    t.metadata = base_metadata("clock-trace", cfg);
    t.metadata["mode"] = "trace";
    t.metadata["m"] = m;
    t.metadata["classical_amplitude"] = classical.A;
    t.metadata["quantum_amplitude"] = clock_amplitude_q1(xi, m);
    t.metadata["limiting_ratio"] = 2 * std::sqrt(cfg.omega / cfg.hbar);
    if (std::isfinite(factor)) t.metadata["quadrature_over_closed_form"] = factor;
    else t.metadata["quadrature_over_closed_form"] = nullptr;
    t.metadata["ratio_note"] = "ratio is nan where |q1_classical| < 1e-3 A";
    return t;
}

Table cmd_symbols(const RunConfig& cfg)
{
    const Spin j = cfg.spin_or(Spin::from_twice(10));
    const int minimum = j.twice() + 2;
    if (cfg.quad_order && *cfg.quad_order < minimum)
        throw UsageError("symbols: --quad-order " + std::to_string(*cfg.quad_order) + " is below the minimum " +
                         std::to_string(minimum) + " for j = " + format_number(j.value()));
    const auto grid = cfg.quad_order ? SphereGrid<double>::from_order(*cfg.quad_order) : SphereGrid<double>::for_spin(j);

    std::vector<cd> points;
    const cd base = cfg.xi.value_or(cd(0));
    if (cfg.sweep) {
        require_variable(*cfg.sweep, {"polar", "phi", "xi_re"}, "symbols");
        const double azimuth = std::arg(base);
        for (double x : cfg.sweep->values()) {
            if (cfg.sweep->variable == "xi_re") points.emplace_back(x, base.imag());
            else if (cfg.sweep->variable == "phi") points.push_back(std::polar(std::abs(base), x));
            else {
                if (!(x >= 0 && x < pi)) throw UsageError("symbols: polar sweep must stay in [0, pi)");
                points.push_back(std::polar(std::tan(x / 2), azimuth));
            }
        }
    } else {
        points.push_back(base);
    }

    const auto ops = spin_operators(j.m_prime());
    const auto q2 = project_lower_symbol(q2_symbol<double>(), j.m_prime());
    const auto radius = project_lower_symbol(radius_symbol<double>(), j.m_prime());
    const auto lower = s3_lower_symbol<double>(j);
    std::vector<std::array<double, 10>> rows(points.size());
    parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
        const ReducedLabel<double> label{points[i], j};
        const auto s = spin_symbols_closed_form(label);
        rows[i] = {s.s1,
                   s.s2,
                   s.s3,
                   upper_symbol(ops.S1, label).real(),
                   upper_symbol(ops.S2, label).real(),
                   upper_symbol(ops.S3, label).real(),
                   s.radius2(),
                   lower(points[i]),
                   q2(points[i]),
                   radius(points[i])};
    });

    Table t;
    t.columns = {"xi_re",    "xi_im",    "s1",      "s2",           "s3",          "s1_matrix",
                 "s2_matrix", "s3_matrix", "radius2", "s3_lower", "q2_projected", "r_projected"};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& r = rows[i];
        t.add_row({points[i].real(), points[i].imag(), r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8], r[9]});
    }

    const auto from_lower = reconstruct_operator(lower, j, grid);
    const auto from_upper = reconstruct_operator(polar_lower_symbol<double>(-j.value()), j, grid);
    t.metadata = base_metadata("symbols", cfg);
    t.metadata["legendre_order"] = grid.legendre_order();
    t.metadata["azimuth_count"] = grid.azimuth_count();
    t.metadata["reconstruct_s3_from_lower_max_dev"] = max_abs_entry<double>(from_lower.entries - ops.S3.entries);
    t.metadata["reconstruct_s3_from_upper_max_dev"] = max_abs_entry<double>(from_upper.entries - ops.S3.entries);
    t.metadata["s2_sign"] = "s2 = -2j Im(xi) / (1 + |xi|^2) for S2 = (a^dag b - a b^dag) / (2i)";
    return t;
}

} // namespace qclock::app
