#include "prodfn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "prodfn/dist.hpp"
#include "prodfn/errors.hpp"

namespace prodfn {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

void PipelineConfig::validate() const {
    if (models.empty()) {
        throw ConfigError("config selects no model specifications");
    }
    for (const auto& m : models) m.validate();
    const bool alpha_ok = std::fabs(alpha - 0.01) < 1e-12 || std::fabs(alpha - 0.05) < 1e-12 ||
                          std::fabs(alpha - 0.10) < 1e-12;
    if (!alpha_ok) {
        throw ConfigError("significance level must be one of 0.01, 0.05, 0.10");
    }
    if (input_csv.empty() && !replication) {
        throw ConfigError("config names neither an input CSV nor replication parameters");
    }
    if (!(pi_delta >= 0.0 && pi_delta < 1.0)) {
        throw ConfigError("perpetual-inventory delta must lie in [0,1)");
    }
    if (bg_lags < 1) {
        throw ConfigError("bg_lags must be >= 1");
    }
    if (replication) replication->validate();
}

namespace {

ModelSpec model_spec_from_json(const json& j) {
    ModelSpec spec;
    spec.form = functional_form_from_string(j.at("form").get<std::string>());
    spec.include_war_dummy = j.value("war_dummy", false);
    spec.ar_error_order = j.value("ar1", true) ? 1 : 0;
    spec.war_first_year = j.value("war_first_year", 1980);
    spec.war_last_year = j.value("war_last_year", 1988);
    return spec;
}

json model_spec_to_json(const ModelSpec& spec) {
    return json{{"form", to_string(spec.form)},
                {"war_dummy", spec.include_war_dummy},
                {"ar1", spec.ar_error_order == 1},
                {"war_first_year", spec.war_first_year},
                {"war_last_year", spec.war_last_year}};
}

ReplicationParams replication_from_json(const json& j) {
    ReplicationParams p;
    p.coef_lnK = j.value("coef_lnK", p.coef_lnK);
    p.coef_lnL = j.value("coef_lnL", p.coef_lnL);
    p.coef_T = j.value("coef_T", p.coef_T);
    p.rho = j.value("rho", p.rho);
    p.intercept = j.value("intercept", p.intercept);
    p.innovation_sd = j.value("innovation_sd", p.innovation_sd);
    p.n = j.value("n", p.n);
    p.start_year = j.value("start_year", p.start_year);
    p.growth_K = j.value("growth_K", p.growth_K);
    p.growth_L = j.value("growth_L", p.growth_L);
    p.input_sd_K = j.value("input_sd_K", p.input_sd_K);
    p.input_sd_L = j.value("input_sd_L", p.input_sd_L);
    p.lnK0 = j.value("lnK0", p.lnK0);
    p.lnL0 = j.value("lnL0", p.lnL0);
    return p;
}

}  // namespace

PipelineConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig cfg;
    try {
        cfg.input_csv = j.value("input_csv", std::string{});
        if (j.contains("replication") && !j["replication"].is_null()) {
            cfg.replication = replication_from_json(j["replication"]);
        }
        cfg.seed = j.value("seed", cfg.seed);
        cfg.labour_gap_years = j.value("labour_gap_years", std::vector<int>{});
        cfg.pi_delta = j.value("perpetual_inventory_delta", cfg.pi_delta);
        if (j.contains("unit_root")) {
            const json& u = j["unit_root"];
            cfg.unit_root.deterministics = deterministics_from_string(
                u.value("deterministics", std::string("constant_and_trend")));
            if (u.contains("lags") && !u["lags"].is_null()) {
                cfg.unit_root.fixed_lags = u["lags"].get<int>();
            }
            if (u.contains("max_lags") && !u["max_lags"].is_null()) {
                cfg.unit_root.max_lags = u["max_lags"].get<int>();
            }
            if (u.contains("bandwidth") && !u["bandwidth"].is_null()) {
                cfg.unit_root.fixed_bandwidth = u["bandwidth"].get<int>();
            }
            const std::string kind = u.value("kind", std::string("adf"));
            if (kind != "adf" && kind != "pp") {
                throw ConfigError("unit_root.kind must be 'adf' or 'pp'");
            }
            cfg.unit_root.kind = kind == "pp" ? UnitRootTestKind::pp : UnitRootTestKind::adf;
        }
        for (const auto& m : j.value("models", json::array())) {
            cfg.models.push_back(model_spec_from_json(m));
        }
        if (j.contains("scan_weights")) {
            const json& w = j["scan_weights"];
            cfg.scan_weights.economic_zone = w.value("economic_zone", 3.0);
            cfg.scan_weights.significance = w.value("significance", 1.0);
            cfg.scan_weights.diagnostics = w.value("diagnostics", 1.0);
            cfg.scan_weights.adj_r2 = w.value("adj_r2", 1.0);
        }
        cfg.alpha = j.value("alpha", cfg.alpha);
        cfg.run_diagnostics = j.value("run_diagnostics", cfg.run_diagnostics);
        cfg.run_cointegration = j.value("run_cointegration", cfg.run_cointegration);
        cfg.use_cointegration_cv = j.value("use_cointegration_cv", cfg.use_cointegration_cv);
        cfg.bg_lags = j.value("bg_lags", cfg.bg_lags);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
        if (j.contains("formats")) {
            cfg.emit_text = false;
            cfg.emit_structured = false;
            for (const auto& f : j["formats"]) {
                const auto name = f.get<std::string>();
                if (name == "text") {
                    cfg.emit_text = true;
                } else if (name == "structured") {
                    cfg.emit_structured = true;
                } else {
                    throw ConfigError("unknown output format '" + name + "'");
                }
            }
        }
        cfg.threads = j.value("threads", cfg.threads);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    out.push_back(cell);
    return out;
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& cell, std::size_t line, std::size_t col) {
    const std::string t = trimmed(cell);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') {
        throw NonNumericCell("line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": cell '" + t + "' is not a number");
    }
    return v;
}

}  // namespace

RawSeriesBundle load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open dataset file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(1, 1, "empty file");
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);  // UTF-8 BOM
    }
    auto header = split_csv_line(line);
    for (auto& h : header) h = trimmed(h);
    const std::vector<std::string> expected = {"year", "q", "l", "k", "i"};
    for (const auto& name : expected) {
        if (std::find(header.begin(), header.end(), name) == header.end()) {
            throw MissingColumn("dataset header lacks column '" + name + "'");
        }
    }
    std::vector<std::size_t> pos(expected.size());
    for (std::size_t c = 0; c < expected.size(); ++c) {
        pos[c] = static_cast<std::size_t>(
            std::find(header.begin(), header.end(), expected[c]) - header.begin());
    }

    std::vector<int> years;
    std::vector<double> qv;
    std::map<int, double> lv, kv, iv;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < header.size()) {
            throw ParseError(lineno, cells.size() + 1, "row has too few cells");
        }
        const double ydbl = parse_cell(cells[pos[0]], lineno, pos[0] + 1);
        const int year = static_cast<int>(ydbl);
        if (static_cast<double>(year) != ydbl) {
            throw ParseError(lineno, pos[0] + 1, "year must be an integer");
        }
        if (!years.empty()) {
            if (year <= years.back()) {
                throw DuplicateYear("line " + std::to_string(lineno) + ": year " +
                                    std::to_string(year) + " repeats or decreases");
            }
            if (year != years.back() + 1) {
                throw ParseError(lineno, pos[0] + 1,
                                 "years must be consecutive (missing " +
                                     std::to_string(years.back() + 1) + ")");
            }
        }
        years.push_back(year);

        if (trimmed(cells[pos[1]]).empty()) {
            throw ParseError(lineno, pos[1] + 1, "value added (q) cannot be blank");
        }
        qv.push_back(parse_cell(cells[pos[1]], lineno, pos[1] + 1));
        if (!trimmed(cells[pos[2]]).empty()) {
            lv[year] = parse_cell(cells[pos[2]], lineno, pos[2] + 1);
        }
        if (!trimmed(cells[pos[3]]).empty()) {
            kv[year] = parse_cell(cells[pos[3]], lineno, pos[3] + 1);
        }
        if (!trimmed(cells[pos[4]]).empty()) {
            iv[year] = parse_cell(cells[pos[4]], lineno, pos[4] + 1);
        }
    }
    if (years.empty()) {
        throw ParseError(lineno + 1, 1, "dataset has no data rows");
    }

    RawSeriesBundle raw;
    raw.q = AnnualSeries("Q", years.front(), std::move(qv));
    raw.labour_cells = std::move(lv);

    const int first_row_year = years.front();
    auto contiguous_series = [first_row_year](const std::map<int, double>& cells,
                                              const std::string& name,
                                              const char* what) -> std::optional<AnnualSeries> {
        if (cells.empty()) return std::nullopt;
        const int first = cells.begin()->first;
        int expected = first;
        for (const auto& [y, val] : cells) {
            if (y != expected) {
                // Report the data row of the first hole (header is line 1).
                const auto line = static_cast<std::size_t>(expected - first_row_year + 2);
                throw ParseError(line, 0, std::string(what) + " cells must form one " +
                                              "contiguous block of years (blank at " +
                                              std::to_string(expected) + ")");
            }
            ++expected;
        }
        std::vector<double> v;
        v.reserve(cells.size());
        for (const auto& [y, val] : cells) v.push_back(val);
        return AnnualSeries(name, first, std::move(v));
    };
    raw.capital = contiguous_series(kv, "K", "capital (k)");
    raw.investment = contiguous_series(iv, "I", "investment (i)");
    return raw;
}

void write_dataset_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write dataset file '" + path + "'");
    }
    out << "year,q,l,k,i\n";
    const auto& q = d.col("Q").values();
    const auto& l = d.col("L").values();
    const auto& k = d.col("K").values();
    char buf[256];
    for (std::size_t i = 0; i < d.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,\n",
                      d.start_year() + static_cast<int>(i), q[i], l[i], k[i]);
        out << buf;
    }
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

Dataset construct_dataset(const RawSeriesBundle& raw, const PipelineConfig& cfg) {
    // Labour: blank the configured gap years, then fill geometrically if the
    // remaining census cells leave holes.
    std::map<int, double> cells = raw.labour_cells;
    for (int y : cfg.labour_gap_years) cells.erase(y);
    if (cells.empty()) {
        throw InvalidParams("no labour observations remain after gap blanking");
    }
    AnnualSeries labour = [&]() {
        const int first = cells.begin()->first;
        const int last = cells.rbegin()->first;
        if (static_cast<std::size_t>(last - first + 1) == cells.size()) {
            std::vector<double> v;
            v.reserve(cells.size());
            for (const auto& [y, val] : cells) v.push_back(val);
            return AnnualSeries("L", first, std::move(v));
        }
        return geometric_interpolate(BenchmarkTable(cells), "L");
    }();

    if (!raw.capital) {
        throw InvalidParams("dataset provides no capital observations");
    }
    AnnualSeries capital = *raw.capital;
    if (raw.investment && capital.end_year() < raw.q.end_year()) {
        PerpetualInventoryConfig pi;
        pi.delta = cfg.pi_delta;
        pi.seed_year = capital.end_year();
        pi.seed_capital = capital.values().back();
        capital = extend_capital_stock(capital, *raw.investment, pi);
    }
    return assemble_dataset(raw.q, labour, capital);
}

Dataset obtain_dataset(const PipelineConfig& cfg) {
    if (cfg.replication) {
        return generate_replication_dataset(*cfg.replication, cfg.seed);
    }
    return construct_dataset(load_dataset_csv(cfg.input_csv), cfg);
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.error_class(), std::string("stage '") + name + "': " + e.what());
    }
}

UnitRootTableRow unit_root_row(const AnnualSeries& logged, const UnitRootSpec& spec) {
    UnitRootTableRow row;
    row.variable = logged.name();
    UnitRootSpec s = spec;
    const AnnualSeries diff = difference(logged, 1);
    s.kind = UnitRootTestKind::adf;
    row.adf_level = adf_test(logged, s);
    row.adf_diff = adf_test(diff, s);
    s.kind = UnitRootTestKind::pp;
    row.pp_level = pp_test(logged, s);
    row.pp_diff = pp_test(diff, s);
    try {
        row.order = integration_order(logged, spec, 2).order;
    } catch (const Inconclusive&) {
        row.order = -1;
    }
    return row;
}

}  // namespace

ReportBundle run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    ReportBundle bundle;
    bundle.alpha = cfg.alpha;
    bundle.seed = cfg.seed;

    const Dataset d = stage("prepare", [&] { return obtain_dataset(cfg); });

    stage("growth", [&] {
        for (const char* name : {"Q", "L", "K"}) {
            const AnnualSeries& s = d.col(name);
            bundle.growth.push_back({name, cagr(s), mean_annual_growth(s)});
        }
        return 0;
    });

    stage("unitroot", [&] {
        for (const char* name : {"Q", "L", "K"}) {
            bundle.unit_roots.push_back(
                unit_root_row(log_transform(d.col(name)), cfg.unit_root));
        }
        return 0;
    });

    stage("estimate", [&] {
        if (cfg.models.size() > 1) {
            ScanResult scan =
                model_selection_scan(d, cfg.models, cfg.scan_weights, cfg.alpha, cfg.threads);
            const auto best = std::find_if(scan.rows.begin(), scan.rows.end(),
                                           [](const ScanRow& r) { return r.ok; });
            if (best == scan.rows.end()) {
                throw NoConvergence("every candidate specification failed to fit");
            }
            bundle.chosen_spec = best->spec;
            bundle.fit = *best->fit;
            for (auto& row : scan.rows) row.fit.reset();  // keep the table light
            bundle.scan = std::move(scan);
        } else {
            bundle.chosen_spec = cfg.models.front();
            const DesignMatrix design = build_design(d, bundle.chosen_spec);
            bundle.fit = bundle.chosen_spec.ar_error_order == 1 ? estimate_ar1(design)
                                                                : ols(design);
        }
        bundle.design = build_design(d, bundle.chosen_spec);
        return 0;
    });

    stage("interpret", [&] {
        bundle.elasticity = elasticities(bundle.fit, bundle.chosen_spec.form, d);
        bundle.regularity = regularity_check(bundle.fit, bundle.chosen_spec.form, d);
        if (bundle.fit.has("T")) {
            bundle.tech_change = technical_change(bundle.fit, cfg.alpha);
        }
        return 0;
    });

    if (cfg.run_diagnostics) {
        stage("diagnose", [&] {
            bundle.diagnostics =
                run_diagnostics(bundle.fit, bundle.design, cfg.bg_lags, cfg.alpha);
            return 0;
        });
    }

    if (cfg.run_cointegration) {
        stage("cointegrate", [&] {
            bundle.cointegration =
                engle_granger(bundle.fit, cfg.unit_root, cfg.use_cointegration_cv);
            return 0;
        });
    }
    return bundle;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v, int prec) {
    if (std::isnan(v)) return "n/a";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string decision_str(const UnitRootResult& r) {
    return r.decision == UnitRootDecision::stationary ? "stationary" : "unit root";
}

json cv_to_json(const CriticalValues& cv) {
    return json{{"cv1", cv.cv1}, {"cv5", cv.cv5}, {"cv10", cv.cv10}};
}

json unit_root_to_json(const UnitRootResult& r) {
    json j{{"series", r.series_name},
           {"test", r.kind == UnitRootTestKind::adf ? "adf" : "pp"},
           {"deterministics", to_string(r.deterministics)},
           {"statistic", r.statistic},
           {"cv1", r.cv1},
           {"cv5", r.cv5},
           {"cv10", r.cv10},
           {"n_effective", r.n_effective},
           {"decision", decision_str(r)}};
    if (r.kind == UnitRootTestKind::adf) {
        j["lags"] = r.lags_used;
    } else {
        j["bandwidth"] = r.bandwidth_used;
    }
    if (r.reject_at) {
        j["reject_at"] = *r.reject_at;
    } else {
        j["reject_at"] = nullptr;
    }
    return j;
}

json fit_to_json(const FitResult& fit) {
    json coef = json::array();
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
        coef.push_back(json{{"name", fit.names[j]},
                            {"coefficient", fit.coefficients[j]},
                            {"std_error", fit.std_errors[j]},
                            {"t_stat", fit.t_stats[j]}});
    }
    json out{{"response", fit.response_name},
             {"coefficients", coef},
             {"exp_const", fit.has("const") ? json(std::exp(fit.coef("const"))) : json(nullptr)},
             {"r2", fit.r2},
             {"adj_r2", fit.adj_r2},
             {"f_stat", std::isfinite(fit.f_stat) ? json(fit.f_stat) : json(nullptr)},
             {"f_df1", fit.f_df1},
             {"f_df2", fit.f_df2},
             {"dw", fit.dw},
             {"sigma2", fit.sigma2},
             {"n_effective", fit.n_effective},
             {"k", fit.k}};
    if (fit.rho) {
        out["ar1"] = json{{"rho", fit.rho->rho},
                          {"std_error", fit.rho->std_error},
                          {"t_stat", fit.rho->t_stat},
                          {"iterations", fit.rho->iterations},
                          {"final_step", fit.rho->final_step}};
    } else {
        out["ar1"] = nullptr;
    }
    if (fit.r2_original) {
        out["r2_untransformed"] = *fit.r2_original;
    } else {
        out["r2_untransformed"] = nullptr;
    }
    return out;
}

json diagnostics_to_json(const DiagnosticsReport& d) {
    json acf = json::array();
    for (const auto& p : d.acf) {
        acf.push_back(json{{"lag", p.lag}, {"acf", p.acf}, {"pacf", p.pacf}, {"band", p.band}});
    }
    json corr = json::array();
    for (const auto& [name, value] : d.resid_regressor_corr) {
        corr.push_back(json{{"regressor", name}, {"correlation", value}});
    }
    json pairwise = json::array();
    for (const auto& row : d.collinearity.pairwise) pairwise.push_back(row);
    return json{
        {"breusch_godfrey",
         {{"lm", d.bg.statistic}, {"df", d.bg.df}, {"p_value", d.bg.p_value},
          {"lags", d.bg.lag_order}}},
        {"breusch_pagan_godfrey",
         {{"lm", d.bpg.statistic}, {"df", d.bpg.df}, {"p_value", d.bpg.p_value}}},
        {"jarque_bera",
         {{"statistic", d.jb.statistic},
          {"p_value", d.jb.p_value},
          {"skewness", d.jb.skewness},
          {"excess_kurtosis", d.jb.excess_kurtosis}}},
        {"mean_residual", d.mean_residual},
        {"acf", acf},
        {"residual_regressor_correlation", corr},
        {"collinearity",
         {{"names", d.collinearity.names},
          {"pairwise", pairwise},
          {"vif", d.collinearity.vif},
          {"condition_number", d.collinearity.condition_number},
          {"flag_high_r2_few_significant", d.collinearity.flag_high_r2_few_significant},
          {"flag_high_pairwise_correlation", d.collinearity.flag_high_pairwise_correlation}}}};
}

json scan_to_json(const ScanResult& scan) {
    json rows = json::array();
    for (const auto& r : scan.rows) {
        json row{{"spec", model_spec_to_json(r.spec)}, {"ok", r.ok}};
        if (r.ok) {
            row["score"] = r.score;
            row["zone_share"] = r.zone_share;
            row["significant_share"] = r.significant_share;
            row["diagnostics_passed"] = r.diagnostics_passed;
            row["adj_r2"] = r.adj_r2;
        } else {
            row["error"] = r.error;
        }
        rows.push_back(row);
    }
    return json{{"rows", rows},
                {"weights",
                 {{"economic_zone", scan.weights.economic_zone},
                  {"significance", scan.weights.significance},
                  {"diagnostics", scan.weights.diagnostics},
                  {"adj_r2", scan.weights.adj_r2}}}};
}

}  // namespace

std::string render_structured_report(const ReportBundle& bundle) {
    json growth = json::array();
    for (const auto& g : bundle.growth) {
        growth.push_back(json{{"variable", g.variable},
                              {"compound", g.compound},
                              {"arithmetic", g.arithmetic}});
    }
    json unit_roots = json::array();
    for (const auto& row : bundle.unit_roots) {
        unit_roots.push_back(json{{"variable", row.variable},
                                  {"adf_level", unit_root_to_json(row.adf_level)},
                                  {"pp_level", unit_root_to_json(row.pp_level)},
                                  {"adf_diff", unit_root_to_json(row.adf_diff)},
                                  {"pp_diff", unit_root_to_json(row.pp_diff)},
                                  {"order", row.order}});
    }
    json j{{"growth", growth},
           {"unit_roots", unit_roots},
           {"chosen_spec", model_spec_to_json(bundle.chosen_spec)},
           {"estimation", fit_to_json(bundle.fit)},
           {"alpha", bundle.alpha},
           {"seed", bundle.seed}};
    j["scan"] = bundle.scan ? scan_to_json(*bundle.scan) : json(nullptr);
    j["diagnostics"] =
        bundle.diagnostics ? diagnostics_to_json(*bundle.diagnostics) : json(nullptr);
    if (bundle.cointegration) {
        const auto& c = *bundle.cointegration;
        j["cointegration"] = json{
            {"adf", unit_root_to_json(c.adf)},
            {"pp", unit_root_to_json(c.pp)},
            {"dickey_fuller_cv_adf", cv_to_json(c.dickey_fuller_cv_adf)},
            {"cointegration_cv_adf", cv_to_json(c.cointegration_cv_adf)},
            {"dickey_fuller_cv_pp", cv_to_json(c.dickey_fuller_cv_pp)},
            {"cointegration_cv_pp", cv_to_json(c.cointegration_cv_pp)},
            {"n_vars", c.n_vars},
            {"trend_in_regression", c.trend_in_regression},
            {"use_cointegration_cv", c.use_cointegration_cv},
            {"cointegrated", c.cointegrated}};
    } else {
        j["cointegration"] = nullptr;
    }
    j["elasticity"] = json{
        {"eps_K", bundle.elasticity.eps_K},
        {"eps_L", bundle.elasticity.eps_L},
        {"returns_to_scale", bundle.elasticity.rts},
        {"classification", to_string(bundle.elasticity.rts_class)},
        {"evaluation",
         bundle.elasticity.evaluation_point == EvaluationPoint::mean ? "mean" : "per_row"}};
    if (bundle.tech_change) {
        j["technical_change"] = json{{"gamma", bundle.tech_change->gamma},
                                     {"t_stat", bundle.tech_change->t_stat},
                                     {"label", to_string(bundle.tech_change->label)}};
    } else {
        j["technical_change"] = nullptr;
    }
    j["regularity"] = json{{"share_satisfying_all", bundle.regularity.share_satisfying_all},
                           {"economic_zone", bundle.regularity.economic_zone}};
    return j.dump(2) + "\n";
}

std::string render_text_report(const ReportBundle& bundle) {
    std::ostringstream out;
    out << "PRODUCTION FUNCTION ESTIMATION REPORT\n";
    out << "=====================================\n\n";
    int section = 0;

    out << ++section << ". Average annual growth rates\n";
    out << "   " << pad("variable", 10) << pad("compound", 12) << "arithmetic\n";
    for (const auto& g : bundle.growth) {
        out << "   " << pad(g.variable, 10) << pad(fmt(100.0 * g.compound, 2) + "%", 12)
            << fmt(100.0 * g.arithmetic, 2) << "%\n";
    }

    out << "\n" << ++section << ". Unit-root tests on logged variables (" << to_string(bundle.unit_roots.empty()
            ? Deterministics::constant_and_trend
            : bundle.unit_roots.front().adf_level.deterministics)
        << ")\n";
    out << "   " << pad("variable", 10) << pad("ADF level", 12) << pad("PP level", 12)
        << pad("ADF diff", 12) << pad("PP diff", 12) << "result\n";
    for (const auto& r : bundle.unit_roots) {
        out << "   " << pad(r.variable, 10) << pad(fmt(r.adf_level.statistic, 3), 12)
            << pad(fmt(r.pp_level.statistic, 3), 12) << pad(fmt(r.adf_diff.statistic, 3), 12)
            << pad(fmt(r.pp_diff.statistic, 3), 12)
            << (r.order >= 0 ? "I(" + std::to_string(r.order) + ")" : "I(>2)") << "\n";
    }
    if (!bundle.unit_roots.empty()) {
        const auto& lvl = bundle.unit_roots.front().adf_level;
        const auto& dif = bundle.unit_roots.front().adf_diff;
        out << "   critical values, level (n=" << lvl.n_effective
            << "): 1% " << fmt(lvl.cv1, 3) << "  5% " << fmt(lvl.cv5, 3) << "  10% "
            << fmt(lvl.cv10, 3) << "\n";
        out << "   critical values, first difference (n=" << dif.n_effective
            << "): 1% " << fmt(dif.cv1, 3) << "  5% " << fmt(dif.cv5, 3) << "  10% "
            << fmt(dif.cv10, 3) << "\n";
    }

    if (bundle.scan) {
        out << "\n" << ++section << ". Model scan (score = " << bundle.scan->weights.economic_zone
            << "*zone + " << bundle.scan->weights.significance << "*signif + "
            << bundle.scan->weights.diagnostics << "*diag + " << bundle.scan->weights.adj_r2
            << "*adjR2)\n";
        out << "   " << pad("form", 36) << pad("score", 10) << pad("zone", 8)
            << pad("signif", 8) << pad("diag", 8) << "adjR2\n";
        for (const auto& r : bundle.scan->rows) {
            std::string name = to_string(r.spec.form);
            if (r.spec.include_war_dummy) name += "+war";
            if (r.spec.ar_error_order == 1) name += "+ar1";
            if (r.ok) {
                out << "   " << pad(name, 36) << pad(fmt(r.score, 3), 10)
                    << pad(fmt(r.zone_share, 2), 8) << pad(fmt(r.significant_share, 2), 8)
                    << pad(fmt(r.diagnostics_passed, 2), 8) << fmt(r.adj_r2, 3) << "\n";
            } else {
                out << "   " << pad(name, 36) << "failed: " << r.error << "\n";
            }
        }
    }

    const FitResult& fit = bundle.fit;
    out << "\n" << ++section << ". Estimation (" << to_string(bundle.chosen_spec.form)
        << (bundle.chosen_spec.ar_error_order == 1 ? ", AR(1) errors" : "") << ")\n";
    out << "   response: " << fit.response_name << "\n";
    out << "   " << pad("regressor", 12) << pad("coef", 12) << pad("std err", 12)
        << pad("t-stat", 12) << "p-value\n";
    const double df = static_cast<double>(fit.n_effective - fit.k);
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
        out << "   " << pad(fit.names[j], 12) << pad(fmt(fit.coefficients[j], 3), 12)
            << pad(fmt(fit.std_errors[j], 3), 12) << pad(fmt(fit.t_stats[j], 3), 12)
            << fmt(dist::student_t_two_sided(fit.t_stats[j], df), 4) << "\n";
    }
    if (fit.has("const")) {
        out << "   exp(const) = " << fmt(std::exp(fit.coef("const")), 3)
            << " (level of the multiplicative constant)\n";
    }
    if (fit.rho) {
        out << "   AR(1) rho: " << fmt(fit.rho->rho, 3) << " (std err "
            << fmt(fit.rho->std_error, 3) << ", t " << fmt(fit.rho->t_stat, 3) << ", "
            << fit.rho->iterations << " iterations)\n";
    }
    out << "   R2 " << fmt(fit.r2, 3) << "   adjusted R2 " << fmt(fit.adj_r2, 3);
    if (fit.r2_original) {
        out << "   (untransformed-scale R2 " << fmt(*fit.r2_original, 3) << ")";
    }
    out << "\n";
    out << "   F(" << fit.f_df1 << "," << fit.f_df2 << ") " << fmt(fit.f_stat, 3) << "   DW "
        << fmt(fit.dw, 3) << "   n " << fit.n_effective << "\n";

    out << "\n" << ++section << ". Diagnostics\n";
    if (bundle.diagnostics) {
        const auto& dgn = *bundle.diagnostics;
        out << "   Breusch-Godfrey (lags " << dgn.bg.lag_order << "): LM "
            << fmt(dgn.bg.statistic, 3) << ", p " << fmt(dgn.bg.p_value, 4) << "\n";
        out << "   Breusch-Pagan-Godfrey: LM " << fmt(dgn.bpg.statistic, 3) << ", p "
            << fmt(dgn.bpg.p_value, 4) << "\n";
        out << "   Jarque-Bera: " << fmt(dgn.jb.statistic, 3) << ", p "
            << fmt(dgn.jb.p_value, 4) << " (skew " << fmt(dgn.jb.skewness, 3)
            << ", excess kurtosis " << fmt(dgn.jb.excess_kurtosis, 3) << ")\n";
        out << "   mean residual: " << dgn.mean_residual << "\n";
        out << "   residual-regressor correlations:";
        for (const auto& [name, c] : dgn.resid_regressor_corr) {
            out << " " << name << "=" << fmt(c, 3);
        }
        out << "\n   VIF:";
        for (std::size_t i = 0; i < dgn.collinearity.names.size(); ++i) {
            out << " " << dgn.collinearity.names[i] << "=" << fmt(dgn.collinearity.vif[i], 2);
        }
        out << "\n   condition number: " << fmt(dgn.collinearity.condition_number, 1) << "\n";
        out << "   co-linearity flags: high-R2-few-significant="
            << (dgn.collinearity.flag_high_r2_few_significant ? "yes" : "no")
            << ", high-pairwise-correlation="
            << (dgn.collinearity.flag_high_pairwise_correlation ? "yes" : "no") << "\n";
    } else {
        out << "   not run\n";
    }

    out << "\n" << ++section << ". Residual stationarity (cointegration)\n";
    if (bundle.cointegration) {
        const auto& c = *bundle.cointegration;
        out << "   ADF " << fmt(c.adf.statistic, 3) << " (" << decision_str(c.adf) << "), PP "
            << fmt(c.pp.statistic, 3) << " (" << decision_str(c.pp) << ")\n";
        out << "   Dickey-Fuller cvs (ADF): 1% " << fmt(c.dickey_fuller_cv_adf.cv1, 3)
            << "  5% " << fmt(c.dickey_fuller_cv_adf.cv5, 3) << "  10% "
            << fmt(c.dickey_fuller_cv_adf.cv10, 3) << "\n";
        out << "   cointegration cvs (ADF, " << c.n_vars << " vars"
            << (c.trend_in_regression ? ", trend" : "") << "): 1% "
            << fmt(c.cointegration_cv_adf.cv1, 3) << "  5% "
            << fmt(c.cointegration_cv_adf.cv5, 3) << "  10% "
            << fmt(c.cointegration_cv_adf.cv10, 3) << "\n";
        out << "   decision basis: "
            << (c.use_cointegration_cv ? "cointegration" : "Dickey-Fuller")
            << " critical values; residuals "
            << (c.cointegrated ? "stationary - cointegration accepted"
                               : "non-stationary - no cointegration") << "\n";
    } else {
        out << "   not run\n";
    }

    out << "\n" << ++section << ". Economic interpretation\n";
    out << "   elasticity of output w.r.t. capital: " << fmt(bundle.elasticity.eps_K, 3)
        << "\n";
    out << "   elasticity of output w.r.t. labour:  " << fmt(bundle.elasticity.eps_L, 3)
        << "\n";
    out << "   returns to scale: " << fmt(bundle.elasticity.rts, 3) << " ("
        << to_string(bundle.elasticity.rts_class) << ")\n";
    if (bundle.tech_change) {
        out << "   technical change: " << fmt(bundle.tech_change->gamma, 3) << " per year (t "
            << fmt(bundle.tech_change->t_stat, 3) << ", "
            << to_string(bundle.tech_change->label) << ")\n";
    } else {
        out << "   technical change: no trend term in the chosen model\n";
    }
    out << "   regularity: " << fmt(100.0 * bundle.regularity.share_satisfying_all, 1)
        << "% of observations satisfy fL>0, fK>0, fLL<0, fKK<0; economic zone "
        << (bundle.regularity.economic_zone ? "yes" : "no") << "\n";
    return out.str();
}

std::vector<std::string> emit_report(const ReportBundle& bundle, const std::string& out_dir,
                                     bool text, bool structured) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    }
    std::vector<std::string> written;
    auto write_file = [&](const std::string& name, const std::string& content) {
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw IoError("cannot write '" + path + "'");
        }
        out << content;
        if (!out) {
            throw IoError("write failed for '" + path + "'");
        }
        written.push_back(path);
    };

    if (text) write_file("report.txt", render_text_report(bundle));
    if (structured) write_file("report.json", render_structured_report(bundle));

    char buf[256];
    // Actual response vs static structural prediction over the design span.
    {
        const AnnualSeries pred = predict(bundle.fit, bundle.design);
        std::string csv = "year,actual,fitted\n";
        for (std::size_t i = 0; i < bundle.design.rows(); ++i) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n",
                          bundle.design.start_year + static_cast<int>(i),
                          bundle.design.response[i], pred[i]);
            csv += buf;
        }
        write_file("fit_plot.csv", csv);
    }
    {
        std::string csv = "year,residual\n";
        const auto& res = bundle.fit.residuals;
        for (std::size_t i = 0; i < res.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%d,%.17g\n",
                          res.start_year() + static_cast<int>(i), res[i]);
            csv += buf;
        }
        write_file("residual_plot.csv", csv);
    }
    {
        std::string csv = "lag,acf,pacf,band\n";
        std::vector<AcfPoint> points;
        if (bundle.diagnostics) {
            points = bundle.diagnostics->acf;
        } else {
            const int max_lag =
                std::max(1, std::min<int>(12, static_cast<int>(bundle.fit.residuals.size()) / 2 -
                                                  1));
            points = acf_pacf(bundle.fit.residuals, max_lag);
        }
        for (const auto& p : points) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", p.lag, p.acf, p.pacf,
                          p.band);
            csv += buf;
        }
        write_file("acf_plot.csv", csv);
    }
    return written;
}

}  // namespace prodfn
