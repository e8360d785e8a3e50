// Command-line front end for the production-function toolkit. Every number a
// subcommand prints comes from a library call; this file only parses flags,
// sequences stages, and formats output.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "prodfn/dist.hpp"
#include "prodfn/errors.hpp"
#include "prodfn/report.hpp"

namespace {

struct GlobalFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> form;
    std::optional<bool> ar1;
    std::optional<double> alpha;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

int env_thread_cap() {
    const char* env = std::getenv("PRODFN_THREADS");
    if (!env) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 1;
}

prodfn::PipelineConfig effective_config(const GlobalFlags& flags, bool config_required) {
    prodfn::PipelineConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = prodfn::load_config(flags.config_path);
    } else if (config_required) {
        throw prodfn::ConfigError("--config is required for this subcommand");
    } else {
        // Replication defaults let `replicate` run without a config file.
        cfg.replication = prodfn::ReplicationParams{};
        cfg.models.push_back(prodfn::ModelSpec{});
    }
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.alpha) cfg.alpha = *flags.alpha;
    if (flags.out) cfg.out_dir = *flags.out;
    if (flags.form) {
        prodfn::ModelSpec spec = cfg.models.empty() ? prodfn::ModelSpec{} : cfg.models.front();
        spec.form = prodfn::functional_form_from_string(*flags.form);
        cfg.models = {spec};
    }
    if (flags.ar1) {
        for (auto& m : cfg.models) m.ar_error_order = *flags.ar1 ? 1 : 0;
    }
    if (flags.format) {
        cfg.emit_text = *flags.format == "text" || *flags.format == "both";
        cfg.emit_structured = *flags.format == "structured" || *flags.format == "both";
    }
    const int cap = env_thread_cap();
    if (cap > 0 && cfg.threads > cap) cfg.threads = cap;
    cfg.validate();
    return cfg;
}

prodfn::ReportBundle run_with_overrides(const GlobalFlags& flags, bool diagnostics,
                                        bool cointegration) {
    prodfn::PipelineConfig cfg = effective_config(flags, true);
    cfg.run_diagnostics = diagnostics;
    cfg.run_cointegration = cointegration;
    return prodfn::run_pipeline(cfg);
}

void print_section(const prodfn::ReportBundle& bundle) {
    std::cout << prodfn::render_text_report(bundle);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aggregate production-function estimation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalFlags flags;
    app.add_option("--config", flags.config_path, "Pipeline configuration (JSON)");
    app.add_option("--seed", flags.seed, "Random seed override");
    app.add_option("--form", flags.form,
                   "Estimate a single functional form (overrides the config's model list)");
    app.add_flag(
        "--ar1,!--no-ar1",
        [&flags](std::int64_t count) { flags.ar1 = count > 0; },
        "Toggle AR(1) error correction for every candidate model");
    app.add_option("--alpha", flags.alpha, "Significance level (0.01, 0.05 or 0.10)")
        ->check(CLI::IsMember({0.01, 0.05, 0.10}));
    app.add_option("--out", flags.out, "Output directory");
    app.add_option("--format", flags.format, "Report format")
        ->check(CLI::IsMember({"text", "structured", "both"}));

    auto* cmd_prepare =
        app.add_subcommand("prepare", "Construct the estimation dataset and growth table");
    auto* cmd_unitroot =
        app.add_subcommand("unitroot", "Unit-root battery on the logged variables");
    auto* cmd_estimate = app.add_subcommand("estimate", "Fit the chosen model");
    auto* cmd_diagnose = app.add_subcommand("diagnose", "Classical-assumption diagnostics");
    auto* cmd_cointegrate =
        app.add_subcommand("cointegrate", "Residual stationarity (cointegration) test");
    auto* cmd_scan = app.add_subcommand("scan", "Rank every candidate functional form");
    auto* cmd_replicate =
        app.add_subcommand("replicate", "Generate a synthetic estimation dataset");
    auto* cmd_report = app.add_subcommand("report", "Run the whole pipeline and emit reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        namespace fs = std::filesystem;
        if (cmd_prepare->parsed()) {
            const auto cfg = effective_config(flags, true);
            const prodfn::Dataset d = prodfn::obtain_dataset(cfg);
            fs::create_directories(cfg.out_dir);
            const std::string path = (fs::path(cfg.out_dir) / "dataset.csv").string();
            prodfn::write_dataset_csv(d, path);
            std::cout << "dataset: " << d.rows() << " rows, " << d.start_year() << "-"
                      << d.end_year() << " -> " << path << "\n";
            for (const char* name : {"Q", "L", "K"}) {
                const auto& s = d.col(name);
                std::printf("%-4s compound %6.2f%%   arithmetic %6.2f%%\n", name,
                            100.0 * prodfn::cagr(s), 100.0 * prodfn::mean_annual_growth(s));
            }
        } else if (cmd_replicate->parsed()) {
            const auto cfg = effective_config(flags, false);
            if (!cfg.replication) {
                throw prodfn::ConfigError("replicate needs replication parameters");
            }
            const prodfn::Dataset d =
                prodfn::generate_replication_dataset(*cfg.replication, cfg.seed);
            fs::create_directories(cfg.out_dir);
            const std::string path = (fs::path(cfg.out_dir) / "dataset.csv").string();
            prodfn::write_dataset_csv(d, path);
            std::cout << "synthetic dataset (seed " << cfg.seed << "): " << d.rows()
                      << " rows -> " << path << "\n";
        } else if (cmd_unitroot->parsed()) {
            auto cfg = effective_config(flags, true);
            cfg.run_diagnostics = false;
            cfg.run_cointegration = false;
            const prodfn::Dataset d = prodfn::obtain_dataset(cfg);
            std::printf("%-8s %12s %12s %12s %12s   %s\n", "variable", "ADF level", "PP level",
                        "ADF diff", "PP diff", "result");
            for (const char* name : {"Q", "L", "K"}) {
                const auto logged = prodfn::log_transform(d.col(name));
                auto spec = cfg.unit_root;
                spec.kind = prodfn::UnitRootTestKind::adf;
                const auto adf_level = prodfn::adf_test(logged, spec);
                const auto adf_diff = prodfn::adf_test(prodfn::difference(logged), spec);
                const auto pp_level = prodfn::pp_test(logged, spec);
                const auto pp_diff = prodfn::pp_test(prodfn::difference(logged), spec);
                int order = -1;
                try {
                    order = prodfn::integration_order(logged, cfg.unit_root, 2).order;
                } catch (const prodfn::Inconclusive&) {
                }
                std::printf("%-8s %12.3f %12.3f %12.3f %12.3f   %s\n", logged.name().c_str(),
                            adf_level.statistic, pp_level.statistic, adf_diff.statistic,
                            pp_diff.statistic,
                            order >= 0 ? ("I(" + std::to_string(order) + ")").c_str() : "I(>2)");
            }
            const auto cv = prodfn::critical_values(
                static_cast<int>(d.rows()) - 1, cfg.unit_root.deterministics);
            std::printf("level critical values (n=%zu): 1%% %.3f  5%% %.3f  10%% %.3f\n",
                        d.rows() - 1, cv.cv1, cv.cv5, cv.cv10);
        } else if (cmd_scan->parsed()) {
            auto cfg = effective_config(flags, true);
            const prodfn::Dataset d = prodfn::obtain_dataset(cfg);
            const auto scan = prodfn::model_selection_scan(d, cfg.models, cfg.scan_weights,
                                                           cfg.alpha, cfg.threads);
            std::printf("%-36s %10s %6s %7s %6s %7s\n", "form", "score", "zone", "signif",
                        "diag", "adjR2");
            for (const auto& r : scan.rows) {
                std::string name = prodfn::to_string(r.spec.form);
                if (r.spec.include_war_dummy) name += "+war";
                if (r.spec.ar_error_order == 1) name += "+ar1";
                if (r.ok) {
                    std::printf("%-36s %10.3f %6.2f %7.2f %6.2f %7.3f\n", name.c_str(), r.score,
                                r.zone_share, r.significant_share, r.diagnostics_passed,
                                r.adj_r2);
                } else {
                    std::printf("%-36s failed: %s\n", name.c_str(), r.error.c_str());
                }
            }
        } else if (cmd_estimate->parsed()) {
            const auto bundle = run_with_overrides(flags, false, false);
            print_section(bundle);
        } else if (cmd_diagnose->parsed()) {
            const auto bundle = run_with_overrides(flags, true, false);
            print_section(bundle);
        } else if (cmd_cointegrate->parsed()) {
            const auto bundle = run_with_overrides(flags, false, true);
            print_section(bundle);
        } else if (cmd_report->parsed()) {
            const auto cfg = effective_config(flags, true);
            const auto bundle = prodfn::run_pipeline(cfg);
            const auto files =
                prodfn::emit_report(bundle, cfg.out_dir, cfg.emit_text, cfg.emit_structured);
            for (const auto& f : files) std::cout << "wrote " << f << "\n";
        }
    } catch (const prodfn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.error_class()) {
            case prodfn::ErrorClass::config: return 2;
            case prodfn::ErrorClass::data: return 3;
            case prodfn::ErrorClass::numerical: return 4;
            case prodfn::ErrorClass::io: return 5;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
