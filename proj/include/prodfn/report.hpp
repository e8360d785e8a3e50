#ifndef PRODFN_REPORT_HPP
#define PRODFN_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prodfn/construction.hpp"
#include "prodfn/diagnostics.hpp"
#include "prodfn/estimation.hpp"
#include "prodfn/inference.hpp"
#include "prodfn/model_forms.hpp"
#include "prodfn/series.hpp"
#include "prodfn/unit_root.hpp"

namespace prodfn {

/// End-to-end pipeline settings. Loaded from a JSON document; every knob has
/// the shipped default.
struct PipelineConfig {
    // Data source: a CSV file, or the synthetic generator when `replication`
    // is set (the generator wins if both are present).
    std::string input_csv;
    std::optional<ReplicationParams> replication;
    std::uint64_t seed = 1;

    // Data construction.
    std::vector<int> labour_gap_years;  // blanked before interpolation
    double pi_delta = 0.047;            // perpetual-inventory depreciation rate

    // Unit-root battery.
    UnitRootSpec unit_root;

    // Candidate models. One entry = direct estimation; several = scan, with
    // the top-ranked row becoming the headline fit.
    std::vector<ModelSpec> models;
    ScanWeights scan_weights;

    double alpha = 0.05;
    bool run_diagnostics = true;
    bool run_cointegration = true;
    bool use_cointegration_cv = true;
    int bg_lags = 2;

    std::string out_dir = "out";
    bool emit_text = true;
    bool emit_structured = true;
    int threads = 1;

    void validate() const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& json_text);

/// Raw CSV content before construction: labour cells may be sparse, capital
/// may stop early (the blank tail is synthesized from investment).
struct RawSeriesBundle {
    AnnualSeries q{"Q", 0, {1.0}};
    std::map<int, double> labour_cells;
    std::optional<AnnualSeries> capital;
    std::optional<AnnualSeries> investment;
};

// Parses the `year,q,l,k,i` schema. Errors carry line/column positions.
RawSeriesBundle load_dataset_csv(const std::string& path);

// Writes a constructed dataset back out in the same schema (investment blank).
void write_dataset_csv(const Dataset& d, const std::string& path);

// Applies gap blanking, geometric interpolation, and capital extension, then
// aligns everything with the trend column.
Dataset construct_dataset(const RawSeriesBundle& raw, const PipelineConfig& cfg);

// Builds the estimation dataset from whichever source the config names.
Dataset obtain_dataset(const PipelineConfig& cfg);

struct GrowthRow {
    std::string variable;
    double compound = 0.0;    // geometric average annual growth
    double arithmetic = 0.0;  // mean of annual growth rates
};

struct UnitRootTableRow {
    std::string variable;
    UnitRootResult adf_level;
    UnitRootResult pp_level;
    UnitRootResult adf_diff;
    UnitRootResult pp_diff;
    int order = -1;  // -1 = inconclusive within max_d
};

struct ReportBundle {
    std::vector<GrowthRow> growth;
    std::vector<UnitRootTableRow> unit_roots;
    std::optional<ScanResult> scan;
    ModelSpec chosen_spec;
    FitResult fit;
    DesignMatrix design;
    ElasticityProfile elasticity;
    std::optional<TechnicalChange> tech_change;
    RegularityReport regularity;
    std::optional<DiagnosticsReport> diagnostics;
    std::optional<EngleGrangerResult> cointegration;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

// Runs construction, growth rates, the unit-root battery, estimation (scan or
// direct), diagnostics, the residual cointegration test, and the economic
// interpretation, in that order. Errors are rethrown with stage context.
ReportBundle run_pipeline(const PipelineConfig& cfg);

// Renderers. The two formats carry identical numbers by construction.
std::string render_text_report(const ReportBundle& bundle);
std::string render_structured_report(const ReportBundle& bundle);

// Writes report.txt / report.json plus the plot-data files fit_plot.csv,
// residual_plot.csv, acf_plot.csv; returns the paths written.
std::vector<std::string> emit_report(const ReportBundle& bundle, const std::string& out_dir,
                                     bool text, bool structured);

}  // namespace prodfn

#endif  // PRODFN_REPORT_HPP
