#ifndef PRODFN_INFERENCE_HPP
#define PRODFN_INFERENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prodfn/diagnostics.hpp"
#include "prodfn/estimation.hpp"
#include "prodfn/model_forms.hpp"
#include "prodfn/series.hpp"
#include "prodfn/unit_root.hpp"

namespace prodfn {

/// Residual-based cointegration test. Both the plain Dickey-Fuller and the
/// cointegration-specific critical-value families are retained; the decision
/// fields of `adf`/`pp` follow the family selected by use_cointegration_cv.
struct EngleGrangerResult {
    UnitRootResult adf;
    UnitRootResult pp;
    CriticalValues dickey_fuller_cv_adf;
    CriticalValues cointegration_cv_adf;
    CriticalValues dickey_fuller_cv_pp;
    CriticalValues cointegration_cv_pp;
    int n_vars = 2;
    bool trend_in_regression = false;
    bool use_cointegration_cv = true;
    bool cointegrated = false;  // both tests stationary at 5%
};

EngleGrangerResult engle_granger(const FitResult& fit, const UnitRootSpec& spec,
                                 bool use_cointegration_cv = true);

enum class EvaluationPoint { mean, per_row };
enum class ReturnsToScaleClass { decreasing, constant, increasing };

const char* to_string(ReturnsToScaleClass c);

struct ElasticityProfile {
    double eps_K = 0.0;
    double eps_L = 0.0;
    std::vector<double> eps_K_rows;  // filled for per_row evaluation
    std::vector<double> eps_L_rows;
    EvaluationPoint evaluation_point = EvaluationPoint::mean;
    double rts = 0.0;
    ReturnsToScaleClass rts_class = ReturnsToScaleClass::constant;
};

ElasticityProfile elasticities(const FitResult& fit, FunctionalForm form, const Dataset& d,
                               EvaluationPoint at = EvaluationPoint::mean);

std::pair<double, ReturnsToScaleClass> returns_to_scale(const ElasticityProfile& profile);

enum class TechnicalChangeLabel { progress, deterioration, indeterminate };

const char* to_string(TechnicalChangeLabel label);

struct TechnicalChange {
    double gamma = 0.0;
    double t_stat = 0.0;
    TechnicalChangeLabel label = TechnicalChangeLabel::indeterminate;
};

// Reads the trend coefficient off the fit and labels its sign when it is
// significant at `alpha` (two-sided).
TechnicalChange technical_change(const FitResult& fit, double alpha = 0.05);

struct RegularityFlags {
    bool fL_positive = false;
    bool fK_positive = false;
    bool fLL_negative = false;
    bool fKK_negative = false;
    bool all() const { return fL_positive && fK_positive && fLL_negative && fKK_negative; }
};

struct RegularityReport {
    std::vector<RegularityFlags> per_observation;
    double share_satisfying_all = 0.0;
    bool economic_zone = false;  // 0 < eps < 1 for both inputs at every observation
};

// Checks positivity and diminishing marginal products of the fitted form at
// every observation.
RegularityReport regularity_check(const FitResult& fit, FunctionalForm form, const Dataset& d);

/// Generator settings for the synthetic estimation dataset: input paths are
/// drifting random walks matched to the target average growth rates, and the
/// disturbance is a stationary AR(1).
struct ReplicationParams {
    double coef_lnK = 0.44;
    double coef_lnL = 0.41;
    double coef_T = 0.08;
    double rho = 0.9;
    double intercept = 1.0;
    double innovation_sd = 0.045;  // calibrated so the AR(1) fit's R^2 is ~0.98
    int n = 31;
    int start_year = 1976;
    double growth_K = 0.0221;
    double growth_L = 0.0265;
    double input_sd_K = 0.02;
    double input_sd_L = 0.015;
    double lnK0 = 10.0;
    double lnL0 = 4.5;

    void validate() const;
};

Dataset generate_replication_dataset(const ReplicationParams& params, std::uint64_t seed);

struct ScanWeights {
    double economic_zone = 3.0;
    double significance = 1.0;
    double diagnostics = 1.0;
    double adj_r2 = 1.0;
};

struct ScanRow {
    ModelSpec spec;
    bool ok = false;
    std::string error;
    double score = 0.0;
    double zone_share = 0.0;
    double significant_share = 0.0;
    double diagnostics_passed = 0.0;  // fraction of {BG, BPG, JB} not rejecting
    double adj_r2 = 0.0;
    std::optional<FitResult> fit;
    std::optional<ElasticityProfile> elasticity;
};

struct ScanResult {
    std::vector<ScanRow> rows;  // sorted by score, failures last
    ScanWeights weights;
    double alpha = 0.05;
};

// Fits every candidate specification and ranks them on economic-zone
// compliance, coefficient significance, diagnostics, and adjusted R^2.
// Per-spec failures become failure rows without aborting the scan.
ScanResult model_selection_scan(const Dataset& d, const std::vector<ModelSpec>& specs,
                                const ScanWeights& weights = {}, double alpha = 0.05,
                                int threads = 1);

}  // namespace prodfn

#endif  // PRODFN_INFERENCE_HPP
