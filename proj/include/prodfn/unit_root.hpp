#ifndef PRODFN_UNIT_ROOT_HPP
#define PRODFN_UNIT_ROOT_HPP

#include <optional>
#include <string>
#include <vector>

#include "prodfn/series.hpp"

namespace prodfn {

enum class Deterministics { none, constant, constant_and_trend };
enum class UnitRootTestKind { adf, pp };

const char* to_string(Deterministics det);
Deterministics deterministics_from_string(const std::string& name);

struct UnitRootSpec {
    Deterministics deterministics = Deterministics::constant_and_trend;
    UnitRootTestKind kind = UnitRootTestKind::adf;
    // ADF lag rule: fixed order, or minimum-AIC selection up to max_lags
    // (default cap floor(12 * (n/100)^0.25)).
    std::optional<int> fixed_lags;
    std::optional<int> max_lags;
    // PP bandwidth rule: fixed, or automatic floor(4 * (n/100)^(2/9)).
    std::optional<int> fixed_bandwidth;
};

struct CriticalValues {
    double cv1 = 0.0;
    double cv5 = 0.0;
    double cv10 = 0.0;
};

enum class UnitRootDecision { stationary, unit_root };

struct UnitRootResult {
    std::string series_name;
    UnitRootTestKind kind = UnitRootTestKind::adf;
    Deterministics deterministics = Deterministics::constant_and_trend;
    double statistic = 0.0;
    double cv1 = 0.0;
    double cv5 = 0.0;
    double cv10 = 0.0;
    int lags_used = 0;       // ADF
    int bandwidth_used = 0;  // PP
    int n_effective = 0;
    std::optional<double> reject_at;  // smallest of {0.01, 0.05, 0.10} rejecting
    UnitRootDecision decision = UnitRootDecision::unit_root;  // at the 5% level
};

struct IntegrationOrderResult {
    int order = 0;
    std::vector<UnitRootResult> trail;  // level first, then successive differences
};

// Dickey-Fuller t-statistic critical values from response-surface regressions
// (MacKinnon-style 1/T expansions). n_effective is the regression sample size.
CriticalValues critical_values(int n_effective, Deterministics det);

// Residual-based cointegration-test critical values for a relation among
// n_vars integrated series (2..4), with or without trend in the cointegrating
// regression. n_vars = 1 falls back to the plain Dickey-Fuller surface.
CriticalValues engle_granger_critical_values(int n_effective, int n_vars, bool trend);

// Augmented Dickey-Fuller regression of dy_t on deterministics, y_{t-1} and
// lagged differences; statistic is the t-ratio on y_{t-1}.
UnitRootResult adf_test(const AnnualSeries& s, const UnitRootSpec& spec);

// Phillips-Perron Z_tau: the p=0 Dickey-Fuller t-ratio corrected with a
// Bartlett-kernel long-run variance of the base-regression residuals.
UnitRootResult pp_test(const AnnualSeries& s, const UnitRootSpec& spec);

// Sequentially tests the level and its differences, returning the first order
// at which stationarity is accepted at 5%.
IntegrationOrderResult integration_order(const AnnualSeries& s, const UnitRootSpec& spec,
                                         int max_d = 2);

}  // namespace prodfn

#endif  // PRODFN_UNIT_ROOT_HPP
