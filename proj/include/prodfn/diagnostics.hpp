#ifndef PRODFN_DIAGNOSTICS_HPP
#define PRODFN_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "prodfn/estimation.hpp"
#include "prodfn/model_forms.hpp"
#include "prodfn/series.hpp"

namespace prodfn {

struct LmTestResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    int lag_order = 0;  // serial-correlation tests only
};

enum class BpgVariant {
    obs_r2,      // n * R^2 of the auxiliary regression (chi-square form)
    scaled_ess,  // half the explained sum of squares of e^2/sigma^2 on X
};

struct JarqueBeraResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

struct AcfPoint {
    int lag = 0;
    double acf = 0.0;
    double pacf = 0.0;
    double band = 0.0;  // +-1.96/sqrt(n)
};

struct CollinearityReport {
    std::vector<std::string> names;               // non-intercept regressors
    std::vector<std::vector<double>> pairwise;    // correlation matrix
    std::vector<double> vif;
    double condition_number = 1.0;
    bool flag_high_r2_few_significant = false;
    bool flag_high_pairwise_correlation = false;
};

struct DiagnosticsReport {
    LmTestResult bg;
    LmTestResult bpg;
    JarqueBeraResult jb;
    double mean_residual = 0.0;
    std::vector<AcfPoint> acf;
    std::vector<std::pair<std::string, double>> resid_regressor_corr;
    CollinearityReport collinearity;
    int bg_lags = 0;
    double alpha = 0.05;
};

// Breusch-Godfrey LM test for residual serial correlation up to order p.
// Pre-sample residual lags are zero-filled. For AR(1) fits pass the original
// design; the auxiliary regression quasi-differences it to the innovation
// scale automatically.
LmTestResult breusch_godfrey(const FitResult& fit, const DesignMatrix& design, int p);

// Breusch-Pagan-Godfrey heteroscedasticity test: squared residuals on the
// original regressors.
LmTestResult breusch_pagan_godfrey(const FitResult& fit, const DesignMatrix& design,
                                   BpgVariant variant = BpgVariant::obs_r2);

// Jarque-Bera normality test from sample skewness and kurtosis.
JarqueBeraResult jarque_bera(const AnnualSeries& residuals);

double mean_residual(const FitResult& fit);

// Sample autocorrelations and Durbin-Levinson partial autocorrelations.
std::vector<AcfPoint> acf_pacf(const AnnualSeries& residuals, int max_lag);

// Pearson correlation between residuals and each non-intercept regressor
// (untransformed scale, trimmed to the residual span).
std::vector<std::pair<std::string, double>> residual_regressor_correlation(
    const FitResult& fit, const DesignMatrix& design);

// Pairwise correlations, variance inflation factors, scaled condition number,
// and the two empirical co-linearity rules.
CollinearityReport collinearity_screen(const DesignMatrix& design, const FitResult& fit,
                                       double alpha = 0.05);

// The whole battery with default settings.
DiagnosticsReport run_diagnostics(const FitResult& fit, const DesignMatrix& design,
                                  int bg_lags = 2, double alpha = 0.05);

}  // namespace prodfn

#endif  // PRODFN_DIAGNOSTICS_HPP
