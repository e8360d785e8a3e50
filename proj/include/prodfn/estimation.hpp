#ifndef PRODFN_ESTIMATION_HPP
#define PRODFN_ESTIMATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "prodfn/model_forms.hpp"
#include "prodfn/series.hpp"

namespace prodfn {

struct Ar1Estimate {
    double rho = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    int iterations = 0;
    double final_step = 0.0;  // last |delta rho|
};

/// Estimation output. For AR(1) fits the response/fitted/residual block is on
/// the quasi-differenced scale (residuals are the innovations) and the span
/// starts one year after the design's; r2_original reports fit on the
/// untransformed scale alongside.
struct FitResult {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    AnnualSeries residuals{"resid", 0, {0.0}};
    AnnualSeries fitted{"fitted", 0, {0.0}};
    std::string response_name;
    std::vector<double> response;  // estimation scale, aligned with residuals
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double f_stat = 0.0;
    int f_df1 = 0;
    int f_df2 = 0;
    double dw = 0.0;
    double sigma2 = 0.0;
    double ssr = 0.0;
    int n_effective = 0;
    int k = 0;
    std::optional<Ar1Estimate> rho;
    std::optional<double> r2_original;  // untransformed-scale R^2 (AR fits)

    bool has(const std::string& name) const;
    double coef(const std::string& name) const;
    double se(const std::string& name) const;
    double t(const std::string& name) const;
};

// Ordinary least squares with the full statistics block.
FitResult ols(const DesignMatrix& design);

// Sum of squared residual changes over sum of squared residuals.
double durbin_watson(const AnnualSeries& residuals);

// Iterated quasi-differencing for y_t = x_t'b + u_t, u_t = rho u_{t-1} + e_t:
// alternate between re-estimating rho from full-sample residuals and
// re-fitting the quasi-differenced regression until rho settles. The first
// observation is dropped, so n_effective shrinks by one.
FitResult estimate_ar1(const DesignMatrix& design, double tol = 1e-8, int max_iter = 200);

// Static prediction x_t'b (no AR term), requiring the design schema to match
// the fit's coefficient names.
AnnualSeries predict(const FitResult& fit, const DesignMatrix& design);

}  // namespace prodfn

#endif  // PRODFN_ESTIMATION_HPP
