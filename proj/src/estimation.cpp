#include "prodfn/estimation.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "linalg.hpp"
#include "prodfn/errors.hpp"

namespace prodfn {

namespace {

bool has_constant_column(const DesignMatrix& design) {
    for (const auto& col : design.columns) {
        bool constant = true;
        for (double v : col) {
            if (v != col.front()) {
                constant = false;
                break;
            }
        }
        if (constant && col.front() != 0.0) return true;
    }
    return false;
}

double centered_sst(const std::vector<double>& y) {
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double sst = 0.0;
    for (double v : y) sst += (v - mean) * (v - mean);
    return sst;
}

double dw_statistic(const std::vector<double>& e) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < e.size(); ++t) {
        den += e[t] * e[t];
        if (t > 0) {
            const double d = e[t] - e[t - 1];
            num += d * d;
        }
    }
    if (den == 0.0) return 2.0;  // exact fit carries no autocorrelation evidence
    return num / den;
}

FitResult assemble_fit(const DesignMatrix& design, const linalg::LstsqResult& ls,
                       int start_year) {
    const auto n = design.rows();
    const auto k = design.k();
    FitResult fit;
    fit.names = design.names;
    fit.coefficients = ls.coef;
    fit.k = static_cast<int>(k);
    fit.n_effective = static_cast<int>(n);
    fit.ssr = ls.ssr;
    fit.sigma2 = ls.ssr / static_cast<double>(n - k);
    fit.std_errors.resize(k);
    fit.t_stats.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        fit.std_errors[j] = std::sqrt(fit.sigma2 * ls.xtx_inv_diag[j]);
        fit.t_stats[j] = fit.coefficients[j] / fit.std_errors[j];
    }
    fit.response_name = design.response_name;
    fit.response = design.response;
    fit.residuals = AnnualSeries("resid(" + design.response_name + ")", start_year, ls.residuals);
    fit.fitted = AnnualSeries("fitted(" + design.response_name + ")", start_year, ls.fitted);

    const bool intercept = has_constant_column(design);
    const double sst = intercept ? centered_sst(design.response)
                                 : std::inner_product(design.response.begin(),
                                                      design.response.end(),
                                                      design.response.begin(), 0.0);
    fit.r2 = sst > 0.0 ? 1.0 - ls.ssr / sst : 0.0;
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / static_cast<double>(n - k);
    if (intercept && k > 1) {
        fit.f_df1 = static_cast<int>(k) - 1;
        fit.f_df2 = static_cast<int>(n - k);
        fit.f_stat = ls.ssr > 0.0
                         ? ((sst - ls.ssr) / fit.f_df1) / (ls.ssr / fit.f_df2)
                         : std::numeric_limits<double>::infinity();
    } else {
        fit.f_stat = std::numeric_limits<double>::quiet_NaN();
    }
    fit.dw = dw_statistic(ls.residuals);
    return fit;
}

}  // namespace

bool FitResult::has(const std::string& name) const {
    for (const auto& n : names) {
        if (n == name) return true;
    }
    return false;
}

double FitResult::coef(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return coefficients[j];
    }
    throw SchemaMismatch("fit has no coefficient '" + name + "'");
}

double FitResult::se(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return std_errors[j];
    }
    throw SchemaMismatch("fit has no coefficient '" + name + "'");
}

double FitResult::t(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return t_stats[j];
    }
    throw SchemaMismatch("fit has no coefficient '" + name + "'");
}

FitResult ols(const DesignMatrix& design) {
    const auto n = design.rows();
    const auto k = design.k();
    if (n <= k) {
        throw InsufficientObservations("ols: " + std::to_string(n) + " observations for " +
                                       std::to_string(k) + " regressors");
    }
    const auto ls = linalg::lstsq(design.columns, design.response, design.names);
    return assemble_fit(design, ls, design.start_year);
}

double durbin_watson(const AnnualSeries& residuals) {
    if (residuals.size() < 2) {
        throw SeriesTooShort("durbin_watson needs at least two residuals");
    }
    double den = 0.0;
    for (double e : residuals.values()) den += e * e;
    if (den == 0.0) {
        throw AllZeroResiduals("durbin_watson is undefined for all-zero residuals");
    }
    return dw_statistic(residuals.values());
}

FitResult estimate_ar1(const DesignMatrix& design, double tol, int max_iter) {
    const auto n = design.rows();
    const auto k = design.k();
    if (n < k + 3) {
        throw InsufficientObservations("estimate_ar1: need at least k+3 observations");
    }

    double response_ss = 0.0;
    for (double v : design.response) response_ss += v * v;

    std::vector<double> b = linalg::lstsq(design.columns, design.response, design.names).coef;
    double rho = 0.0;
    int iterations = 0;
    double step = std::numeric_limits<double>::infinity();
    double prev_step = std::numeric_limits<double>::quiet_NaN();
    double prev_ratio = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    linalg::LstsqResult last_ls;
    DesignMatrix transformed;
    std::vector<double> u(n);

    auto full_sample_residuals = [&] {
        for (std::size_t t = 0; t < n; ++t) {
            double xb = 0.0;
            for (std::size_t j = 0; j < k; ++j) xb += design.columns[j][t] * b[j];
            u[t] = design.response[t] - xb;
        }
    };

    for (iterations = 1; iterations <= max_iter; ++iterations) {
        full_sample_residuals();
        double num = 0.0;
        double den = 0.0;
        double ssr_u = 0.0;
        for (std::size_t t = 1; t < n; ++t) {
            num += u[t] * u[t - 1];
            den += u[t - 1] * u[t - 1];
        }
        for (double v : u) ssr_u += v * v;
        // An exact fit leaves only rounding noise; treat it as rho = 0.
        double rho_new =
            ssr_u <= 1e-24 * std::max(1.0, response_ss) || den == 0.0 ? 0.0 : num / den;
        if (std::fabs(rho_new) >= 1.0) {
            throw RhoOutOfRange("estimate_ar1: |rho| = " + std::to_string(std::fabs(rho_new)) +
                                " >= 1 at iteration " + std::to_string(iterations));
        }
        step = rho_new - rho;
        // Aitken extrapolation: the rho map contracts geometrically, sometimes
        // with ratio near one; once the step ratio stabilizes, jump to the
        // projected fixed point.
        if (std::isfinite(prev_step) && prev_step != 0.0) {
            const double ratio = step / prev_step;
            if (std::isfinite(prev_ratio) && ratio > 0.2 && ratio < 0.9999 &&
                std::fabs(ratio - prev_ratio) < 0.02) {
                const double jump = rho_new + step * ratio / (1.0 - ratio);
                if (std::fabs(jump) < 1.0) {
                    rho_new = jump;
                    step = rho_new - rho;
                    prev_ratio = std::numeric_limits<double>::quiet_NaN();
                } else {
                    prev_ratio = ratio;
                }
            } else {
                prev_ratio = ratio;
            }
        }
        prev_step = step;
        rho = rho_new;

        transformed = DesignMatrix{};
        transformed.response_name = design.response_name + "*";
        transformed.start_year = design.start_year + 1;
        transformed.names = design.names;
        transformed.response.resize(n - 1);
        transformed.columns.assign(k, std::vector<double>(n - 1));
        for (std::size_t t = 1; t < n; ++t) {
            transformed.response[t - 1] = design.response[t] - rho * design.response[t - 1];
            for (std::size_t j = 0; j < k; ++j) {
                transformed.columns[j][t - 1] =
                    design.columns[j][t] - rho * design.columns[j][t - 1];
            }
        }
        last_ls = linalg::lstsq(transformed.columns, transformed.response, transformed.names);
        b = last_ls.coef;
        if (std::fabs(step) < tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NoConvergence("estimate_ar1: rho did not settle within " +
                            std::to_string(max_iter) + " iterations (last step " +
                            std::to_string(std::fabs(step)) + ")");
    }

    FitResult fit = assemble_fit(transformed, last_ls, transformed.start_year);

    // Covariance from the joint (b, rho) regression at the converged point:
    // the Jacobian columns are the quasi-differenced regressors plus the
    // lagged full-sample residual. This prices in the uncertainty of rho.
    full_sample_residuals();
    const std::size_t n1 = n - 1;
    std::vector<std::vector<double>> jac = transformed.columns;
    std::vector<double> ulag(n1);
    for (std::size_t t = 1; t < n; ++t) ulag[t - 1] = u[t - 1];
    jac.push_back(std::move(ulag));
    std::vector<std::string> jac_names = transformed.names;
    jac_names.push_back("rho");

    Ar1Estimate ar;
    ar.rho = rho;
    ar.iterations = iterations;
    ar.final_step = std::fabs(step);
    if (n1 > k + 1) {
        try {
            const auto joint =
                linalg::lstsq(jac, transformed.response, jac_names);
            const double sigma2 = last_ls.ssr / static_cast<double>(n1 - k - 1);
            fit.sigma2 = sigma2;
            for (std::size_t j = 0; j < k; ++j) {
                fit.std_errors[j] = std::sqrt(sigma2 * joint.xtx_inv_diag[j]);
                fit.t_stats[j] = fit.coefficients[j] / fit.std_errors[j];
            }
            ar.std_error = std::sqrt(sigma2 * joint.xtx_inv_diag[k]);
            ar.t_stat = ar.std_error > 0.0 ? rho / ar.std_error : 0.0;
            // Count rho among the estimated parameters.
            fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n1 - 1) /
                                   static_cast<double>(n1 - k - 1);
            if (fit.f_df1 > 0) {
                fit.f_df2 = static_cast<int>(n1 - k - 1);
                const double sst = last_ls.ssr / (1.0 - fit.r2);
                fit.f_stat = last_ls.ssr > 0.0 ? ((sst - last_ls.ssr) / fit.f_df1) /
                                                     (last_ls.ssr / fit.f_df2)
                                               : std::numeric_limits<double>::infinity();
            }
        } catch (const RankDeficient&) {
            // Degenerate joint system (e.g. exact fits): keep the conditional
            // covariance from the transformed regression.
        }
    }
    fit.rho = ar;

    double ssr_u = 0.0;
    for (double v : u) ssr_u += v * v;
    const double sst_orig = centered_sst(design.response);
    fit.r2_original = sst_orig > 0.0 ? 1.0 - ssr_u / sst_orig : 0.0;
    return fit;
}

AnnualSeries predict(const FitResult& fit, const DesignMatrix& design) {
    if (design.names != fit.names) {
        throw SchemaMismatch("design columns do not match fit coefficients");
    }
    std::vector<double> out(design.rows(), 0.0);
    for (std::size_t j = 0; j < design.k(); ++j) {
        for (std::size_t t = 0; t < design.rows(); ++t) {
            out[t] += design.columns[j][t] * fit.coefficients[j];
        }
    }
    return AnnualSeries("predicted(" + fit.response_name + ")", design.start_year,
                        std::move(out));
}

}  // namespace prodfn
