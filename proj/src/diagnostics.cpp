#include "prodfn/diagnostics.hpp"

#include <cmath>
#include <numeric>

#include "linalg.hpp"
#include "prodfn/dist.hpp"
#include "prodfn/errors.hpp"
#include <algorithm>
#include <limits>

namespace prodfn {

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
        sab += (a[i] - ma) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

// Regressor columns on the scale the residuals were estimated on: identical to
// the design for OLS fits, quasi-differenced for AR(1) fits.
std::vector<std::vector<double>> estimation_scale_columns(const FitResult& fit,
                                                          const DesignMatrix& design) {
    const std::size_t n_res = fit.residuals.size();
    if (design.rows() == n_res) {
        return design.columns;
    }
    if (fit.rho && design.rows() == n_res + 1) {
        const double rho = fit.rho->rho;
        std::vector<std::vector<double>> cols(design.k(), std::vector<double>(n_res));
        for (std::size_t j = 0; j < design.k(); ++j) {
            for (std::size_t t = 1; t < design.rows(); ++t) {
                cols[j][t - 1] = design.columns[j][t] - rho * design.columns[j][t - 1];
            }
        }
        return cols;
    }
    throw SchemaMismatch("design rows do not match the fit's residual span");
}

double centered_r2(const std::vector<std::vector<double>>& cols, const std::vector<double>& y,
                   const std::vector<std::string>& names) {
    const auto ls = linalg::lstsq(cols, y, names);
    double sst = 0.0;
    const double my = mean_of(y);
    for (double v : y) sst += (v - my) * (v - my);
    if (sst == 0.0) return 0.0;
    return 1.0 - ls.ssr / sst;
}

}  // namespace

LmTestResult breusch_godfrey(const FitResult& fit, const DesignMatrix& design, int p) {
    if (p < 1) throw InvalidParams("breusch_godfrey: lag order must be >= 1");
    auto cols = estimation_scale_columns(fit, design);
    const std::vector<double>& e = fit.residuals.values();
    const std::size_t n = e.size();
    if (n <= design.k() + static_cast<std::size_t>(p)) {
        throw SeriesTooShort("breusch_godfrey: sample too short for " + std::to_string(p) +
                             " residual lags");
    }
    std::vector<std::string> names = design.names;
    for (int j = 1; j <= p; ++j) {
        std::vector<double> lagcol(n, 0.0);  // zero-filled pre-sample
        for (std::size_t t = static_cast<std::size_t>(j); t < n; ++t) {
            lagcol[t] = e[t - static_cast<std::size_t>(j)];
        }
        cols.push_back(std::move(lagcol));
        names.push_back("resid.lag" + std::to_string(j));
    }
    const double r2 = centered_r2(cols, e, names);
    LmTestResult out;
    out.statistic = static_cast<double>(n) * r2;
    out.df = p;
    out.lag_order = p;
    out.p_value = dist::chisq_sf(out.statistic, static_cast<double>(p));
    return out;
}

LmTestResult breusch_pagan_godfrey(const FitResult& fit, const DesignMatrix& design,
                                   BpgVariant variant) {
    const auto cols = estimation_scale_columns(fit, design);
    const std::vector<double>& e = fit.residuals.values();
    const std::size_t n = e.size();
    if (n <= design.k()) {
        throw SeriesTooShort("breusch_pagan_godfrey: more regressors than observations");
    }
    std::vector<double> e2(n);
    for (std::size_t t = 0; t < n; ++t) e2[t] = e[t] * e[t];

    LmTestResult out;
    out.df = static_cast<int>(design.k()) - 1;
    if (variant == BpgVariant::obs_r2) {
        out.statistic = static_cast<double>(n) * centered_r2(cols, e2, design.names);
    } else {
        // Normal-form statistic: half the explained sum of squares of
        // g_t = e_t^2 / (SSR/n) regressed on the design.
        const double sigma2 = std::accumulate(e2.begin(), e2.end(), 0.0) / static_cast<double>(n);
        if (sigma2 == 0.0) {
            out.statistic = 0.0;
            out.p_value = 1.0;
            return out;
        }
        std::vector<double> g(n);
        for (std::size_t t = 0; t < n; ++t) g[t] = e2[t] / sigma2;
        const auto ls = linalg::lstsq(cols, g, design.names);
        const double mg = mean_of(g);
        double ess = 0.0;
        for (double f : ls.fitted) ess += (f - mg) * (f - mg);
        out.statistic = 0.5 * ess;
    }
    out.p_value = out.df > 0 ? dist::chisq_sf(out.statistic, static_cast<double>(out.df)) : 1.0;
    return out;
}

JarqueBeraResult jarque_bera(const AnnualSeries& residuals) {
    const std::vector<double>& e = residuals.values();
    const std::size_t n = e.size();
    if (n < 4) throw SeriesTooShort("jarque_bera needs at least four observations");
    const double m = mean_of(e);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : e) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 == 0.0) throw ZeroVariance("jarque_bera: residuals have zero variance");
    JarqueBeraResult out;
    out.skewness = m3 / std::pow(m2, 1.5);
    const double kurtosis = m4 / (m2 * m2);
    out.excess_kurtosis = kurtosis - 3.0;
    out.statistic = static_cast<double>(n) / 6.0 *
                    (out.skewness * out.skewness +
                     0.25 * out.excess_kurtosis * out.excess_kurtosis);
    out.p_value = dist::chisq_sf(out.statistic, 2.0);
    return out;
}

double mean_residual(const FitResult& fit) { return mean_of(fit.residuals.values()); }

std::vector<AcfPoint> acf_pacf(const AnnualSeries& residuals, int max_lag) {
    const std::vector<double>& x = residuals.values();
    const std::size_t n = x.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n / 2) {
        throw SeriesTooShort("acf_pacf: max_lag must be below half the sample size");
    }
    const double m = mean_of(x);
    double denom = 0.0;
    for (double v : x) denom += (v - m) * (v - m);
    if (denom == 0.0) throw ZeroVariance("acf_pacf: series has zero variance");

    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
    r[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            acc += (x[t] - m) * (x[t - static_cast<std::size_t>(k)] - m);
        }
        r[static_cast<std::size_t>(k)] = acc / denom;
    }

    // Durbin-Levinson recursion for the partial autocorrelations.
    std::vector<double> pacf(static_cast<std::size_t>(max_lag) + 1, 0.0);
    pacf[0] = 1.0;
    std::vector<double> phi_prev, phi;
    for (int k = 1; k <= max_lag; ++k) {
        double num = r[static_cast<std::size_t>(k)];
        double den = 1.0;
        for (int j = 1; j < k; ++j) {
            num -= phi_prev[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(k - j)];
            den -= phi_prev[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(j)];
        }
        const double phikk = den != 0.0 ? num / den : 0.0;
        phi.assign(static_cast<std::size_t>(k), 0.0);
        for (int j = 1; j < k; ++j) {
            phi[static_cast<std::size_t>(j - 1)] =
                phi_prev[static_cast<std::size_t>(j - 1)] -
                phikk * phi_prev[static_cast<std::size_t>(k - j - 1)];
        }
        phi[static_cast<std::size_t>(k - 1)] = phikk;
        pacf[static_cast<std::size_t>(k)] = phikk;
        phi_prev = phi;
    }

    const double band = 1.96 / std::sqrt(static_cast<double>(n));
    std::vector<AcfPoint> out;
    out.reserve(static_cast<std::size_t>(max_lag) + 1);
    for (int k = 0; k <= max_lag; ++k) {
        out.push_back({k, r[static_cast<std::size_t>(k)], pacf[static_cast<std::size_t>(k)],
                       band});
    }
    return out;
}

std::vector<std::pair<std::string, double>> residual_regressor_correlation(
    const FitResult& fit, const DesignMatrix& design) {
    const std::vector<double>& e = fit.residuals.values();
    const std::size_t n_res = e.size();
    // Untransformed regressors, trimmed to the residual span (AR fits drop the
    // first observation).
    std::size_t offset = 0;
    if (design.rows() != n_res) {
        if (design.rows() == n_res + 1 && fit.rho) {
            offset = 1;
        } else {
            throw SchemaMismatch("design rows do not match the fit's residual span");
        }
    }
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t j = 0; j < design.k(); ++j) {
        if (design.names[j] == "const") continue;
        std::vector<double> col(design.columns[j].begin() + static_cast<std::ptrdiff_t>(offset),
                                design.columns[j].end());
        out.emplace_back(design.names[j], pearson(e, col));
    }
    return out;
}

CollinearityReport collinearity_screen(const DesignMatrix& design, const FitResult& fit,
                                       double alpha) {
    if (design.k() < 2) {
        throw InvalidParams("collinearity_screen needs at least two design columns");
    }
    if (linalg::rank(design.columns) < static_cast<int>(design.k())) {
        throw RankDeficient("collinearity_screen: design is exactly collinear");
    }

    CollinearityReport rep;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < design.k(); ++j) {
        if (design.names[j] != "const") {
            idx.push_back(j);
            rep.names.push_back(design.names[j]);
        }
    }
    const std::size_t m = idx.size();
    rep.pairwise.assign(m, std::vector<double>(m, 1.0));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const double c = pearson(design.columns[idx[a]], design.columns[idx[b]]);
            rep.pairwise[a][b] = c;
            rep.pairwise[b][a] = c;
            if (std::fabs(c) > 0.9) rep.flag_high_pairwise_correlation = true;
        }
    }

    // VIF_j = 1/(1 - R^2_j) from regressing regressor j on the others.
    rep.vif.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        if (m == 1) {
            rep.vif[a] = 1.0;
            continue;
        }
        std::vector<std::vector<double>> cols;
        std::vector<std::string> names;
        cols.emplace_back(design.rows(), 1.0);
        names.emplace_back("const");
        for (std::size_t b = 0; b < m; ++b) {
            if (b == a) continue;
            cols.push_back(design.columns[idx[b]]);
            names.push_back(design.names[idx[b]]);
        }
        const double r2j = centered_r2(cols, design.columns[idx[a]], names);
        rep.vif[a] = r2j < 1.0 ? 1.0 / (1.0 - r2j) : std::numeric_limits<double>::infinity();
    }

    rep.condition_number = linalg::scaled_condition_number(design.columns);

    // Rule A: high R^2 while fewer than half the non-intercept t-stats clear
    // the two-sided critical value.
    const double t_crit =
        dist::student_t_ppf(1.0 - alpha / 2.0,
                            static_cast<double>(fit.n_effective - fit.k));
    std::size_t significant = 0;
    std::size_t considered = 0;
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
        if (fit.names[j] == "const") continue;
        ++considered;
        if (std::fabs(fit.t_stats[j]) > t_crit) ++significant;
    }
    rep.flag_high_r2_few_significant =
        fit.r2 > 0.9 && considered > 0 && 2 * significant < considered;
    return rep;
}

DiagnosticsReport run_diagnostics(const FitResult& fit, const DesignMatrix& design, int bg_lags,
                                  double alpha) {
    DiagnosticsReport rep;
    rep.bg_lags = bg_lags;
    rep.alpha = alpha;
    rep.bg = breusch_godfrey(fit, design, bg_lags);
    rep.bpg = breusch_pagan_godfrey(fit, design);
    rep.jb = jarque_bera(fit.residuals);
    rep.mean_residual = mean_residual(fit);
    const int max_lag =
        std::min<int>(12, static_cast<int>(fit.residuals.size()) / 2 - 1);
    rep.acf = acf_pacf(fit.residuals, std::max(1, max_lag));
    rep.resid_regressor_corr = residual_regressor_correlation(fit, design);
    rep.collinearity = collinearity_screen(design, fit, alpha);
    return rep;
}

}  // namespace prodfn
