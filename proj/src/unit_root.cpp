#include "prodfn/unit_root.hpp"

#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "prodfn/errors.hpp"

namespace prodfn {

const char* to_string(Deterministics det) {
    switch (det) {
        case Deterministics::none: return "none";
        case Deterministics::constant: return "constant";
        case Deterministics::constant_and_trend: return "constant_and_trend";
    }
    return "unknown";
}

Deterministics deterministics_from_string(const std::string& name) {
    if (name == "none") return Deterministics::none;
    if (name == "constant") return Deterministics::constant;
    if (name == "constant_and_trend") return Deterministics::constant_and_trend;
    throw ConfigError("unknown deterministics '" + name + "'");
}

namespace {

// Response-surface coefficients cv(T) = b0 + b1/T + b2/T^2 + b3/T^3 for the
// Dickey-Fuller t-statistic, per MacKinnon's published regressions
// (MacKinnon, J. Applied Econometrics 1996; QED WP 1227, 2010).
struct Surface {
    double b0, b1, b2, b3;
    double at(int t) const {
        const double x = 1.0 / static_cast<double>(t);
        return b0 + x * (b1 + x * (b2 + x * b3));
    }
};

constexpr Surface kTauNone[3] = {
    {-2.56574, -2.2358, -3.627, 0.0},      // 1%
    {-1.94100, -0.2686, -3.365, 31.223},   // 5%
    {-1.61682, 0.2656, -2.714, 25.364},    // 10%
};
constexpr Surface kTauConst[3] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
};
constexpr Surface kTauTrend[3] = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
};

// Residual-based cointegration surfaces for 2..4 variables, MacKinnon (1991).
constexpr Surface kEgConst[3][3] = {
    {{-3.9001, -10.534, -30.03, 0.0}, {-3.3377, -5.967, -8.98, 0.0},
     {-3.0462, -4.069, -5.73, 0.0}},
    {{-4.2981, -13.790, -46.37, 0.0}, {-3.7429, -8.352, -13.41, 0.0},
     {-3.4518, -6.241, -2.79, 0.0}},
    {{-4.6493, -17.188, -59.20, 0.0}, {-4.1000, -10.745, -21.57, 0.0},
     {-3.8110, -8.317, -5.19, 0.0}},
};
constexpr Surface kEgTrend[3][3] = {
    {{-4.3266, -15.531, -34.03, 0.0}, {-3.7809, -9.421, -15.06, 0.0},
     {-3.4959, -7.203, -4.01, 0.0}},
    {{-4.6676, -18.492, -49.35, 0.0}, {-4.1193, -12.024, -13.13, 0.0},
     {-3.8344, -9.188, -4.85, 0.0}},
    {{-4.9695, -22.504, -50.22, 0.0}, {-4.4294, -14.501, -19.54, 0.0},
     {-4.1474, -11.165, -9.88, 0.0}},
};

struct DfRegression {
    double statistic = 0.0;    // t-ratio on y_{t-1}
    double se_gamma = 0.0;     // its standard error
    double s2 = 0.0;           // OLS residual variance SSR/(T-k)
    std::vector<double> residuals;
    int n_effective = 0;
    int k = 0;
    double ssr = 0.0;
};

// Dickey-Fuller regression with p lagged differences, rows t = p+1 .. n-1
// (0-based): dy_t on deterministics, y_{t-1}, dy_{t-1}..dy_{t-p}.
DfRegression df_regression(const std::vector<double>& y, Deterministics det, int p) {
    const auto n = y.size();
    const std::size_t first = static_cast<std::size_t>(p) + 1;
    if (n < first + 1) {
        throw SeriesTooShort("unit root regression has no observations");
    }
    const std::size_t rows = n - first;

    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    if (det != Deterministics::none) {
        names.emplace_back("const");
        cols.emplace_back(rows, 1.0);
    }
    if (det == Deterministics::constant_and_trend) {
        std::vector<double> trend(rows);
        for (std::size_t i = 0; i < rows; ++i) trend[i] = static_cast<double>(first + i);
        names.emplace_back("trend");
        cols.push_back(std::move(trend));
    }
    std::vector<double> ylag(rows);
    for (std::size_t i = 0; i < rows; ++i) ylag[i] = y[first + i - 1];
    const std::size_t gamma_idx = cols.size();
    names.emplace_back("y.lag");
    cols.push_back(std::move(ylag));
    for (int j = 1; j <= p; ++j) {
        std::vector<double> dlag(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            const std::size_t t = first + i - static_cast<std::size_t>(j);
            dlag[i] = y[t] - y[t - 1];
        }
        names.emplace_back("dy.lag" + std::to_string(j));
        cols.push_back(std::move(dlag));
    }
    std::vector<double> dy(rows);
    for (std::size_t i = 0; i < rows; ++i) dy[i] = y[first + i] - y[first + i - 1];

    const std::size_t k = cols.size();
    if (rows < k + 2) {
        throw SeriesTooShort("unit root regression: " + std::to_string(rows) +
                             " observations for " + std::to_string(k) + " regressors");
    }
    linalg::LstsqResult ls;
    try {
        ls = linalg::lstsq(cols, dy, names);
    } catch (const RankDeficient& e) {
        throw SingularDesign(std::string("unit root regression: ") + e.what());
    }
    DfRegression out;
    out.n_effective = static_cast<int>(rows);
    out.k = static_cast<int>(k);
    out.ssr = ls.ssr;
    out.s2 = ls.ssr / static_cast<double>(rows - k);
    out.se_gamma = std::sqrt(out.s2 * ls.xtx_inv_diag[gamma_idx]);
    out.statistic = ls.coef[gamma_idx] / out.se_gamma;
    out.residuals = std::move(ls.residuals);
    return out;
}

int default_max_lags(std::size_t n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

int default_bandwidth(std::size_t n) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

int det_terms(Deterministics det) {
    switch (det) {
        case Deterministics::none: return 0;
        case Deterministics::constant: return 1;
        case Deterministics::constant_and_trend: return 2;
    }
    return 0;
}

// Minimum-AIC lag choice over a common estimation sample.
int select_lags_aic(const std::vector<double>& y, Deterministics det, int max_p) {
    const auto n = y.size();
    // Shrink the cap until the common sample can support the largest model.
    while (max_p > 0 &&
           (n < static_cast<std::size_t>(max_p) + 2 ||
            n - static_cast<std::size_t>(max_p) - 1 <
                static_cast<std::size_t>(det_terms(det) + 1 + max_p) + 2)) {
        --max_p;
    }
    const std::size_t first = static_cast<std::size_t>(max_p) + 1;
    const std::size_t common_rows = n - first;
    int best_p = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= max_p; ++p) {
        // Fit with p lags on the common sample [first, n).
        std::vector<double> ytrim(y.begin() + static_cast<std::ptrdiff_t>(first) -
                                      static_cast<std::ptrdiff_t>(p) - 1,
                                  y.end());
        DfRegression reg;
        try {
            reg = df_regression(ytrim, det, p);
        } catch (const Error&) {
            continue;
        }
        const double t_c = static_cast<double>(common_rows);
        const double aic = t_c * std::log(reg.ssr / t_c) + 2.0 * static_cast<double>(reg.k);
        if (aic < best_aic - 1e-12) {
            best_aic = aic;
            best_p = p;
        }
    }
    return best_p;
}

void attach_decision(UnitRootResult& r, const CriticalValues& cv) {
    r.cv1 = cv.cv1;
    r.cv5 = cv.cv5;
    r.cv10 = cv.cv10;
    if (r.statistic < cv.cv1) {
        r.reject_at = 0.01;
    } else if (r.statistic < cv.cv5) {
        r.reject_at = 0.05;
    } else if (r.statistic < cv.cv10) {
        r.reject_at = 0.10;
    } else {
        r.reject_at.reset();
    }
    r.decision = r.statistic < cv.cv5 ? UnitRootDecision::stationary
                                      : UnitRootDecision::unit_root;
}

}  // namespace

CriticalValues critical_values(int n_effective, Deterministics det) {
    if (n_effective < 10) {
        throw UnsupportedSampleSize("critical values require n_effective >= 10");
    }
    const Surface* s = det == Deterministics::none            ? kTauNone
                       : det == Deterministics::constant      ? kTauConst
                                                              : kTauTrend;
    return {s[0].at(n_effective), s[1].at(n_effective), s[2].at(n_effective)};
}

CriticalValues engle_granger_critical_values(int n_effective, int n_vars, bool trend) {
    if (n_effective < 10) {
        throw UnsupportedSampleSize("critical values require n_effective >= 10");
    }
    if (n_vars < 1 || n_vars > 4) {
        throw InvalidParams("cointegration critical values tabulated for 1..4 variables");
    }
    if (n_vars == 1) {
        return critical_values(n_effective,
                               trend ? Deterministics::constant_and_trend
                                     : Deterministics::constant);
    }
    const Surface(&table)[3] = trend ? kEgTrend[n_vars - 2] : kEgConst[n_vars - 2];
    return {table[0].at(n_effective), table[1].at(n_effective), table[2].at(n_effective)};
}

UnitRootResult adf_test(const AnnualSeries& s, const UnitRootSpec& spec) {
    const std::vector<double>& y = s.values();
    int p;
    if (spec.fixed_lags) {
        p = *spec.fixed_lags;
        if (p < 0) throw InvalidParams("adf_test: fixed lag order must be >= 0");
    } else {
        p = select_lags_aic(y, spec.deterministics,
                            spec.max_lags.value_or(default_max_lags(y.size())));
    }
    const DfRegression reg = df_regression(y, spec.deterministics, p);
    UnitRootResult r;
    r.series_name = s.name();
    r.kind = UnitRootTestKind::adf;
    r.deterministics = spec.deterministics;
    r.statistic = reg.statistic;
    r.lags_used = p;
    r.n_effective = reg.n_effective;
    attach_decision(r, critical_values(reg.n_effective, spec.deterministics));
    return r;
}

UnitRootResult pp_test(const AnnualSeries& s, const UnitRootSpec& spec) {
    const DfRegression reg = df_regression(s.values(), spec.deterministics, 0);
    const auto t_eff = static_cast<std::size_t>(reg.n_effective);
    int q = spec.fixed_bandwidth ? *spec.fixed_bandwidth : default_bandwidth(t_eff);
    if (q < 0) throw InvalidParams("pp_test: bandwidth must be >= 0");
    if (static_cast<std::size_t>(q) >= t_eff) q = static_cast<int>(t_eff) - 1;

    const std::vector<double>& u = reg.residuals;
    const double t_n = static_cast<double>(t_eff);
    const double gamma0 = reg.ssr / t_n;
    double lrv = gamma0;
    for (int j = 1; j <= q; ++j) {
        double gj = 0.0;
        for (std::size_t t = static_cast<std::size_t>(j); t < t_eff; ++t) {
            gj += u[t] * u[t - static_cast<std::size_t>(j)];
        }
        gj /= t_n;
        const double w = 1.0 - static_cast<double>(j) / (static_cast<double>(q) + 1.0);
        lrv += 2.0 * w * gj;
    }
    if (!(lrv > 0.0)) {
        throw NonPositiveLongRunVariance("pp_test: long-run variance estimate is not positive");
    }

    const double z_tau =
        std::sqrt(gamma0 / lrv) * reg.statistic -
        (lrv - gamma0) * t_n * reg.se_gamma / (2.0 * std::sqrt(lrv) * std::sqrt(reg.s2));

    UnitRootResult r;
    r.series_name = s.name();
    r.kind = UnitRootTestKind::pp;
    r.deterministics = spec.deterministics;
    r.statistic = z_tau;
    r.bandwidth_used = q;
    r.n_effective = reg.n_effective;
    attach_decision(r, critical_values(reg.n_effective, spec.deterministics));
    return r;
}

IntegrationOrderResult integration_order(const AnnualSeries& s, const UnitRootSpec& spec,
                                         int max_d) {
    if (max_d < 0) throw InvalidParams("integration_order: max_d must be >= 0");
    IntegrationOrderResult out;
    AnnualSeries current = s;
    for (int d = 0; d <= max_d; ++d) {
        UnitRootResult r = spec.kind == UnitRootTestKind::pp ? pp_test(current, spec)
                                                             : adf_test(current, spec);
        out.trail.push_back(r);
        if (r.decision == UnitRootDecision::stationary) {
            out.order = d;
            return out;
        }
        if (d < max_d) current = difference(current, 1);
    }
    throw Inconclusive("integration_order: no stationarity found up to d = " +
                       std::to_string(max_d));
}

}  // namespace prodfn
