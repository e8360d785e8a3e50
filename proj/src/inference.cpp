#include "prodfn/inference.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "prodfn/dist.hpp"
#include "prodfn/errors.hpp"
#include <limits>

namespace prodfn {

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Count of integrated series in the cointegrating relation: the response plus
// every stochastic regressor (intercept, trend and dummies excluded).
int stochastic_variable_count(const FitResult& fit) {
    int count = 1;
    for (const auto& name : fit.names) {
        if (name == "const" || name == "T" || name == "WAR") continue;
        ++count;
    }
    return count;
}

}  // namespace

EngleGrangerResult engle_granger(const FitResult& fit, const UnitRootSpec& spec,
                                 bool use_cointegration_cv) {
    if (fit.residuals.size() < 10) {
        throw SeriesTooShort("engle_granger: need at least 10 residuals");
    }
    EngleGrangerResult out;
    out.n_vars = stochastic_variable_count(fit);
    out.trend_in_regression = fit.has("T");
    out.use_cointegration_cv = use_cointegration_cv;

    UnitRootSpec adf_spec = spec;
    adf_spec.kind = UnitRootTestKind::adf;
    out.adf = adf_test(fit.residuals, adf_spec);
    UnitRootSpec pp_spec = spec;
    pp_spec.kind = UnitRootTestKind::pp;
    out.pp = pp_test(fit.residuals, pp_spec);

    out.dickey_fuller_cv_adf = {out.adf.cv1, out.adf.cv5, out.adf.cv10};
    out.dickey_fuller_cv_pp = {out.pp.cv1, out.pp.cv5, out.pp.cv10};
    out.cointegration_cv_adf = engle_granger_critical_values(
        out.adf.n_effective, out.n_vars, out.trend_in_regression);
    out.cointegration_cv_pp = engle_granger_critical_values(
        out.pp.n_effective, out.n_vars, out.trend_in_regression);

    auto redecide = [](UnitRootResult& r, const CriticalValues& cv) {
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
    };
    if (use_cointegration_cv) {
        redecide(out.adf, out.cointegration_cv_adf);
        redecide(out.pp, out.cointegration_cv_pp);
    }
    out.cointegrated = out.adf.decision == UnitRootDecision::stationary &&
                       out.pp.decision == UnitRootDecision::stationary;
    return out;
}

const char* to_string(ReturnsToScaleClass c) {
    switch (c) {
        case ReturnsToScaleClass::decreasing: return "decreasing";
        case ReturnsToScaleClass::constant: return "constant";
        case ReturnsToScaleClass::increasing: return "increasing";
    }
    return "unknown";
}

const char* to_string(TechnicalChangeLabel label) {
    switch (label) {
        case TechnicalChangeLabel::progress: return "progress";
        case TechnicalChangeLabel::deterioration: return "deterioration";
        case TechnicalChangeLabel::indeterminate: return "indeterminate";
    }
    return "unknown";
}

namespace {

struct ElasticityAt {
    double eps_K, eps_L;
    double d2_K, d2_L;  // second derivatives of lnQ in lnK / lnL
};

ElasticityAt elasticity_at(const FitResult& fit, FunctionalForm form, double l_val, double k_val) {
    ElasticityAt e{0.0, 0.0, 0.0, 0.0};
    switch (form) {
        case FunctionalForm::cd_unrestricted:
        case FunctionalForm::cd_tinbergen:
            e.eps_K = fit.coef("lnK");
            e.eps_L = fit.coef("lnL");
            break;
        case FunctionalForm::cd_restricted_percapita:
        case FunctionalForm::cd_restricted_tinbergen_percapita:
            e.eps_K = fit.coef("ln(K/L)");
            e.eps_L = 1.0 - e.eps_K;
            break;
        case FunctionalForm::transcendental:
            e.eps_L = fit.coef("lnL") + fit.coef("L") * l_val;
            e.eps_K = fit.coef("lnK") + fit.coef("K") * k_val;
            e.d2_L = fit.coef("L") * l_val;
            e.d2_K = fit.coef("K") * k_val;
            break;
        case FunctionalForm::debertin:
            e.eps_L = fit.coef("lnL") + fit.coef("L") * l_val + fit.coef("K*L") * k_val * l_val;
            e.eps_K = fit.coef("lnK") + fit.coef("K") * k_val + fit.coef("K*L") * k_val * l_val;
            e.d2_L = fit.coef("L") * l_val + fit.coef("K*L") * k_val * l_val;
            e.d2_K = fit.coef("K") * k_val + fit.coef("K*L") * k_val * l_val;
            break;
        case FunctionalForm::translog:
            e.eps_L = fit.coef("lnL") + 2.0 * fit.coef("(lnL)^2") * std::log(l_val) +
                      fit.coef("lnL*lnK") * std::log(k_val);
            e.eps_K = fit.coef("lnK") + 2.0 * fit.coef("(lnK)^2") * std::log(k_val) +
                      fit.coef("lnL*lnK") * std::log(l_val);
            e.d2_L = 2.0 * fit.coef("(lnL)^2");
            e.d2_K = 2.0 * fit.coef("(lnK)^2");
            break;
    }
    return e;
}

ReturnsToScaleClass classify_rts(double rts) {
    constexpr double kTol = 1e-9;
    if (rts > 1.0 + kTol) return ReturnsToScaleClass::increasing;
    if (rts < 1.0 - kTol) return ReturnsToScaleClass::decreasing;
    return ReturnsToScaleClass::constant;
}

}  // namespace

ElasticityProfile elasticities(const FitResult& fit, FunctionalForm form, const Dataset& d,
                               EvaluationPoint at) {
    const std::vector<double>& l = d.col("L").values();
    const std::vector<double>& k = d.col("K").values();

    ElasticityProfile profile;
    profile.evaluation_point = at;
    if (at == EvaluationPoint::mean) {
        const auto e = elasticity_at(fit, form, mean_of(l), mean_of(k));
        profile.eps_K = e.eps_K;
        profile.eps_L = e.eps_L;
    } else {
        profile.eps_K_rows.resize(d.rows());
        profile.eps_L_rows.resize(d.rows());
        for (std::size_t i = 0; i < d.rows(); ++i) {
            const auto e = elasticity_at(fit, form, l[i], k[i]);
            profile.eps_K_rows[i] = e.eps_K;
            profile.eps_L_rows[i] = e.eps_L;
        }
        profile.eps_K = mean_of(profile.eps_K_rows);
        profile.eps_L = mean_of(profile.eps_L_rows);
    }
    profile.rts = profile.eps_K + profile.eps_L;
    profile.rts_class = classify_rts(profile.rts);
    return profile;
}

std::pair<double, ReturnsToScaleClass> returns_to_scale(const ElasticityProfile& profile) {
    const double value = profile.eps_K + profile.eps_L;
    return {value, classify_rts(value)};
}

TechnicalChange technical_change(const FitResult& fit, double alpha) {
    if (!fit.has("T")) {
        throw NoTrendTerm("technical_change: fit has no trend coefficient");
    }
    TechnicalChange out;
    out.gamma = fit.coef("T");
    out.t_stat = fit.t("T");
    const double df = static_cast<double>(fit.n_effective - fit.k);
    const double p = dist::student_t_two_sided(out.t_stat, df);
    if (p < alpha) {
        out.label = out.gamma > 0.0 ? TechnicalChangeLabel::progress
                                    : TechnicalChangeLabel::deterioration;
    } else {
        out.label = TechnicalChangeLabel::indeterminate;
    }
    return out;
}

RegularityReport regularity_check(const FitResult& fit, FunctionalForm form, const Dataset& d) {
    const std::vector<double>& l = d.col("L").values();
    const std::vector<double>& k = d.col("K").values();

    RegularityReport rep;
    rep.per_observation.resize(d.rows());
    std::size_t all_count = 0;
    bool zone = true;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        const auto e = elasticity_at(fit, form, l[i], k[i]);
        RegularityFlags f;
        // With Q, L, K > 0: f_L = eps_L Q / L, so sign(f_L) = sign(eps_L);
        // f_LL = Q/L^2 (d2 + eps^2 - eps), negative iff that bracket is.
        f.fL_positive = e.eps_L > 0.0;
        f.fK_positive = e.eps_K > 0.0;
        f.fLL_negative = e.d2_L + e.eps_L * e.eps_L - e.eps_L < 0.0;
        f.fKK_negative = e.d2_K + e.eps_K * e.eps_K - e.eps_K < 0.0;
        rep.per_observation[i] = f;
        if (f.all()) ++all_count;
        if (!(e.eps_K > 0.0 && e.eps_K < 1.0 && e.eps_L > 0.0 && e.eps_L < 1.0)) zone = false;
    }
    rep.share_satisfying_all = static_cast<double>(all_count) / static_cast<double>(d.rows());
    rep.economic_zone = zone;
    return rep;
}

void ReplicationParams::validate() const {
    if (!(std::fabs(rho) < 1.0)) throw InvalidParams("replication: |rho| must be < 1");
    if (n < 10) throw InvalidParams("replication: n must be >= 10");
    if (innovation_sd < 0.0 || input_sd_K < 0.0 || input_sd_L < 0.0) {
        throw InvalidParams("replication: standard deviations must be >= 0");
    }
    if (growth_K <= -1.0 || growth_L <= -1.0) {
        throw InvalidParams("replication: growth rates must exceed -100%");
    }
}

Dataset generate_replication_dataset(const ReplicationParams& params, std::uint64_t seed) {
    params.validate();
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto n = static_cast<std::size_t>(params.n);

    // Drifting random walks for the logged inputs; drift = log(1 + growth)
    // so the level series compounds at the target average rate.
    std::vector<double> lnk(n), lnl(n);
    lnk[0] = params.lnK0;
    lnl[0] = params.lnL0;
    const double drift_k = std::log1p(params.growth_K);
    const double drift_l = std::log1p(params.growth_L);
    for (std::size_t t = 1; t < n; ++t) {
        lnk[t] = lnk[t - 1] + drift_k + params.input_sd_K * gauss(gen);
    }
    for (std::size_t t = 1; t < n; ++t) {
        lnl[t] = lnl[t - 1] + drift_l + params.input_sd_L * gauss(gen);
    }

    // AR(1) disturbance built forward from the sample start.
    std::vector<double> u(n, 0.0);
    if (params.innovation_sd > 0.0) {
        u[0] = params.innovation_sd * gauss(gen);
        for (std::size_t t = 1; t < n; ++t) {
            u[t] = params.rho * u[t - 1] + params.innovation_sd * gauss(gen);
        }
    }

    std::vector<double> q(n), l(n), k(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double lnq = params.intercept + params.coef_lnK * lnk[t] +
                           params.coef_lnL * lnl[t] + params.coef_T * static_cast<double>(t) +
                           u[t];
        q[t] = std::exp(lnq);
        l[t] = std::exp(lnl[t]);
        k[t] = std::exp(lnk[t]);
    }
    return align({AnnualSeries("Q", params.start_year, std::move(q)),
                  AnnualSeries("L", params.start_year, std::move(l)),
                  AnnualSeries("K", params.start_year, std::move(k))});
}

namespace {

// Adjusted R2 measured against the common response ln Q (on the fit's own
// estimation scale), so per-capita forms compete on the same footing as the
// others: their SSR is already in ln-output units, only the reference total
// sum of squares has to be rebuilt.
double comparable_adj_r2(const FitResult& fit, const Dataset& d) {
    const std::vector<double>& q = d.col("Q").values();
    std::vector<double> ref;
    ref.reserve(q.size());
    if (fit.rho) {
        const double rho = fit.rho->rho;
        for (std::size_t t = 1; t < q.size(); ++t) {
            ref.push_back(std::log(q[t]) - rho * std::log(q[t - 1]));
        }
    } else {
        for (double v : q) ref.push_back(std::log(v));
    }
    const double mean = mean_of(ref);
    double sst = 0.0;
    for (double v : ref) sst += (v - mean) * (v - mean);
    if (sst <= 0.0) return 0.0;
    const double n1 = static_cast<double>(ref.size());
    const double df = static_cast<double>(fit.f_df2 > 0 ? fit.f_df2
                                                        : fit.n_effective - fit.k);
    return 1.0 - (fit.ssr / df) / (sst / (n1 - 1.0));
}

ScanRow evaluate_spec(const Dataset& d, const ModelSpec& spec, const ScanWeights& weights,
                      double alpha) {
    ScanRow row;
    row.spec = spec;
    try {
        const DesignMatrix design = build_design(d, spec);
        const FitResult fit =
            spec.ar_error_order == 1 ? estimate_ar1(design) : ols(design);

        const ElasticityProfile profile = elasticities(fit, spec.form, d);
        const RegularityReport reg = regularity_check(fit, spec.form, d);
        row.zone_share = reg.share_satisfying_all;

        const double df = static_cast<double>(fit.n_effective - fit.k);
        std::size_t considered = 0;
        std::size_t significant = 0;
        for (std::size_t j = 0; j < fit.names.size(); ++j) {
            if (fit.names[j] == "const") continue;
            ++considered;
            if (dist::student_t_two_sided(fit.t_stats[j], df) < alpha) ++significant;
        }
        row.significant_share =
            considered > 0 ? static_cast<double>(significant) / considered : 0.0;

        const DiagnosticsReport diag = run_diagnostics(fit, design, 2, alpha);
        const int passed = (diag.bg.p_value > alpha ? 1 : 0) +
                           (diag.bpg.p_value > alpha ? 1 : 0) +
                           (diag.jb.p_value > alpha ? 1 : 0);
        row.diagnostics_passed = passed / 3.0;
        row.adj_r2 = std::clamp(comparable_adj_r2(fit, d), 0.0, 1.0);

        row.score = weights.economic_zone * row.zone_share +
                    weights.significance * row.significant_share +
                    weights.diagnostics * row.diagnostics_passed + weights.adj_r2 * row.adj_r2;
        row.fit = fit;
        row.elasticity = profile;
        row.ok = true;
    } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
        row.score = -std::numeric_limits<double>::infinity();
    }
    return row;
}

}  // namespace

ScanResult model_selection_scan(const Dataset& d, const std::vector<ModelSpec>& specs,
                                const ScanWeights& weights, double alpha, int threads) {
    if (specs.empty()) {
        throw InvalidParams("model_selection_scan: need at least one specification");
    }
    ScanResult out;
    out.weights = weights;
    out.alpha = alpha;
    out.rows.resize(specs.size());

    if (threads <= 1 || specs.size() == 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            out.rows[i] = evaluate_spec(d, specs[i], weights, alpha);
        }
    } else {
        const std::size_t batch =
            (specs.size() + static_cast<std::size_t>(threads) - 1) /
            static_cast<std::size_t>(threads);
        std::vector<std::future<void>> jobs;
        for (std::size_t start = 0; start < specs.size(); start += batch) {
            const std::size_t stop = std::min(specs.size(), start + batch);
            jobs.push_back(std::async(std::launch::async, [&, start, stop] {
                for (std::size_t i = start; i < stop; ++i) {
                    out.rows[i] = evaluate_spec(d, specs[i], weights, alpha);
                }
            }));
        }
        for (auto& j : jobs) j.get();
    }

    std::stable_sort(out.rows.begin(), out.rows.end(), [](const ScanRow& a, const ScanRow& b) {
        if (a.ok != b.ok) return a.ok;
        return a.score > b.score;
    });
    return out;
}

}  // namespace prodfn
