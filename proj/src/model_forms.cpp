#include "prodfn/model_forms.hpp"

#include <algorithm>
#include <cmath>

#include "prodfn/errors.hpp"

namespace prodfn {

const char* to_string(FunctionalForm form) {
    switch (form) {
        case FunctionalForm::cd_unrestricted: return "cd_unrestricted";
        case FunctionalForm::cd_tinbergen: return "cd_tinbergen";
        case FunctionalForm::cd_restricted_percapita: return "cd_restricted_percapita";
        case FunctionalForm::cd_restricted_tinbergen_percapita:
            return "cd_restricted_tinbergen_percapita";
        case FunctionalForm::transcendental: return "transcendental";
        case FunctionalForm::debertin: return "debertin";
        case FunctionalForm::translog: return "translog";
    }
    return "unknown";
}

FunctionalForm functional_form_from_string(const std::string& name) {
    for (FunctionalForm f : all_functional_forms()) {
        if (name == to_string(f)) return f;
    }
    throw ConfigError("unknown functional form '" + name + "'");
}

std::vector<FunctionalForm> all_functional_forms() {
    return {FunctionalForm::cd_unrestricted,
            FunctionalForm::cd_tinbergen,
            FunctionalForm::cd_restricted_percapita,
            FunctionalForm::cd_restricted_tinbergen_percapita,
            FunctionalForm::transcendental,
            FunctionalForm::debertin,
            FunctionalForm::translog};
}

void ModelSpec::validate() const {
    if (ar_error_order != 0 && ar_error_order != 1) {
        throw InvalidParams("ar_error_order must be 0 or 1");
    }
    if (war_last_year < war_first_year) {
        throw InvalidParams("war dummy span is empty");
    }
}

bool DesignMatrix::has(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& DesignMatrix::col(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return columns[j];
    }
    throw SchemaMismatch("design has no column '" + name + "'");
}

AnnualSeries war_dummy(int span_start, int span_end, int first_year, int last_year) {
    if (span_end < span_start) {
        throw InvalidParams("war dummy: empty year span");
    }
    std::vector<double> values(static_cast<std::size_t>(span_end - span_start + 1), 0.0);
    for (int y = std::max(span_start, first_year); y <= std::min(span_end, last_year); ++y) {
        values[static_cast<std::size_t>(y - span_start)] = 1.0;
    }
    return AnnualSeries("WAR", span_start, std::move(values));
}

namespace {

std::vector<double> log_of(const std::vector<double>& v, const std::string& name) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= 0.0) {
            throw NonPositiveValue("design requires strictly positive " + name);
        }
        out[i] = std::log(v[i]);
    }
    return out;
}

}  // namespace

DesignMatrix build_design(const Dataset& d, const ModelSpec& spec) {
    spec.validate();
    if (d.rows() == 0) {
        throw EmptyDataset("cannot build a design from an empty dataset");
    }
    const auto n = d.rows();
    const std::vector<double>& q = d.col("Q").values();
    const std::vector<double>& l = d.col("L").values();
    const std::vector<double>& k = d.col("K").values();
    const std::vector<double>& t = d.col("T").values();

    const std::vector<double> lnq = log_of(q, "Q");
    const std::vector<double> lnl = log_of(l, "L");
    const std::vector<double> lnk = log_of(k, "K");

    DesignMatrix m;
    m.start_year = d.start_year();
    m.names.push_back("const");
    m.columns.emplace_back(n, 1.0);

    auto add = [&m](const std::string& name, std::vector<double> col) {
        m.names.push_back(name);
        m.columns.push_back(std::move(col));
    };
    auto combine = [n](const std::vector<double>& a, const std::vector<double>& b, auto op) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = op(a[i], b[i]);
        return out;
    };
    const auto minus = [](double a, double b) { return a - b; };
    const auto times = [](double a, double b) { return a * b; };

    switch (spec.form) {
        case FunctionalForm::cd_unrestricted:
            m.response_name = "lnQ";
            m.response = lnq;
            add("lnK", lnk);
            add("lnL", lnl);
            break;
        case FunctionalForm::cd_tinbergen:
            m.response_name = "lnQ";
            m.response = lnq;
            add("lnK", lnk);
            add("lnL", lnl);
            add("T", t);
            break;
        case FunctionalForm::cd_restricted_percapita:
            m.response_name = "ln(Q/L)";
            m.response = combine(lnq, lnl, minus);
            add("ln(K/L)", combine(lnk, lnl, minus));
            break;
        case FunctionalForm::cd_restricted_tinbergen_percapita:
            m.response_name = "ln(Q/L)";
            m.response = combine(lnq, lnl, minus);
            add("ln(K/L)", combine(lnk, lnl, minus));
            add("T", t);
            break;
        case FunctionalForm::transcendental:
            m.response_name = "lnQ";
            m.response = lnq;
            add("L", l);
            add("lnL", lnl);
            add("K", k);
            add("lnK", lnk);
            break;
        case FunctionalForm::debertin:
            m.response_name = "lnQ";
            m.response = lnq;
            add("lnL", lnl);
            add("lnK", lnk);
            add("L", l);
            add("K", k);
            add("K*L", combine(k, l, times));
            break;
        case FunctionalForm::translog:
            m.response_name = "lnQ";
            m.response = lnq;
            add("lnL", lnl);
            add("(lnL)^2", combine(lnl, lnl, times));
            add("lnK", lnk);
            add("(lnK)^2", combine(lnk, lnk, times));
            add("lnL*lnK", combine(lnl, lnk, times));
            break;
    }

    if (spec.include_war_dummy) {
        const AnnualSeries dummy =
            war_dummy(d.start_year(), d.end_year(), spec.war_first_year, spec.war_last_year);
        add("WAR", dummy.values());
    }
    return m;
}

}  // namespace prodfn
