#include "prodfn/series.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "prodfn/errors.hpp"

namespace prodfn {

AnnualSeries::AnnualSeries(std::string name, int start_year, std::vector<double> values)
    : name_(std::move(name)), start_year_(start_year), values_(std::move(values)) {
    if (values_.empty()) {
        throw InvalidParams("series '" + name_ + "': must contain at least one value");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw NonFiniteValue("series '" + name_ + "': non-finite value at year " +
                                 std::to_string(start_year_ + static_cast<int>(i)));
        }
    }
}

double AnnualSeries::at_year(int year) const {
    if (!covers(year)) {
        throw InvalidParams("series '" + name_ + "': year " + std::to_string(year) +
                            " outside span " + std::to_string(start_year_) + "-" +
                            std::to_string(end_year()));
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

AnnualSeries AnnualSeries::renamed(std::string new_name) const {
    return AnnualSeries(std::move(new_name), start_year_, values_);
}

Dataset::Dataset(std::vector<AnnualSeries> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw EmptyDataset("dataset must contain at least one column");
    }
    for (const auto& c : columns_) {
        if (c.start_year() != columns_.front().start_year() ||
            c.size() != columns_.front().size()) {
            throw SchemaMismatch("dataset column '" + c.name() + "' span differs from '" +
                                 columns_.front().name() + "'");
        }
    }
}

bool Dataset::has(const std::string& name) const {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const AnnualSeries& c) { return c.name() == name; });
}

const AnnualSeries& Dataset::col(const std::string& name) const {
    for (const auto& c : columns_) {
        if (c.name() == name) return c;
    }
    throw SchemaMismatch("dataset has no column '" + name + "'");
}

AnnualSeries log_transform(const AnnualSeries& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= 0.0) {
            throw NonPositiveValue("log of series '" + s.name() + "': value " +
                                   std::to_string(s[i]) + " at year " +
                                   std::to_string(s.start_year() + static_cast<int>(i)));
        }
        out[i] = std::log(s[i]);
    }
    return AnnualSeries("ln" + s.name(), s.start_year(), std::move(out));
}

AnnualSeries difference(const AnnualSeries& s, int order) {
    if (order < 1) {
        throw InvalidParams("difference order must be >= 1");
    }
    if (s.size() <= static_cast<std::size_t>(order)) {
        throw SeriesTooShort("series '" + s.name() + "': length " + std::to_string(s.size()) +
                             " too short for difference order " + std::to_string(order));
    }
    std::vector<double> cur = s.values();
    for (int d = 0; d < order; ++d) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            next[i] = cur[i + 1] - cur[i];
        }
        cur = std::move(next);
    }
    std::string name = order == 1 ? "d(" + s.name() + ")"
                                  : "d" + std::to_string(order) + "(" + s.name() + ")";
    return AnnualSeries(std::move(name), s.start_year() + order, std::move(cur));
}

AnnualSeries lag(const AnnualSeries& s, int k) {
    if (k < 1) {
        throw InvalidParams("lag must be >= 1");
    }
    if (s.size() <= static_cast<std::size_t>(k)) {
        throw SeriesTooShort("series '" + s.name() + "': length " + std::to_string(s.size()) +
                             " too short for lag " + std::to_string(k));
    }
    std::vector<double> out(s.values().begin(), s.values().end() - k);
    return AnnualSeries(s.name() + "(-" + std::to_string(k) + ")", s.start_year() + k,
                        std::move(out));
}

Dataset align(const std::vector<AnnualSeries>& series) {
    if (series.empty()) {
        throw EmptyDataset("align requires at least one series");
    }
    int lo = series.front().start_year();
    int hi = series.front().end_year();
    for (const auto& s : series) {
        lo = std::max(lo, s.start_year());
        hi = std::min(hi, s.end_year());
    }
    if (lo > hi) {
        throw EmptyIntersection("aligned series share no common year");
    }
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    std::vector<AnnualSeries> cols;
    cols.reserve(series.size() + 1);
    for (const auto& s : series) {
        const auto off = static_cast<std::size_t>(lo - s.start_year());
        std::vector<double> v(s.values().begin() + off, s.values().begin() + off + n);
        cols.emplace_back(s.name(), lo, std::move(v));
    }
    std::vector<double> trend(n);
    for (std::size_t i = 0; i < n; ++i) trend[i] = static_cast<double>(i);
    cols.emplace_back("T", lo, std::move(trend));
    return Dataset(std::move(cols));
}

double cagr(const AnnualSeries& s) {
    if (s.size() < 2) {
        throw SeriesTooShort("cagr of series '" + s.name() + "': need at least two values");
    }
    const double first = s.values().front();
    const double last = s.values().back();
    if (first <= 0.0 || last <= 0.0) {
        throw NonPositiveValue("cagr of series '" + s.name() +
                               "': endpoints must be strictly positive");
    }
    const double years = static_cast<double>(s.size() - 1);
    return std::pow(last / first, 1.0 / years) - 1.0;
}

double mean_annual_growth(const AnnualSeries& s) {
    if (s.size() < 2) {
        throw SeriesTooShort("mean growth of series '" + s.name() +
                             "': need at least two values");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i - 1] <= 0.0) {
            throw NonPositiveValue("mean growth of series '" + s.name() +
                                   "': non-positive value at year " +
                                   std::to_string(s.start_year() + static_cast<int>(i) - 1));
        }
        sum += s[i] / s[i - 1] - 1.0;
    }
    return sum / static_cast<double>(s.size() - 1);
}

}  // namespace prodfn
