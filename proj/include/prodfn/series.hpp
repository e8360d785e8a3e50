#ifndef PRODFN_SERIES_HPP
#define PRODFN_SERIES_HPP

#include <string>
#include <vector>

namespace prodfn {

/// A named series of annual observations over consecutive calendar years.
/// Construction validates the two structural invariants: at least one value,
/// and every value finite. Gaps are never represented here; incomplete census
/// data lives in BenchmarkTable (construction.hpp) until it has been filled.
class AnnualSeries {
public:
    AnnualSeries(std::string name, int start_year, std::vector<double> values);

    const std::string& name() const noexcept { return name_; }
    int start_year() const noexcept { return start_year_; }
    int end_year() const noexcept { return start_year_ + static_cast<int>(size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator[](std::size_t i) const { return values_[i]; }
    bool covers(int year) const noexcept { return year >= start_year_ && year <= end_year(); }
    double at_year(int year) const;

    AnnualSeries renamed(std::string new_name) const;

private:
    std::string name_;
    int start_year_;
    std::vector<double> values_;
};

/// Aligned columns over one common year range, plus the deterministic trend
/// column T = 0,1,2,... that align() attaches.
class Dataset {
public:
    Dataset(std::vector<AnnualSeries> columns);  // all spans must already agree

    int start_year() const noexcept { return columns_.front().start_year(); }
    int end_year() const noexcept { return columns_.front().end_year(); }
    std::size_t rows() const noexcept { return columns_.front().size(); }
    std::size_t n_columns() const noexcept { return columns_.size(); }

    bool has(const std::string& name) const;
    const AnnualSeries& col(const std::string& name) const;
    const std::vector<AnnualSeries>& columns() const noexcept { return columns_; }

private:
    std::vector<AnnualSeries> columns_;
};

// Element-wise natural logarithm; throws NonPositiveValue naming the first
// offending year.
AnnualSeries log_transform(const AnnualSeries& s);

// d_t = v_t - v_{t-1}, applied `order` times; span start advances by `order`.
AnnualSeries difference(const AnnualSeries& s, int order = 1);

// Year t carries v_{t-k}; the aligned span shrinks by k at the front.
AnnualSeries lag(const AnnualSeries& s, int k);

// Trims all series to the common year range and attaches the trend column T.
Dataset align(const std::vector<AnnualSeries>& series);

// Compound average growth rate (last/first)^(1/(n-1)) - 1.
double cagr(const AnnualSeries& s);

// Arithmetic mean of the annual growth rates v_t/v_{t-1} - 1. Kept alongside
// cagr because published "average annual growth rate" tables rarely say which
// convention they used.
double mean_annual_growth(const AnnualSeries& s);

}  // namespace prodfn

#endif  // PRODFN_SERIES_HPP
