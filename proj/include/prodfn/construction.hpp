#ifndef PRODFN_CONSTRUCTION_HPP
#define PRODFN_CONSTRUCTION_HPP

#include <map>

#include "prodfn/series.hpp"

namespace prodfn {

/// Settings for recursive capital-stock extension K_t = (1-delta)K_{t-1} + I_t.
struct PerpetualInventoryConfig {
    double delta = 0.047;  // annual depreciation rate
    int seed_year = 0;
    double seed_capital = 0.0;

    void validate() const;
};

/// Census benchmarks, possibly non-consecutive: year -> observed level.
/// The associative key order supplies the "strictly increasing years" invariant.
class BenchmarkTable {
public:
    explicit BenchmarkTable(std::map<int, double> observations);

    const std::map<int, double>& observations() const noexcept { return obs_; }
    std::size_t size() const noexcept { return obs_.size(); }

private:
    std::map<int, double> obs_;
};

// Extends `existing` forward using investment flows: for each year past the end
// of `existing`, K_t = (1-delta) K_{t-1} + I_t, until investment runs out.
// The investment series must cover every synthesized year and start no later
// than the first year to synthesize.
AnnualSeries extend_capital_stock(const AnnualSeries& existing, const AnnualSeries& investment,
                                  const PerpetualInventoryConfig& cfg);

// Fills the interior gaps between consecutive benchmarks at the constant
// growth rate m = (L_b/L_a)^(1/(b-a)) - 1, so L_t = L_a (1+m)^(t-a).
// Benchmark years carry their census values unchanged. No extrapolation
// beyond the first/last benchmark.
AnnualSeries geometric_interpolate(const BenchmarkTable& benchmarks,
                                   const std::string& name = "L");

// Aligns value added, employment, and capital stock and attaches the trend
// column; columns are named Q, L, K, T.
Dataset assemble_dataset(const AnnualSeries& q, const AnnualSeries& l, const AnnualSeries& k);

}  // namespace prodfn

#endif  // PRODFN_CONSTRUCTION_HPP
