#include "prodfn/construction.hpp"

#include <cmath>
#include <utility>

#include "prodfn/errors.hpp"

namespace prodfn {

void PerpetualInventoryConfig::validate() const {
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw InvalidParams("perpetual inventory: delta must lie in [0,1)");
    }
    if (!(seed_capital > 0.0)) {
        throw InvalidParams("perpetual inventory: seed capital must be positive");
    }
}

BenchmarkTable::BenchmarkTable(std::map<int, double> observations) : obs_(std::move(observations)) {
    if (obs_.size() < 2) {
        throw TooFewBenchmarks("benchmark table needs at least two entries");
    }
    for (const auto& [year, value] : obs_) {
        if (!(value > 0.0)) {
            throw NonPositiveValue("benchmark value at year " + std::to_string(year) +
                                   " must be positive");
        }
    }
}

AnnualSeries extend_capital_stock(const AnnualSeries& existing, const AnnualSeries& investment,
                                  const PerpetualInventoryConfig& cfg) {
    if (!(cfg.delta >= 0.0 && cfg.delta < 1.0)) {
        throw InvalidParams("perpetual inventory: delta must lie in [0,1)");
    }
    const int first_new = existing.end_year() + 1;
    const int last_new = investment.end_year();
    if (last_new < first_new) {
        // Nothing to synthesize.
        return existing;
    }
    if (investment.start_year() > first_new) {
        throw DiscontinuousSpan("investment starts at " +
                                std::to_string(investment.start_year()) +
                                " but capital extension begins at " + std::to_string(first_new));
    }
    std::vector<double> values = existing.values();
    double k = values.back();
    for (int year = first_new; year <= last_new; ++year) {
        if (!investment.covers(year)) {
            throw MissingInvestment("no investment value for year " + std::to_string(year));
        }
        k = (1.0 - cfg.delta) * k + investment.at_year(year);
        values.push_back(k);
    }
    return AnnualSeries(existing.name(), existing.start_year(), std::move(values));
}

AnnualSeries geometric_interpolate(const BenchmarkTable& benchmarks, const std::string& name) {
    const auto& obs = benchmarks.observations();
    const int first = obs.begin()->first;
    const int last = obs.rbegin()->first;
    std::vector<double> values(static_cast<std::size_t>(last - first + 1));

    auto it = obs.begin();
    auto next = std::next(it);
    for (; next != obs.end(); ++it, ++next) {
        const auto [a, la] = *it;
        const auto [b, lb] = *next;
        const double m = std::pow(lb / la, 1.0 / static_cast<double>(b - a)) - 1.0;
        values[static_cast<std::size_t>(a - first)] = la;
        for (int t = a + 1; t < b; ++t) {
            values[static_cast<std::size_t>(t - first)] =
                la * std::pow(1.0 + m, static_cast<double>(t - a));
        }
    }
    // Benchmark years carry census values exactly.
    for (const auto& [year, value] : obs) {
        values[static_cast<std::size_t>(year - first)] = value;
    }
    return AnnualSeries(name, first, std::move(values));
}

Dataset assemble_dataset(const AnnualSeries& q, const AnnualSeries& l, const AnnualSeries& k) {
    return align({q.renamed("Q"), l.renamed("L"), k.renamed("K")});
}

}  // namespace prodfn
