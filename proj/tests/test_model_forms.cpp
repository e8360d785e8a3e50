#include "prodfn/model_forms.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "prodfn/errors.hpp"
#include "prodfn/estimation.hpp"
#include "prodfn/series.hpp"

using namespace prodfn;

namespace {

Dataset make_dataset(std::vector<double> q, std::vector<double> l, std::vector<double> k,
                     int start_year = 1976) {
    return align({AnnualSeries("Q", start_year, std::move(q)),
                  AnnualSeries("L", start_year, std::move(l)),
                  AnnualSeries("K", start_year, std::move(k))});
}

}  // namespace

TEST_CASE("tinbergen design over 31 rows has the documented shape") {
    std::vector<double> q(31), l(31), k(31);
    for (int i = 0; i < 31; ++i) {
        q[i] = 10.0 + i;
        l[i] = 5.0 + 0.1 * i;
        k[i] = 20.0 + 2.0 * i;
    }
    auto design = build_design(make_dataset(q, l, k), {FunctionalForm::cd_tinbergen});
    CHECK(design.rows() == 31);
    CHECK(design.k() == 4);
    CHECK(design.names == std::vector<std::string>{"const", "lnK", "lnL", "T"});
    CHECK(design.response_name == "lnQ");
    CHECK(design.col("const").front() == 1.0);
    CHECK(design.col("T").back() == 30.0);
    CHECK(design.col("lnK")[0] == doctest::Approx(std::log(20.0)).epsilon(1e-15));
}

TEST_CASE("translog row with L = K = e is all ones") {
    const double e = std::exp(1.0);
    auto design = build_design(make_dataset({2.0}, {e}, {e}), {FunctionalForm::translog});
    CHECK(design.names == std::vector<std::string>{"const", "lnL", "(lnL)^2", "lnK", "(lnK)^2",
                                                   "lnL*lnK"});
    for (const auto& col : design.columns) {
        CHECK(col[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("debertin row matches hand construction") {
    auto design = build_design(make_dataset({2.0}, {2.0}, {3.0}), {FunctionalForm::debertin});
    CHECK(design.names ==
          std::vector<std::string>{"const", "lnL", "lnK", "L", "K", "K*L"});
    CHECK(design.col("const")[0] == 1.0);
    CHECK(design.col("lnL")[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(design.col("lnK")[0] == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(design.col("L")[0] == 2.0);
    CHECK(design.col("K")[0] == 3.0);
    CHECK(design.col("K*L")[0] == 6.0);
}

TEST_CASE("every form emits exactly its own regressors") {
    std::vector<double> q(8), l(8), k(8);
    for (int i = 0; i < 8; ++i) {
        q[i] = 3.0 + i;
        l[i] = 1.5 + 0.2 * i;
        k[i] = 6.0 + i;
    }
    auto d = make_dataset(q, l, k);
    using F = FunctionalForm;
    CHECK(build_design(d, {F::cd_unrestricted}).names ==
          std::vector<std::string>{"const", "lnK", "lnL"});
    CHECK(build_design(d, {F::cd_restricted_percapita}).names ==
          std::vector<std::string>{"const", "ln(K/L)"});
    CHECK(build_design(d, {F::cd_restricted_tinbergen_percapita}).names ==
          std::vector<std::string>{"const", "ln(K/L)", "T"});
    CHECK(build_design(d, {F::transcendental}).names ==
          std::vector<std::string>{"const", "L", "lnL", "K", "lnK"});
    auto pc = build_design(d, {F::cd_restricted_percapita});
    CHECK(pc.response_name == "ln(Q/L)");
    CHECK(pc.response[0] == doctest::Approx(std::log(q[0] / l[0])).epsilon(1e-14));
    CHECK(pc.col("ln(K/L)")[0] == doctest::Approx(std::log(k[0] / l[0])).epsilon(1e-14));
}

TEST_CASE("war dummy marks 1980 through 1988") {
    auto w = war_dummy(1976, 2006);
    int ones = 0;
    for (double v : w.values()) ones += v == 1.0 ? 1 : 0;
    CHECK(ones == 9);
    CHECK(w.at_year(1979) == 0.0);
    CHECK(w.at_year(1980) == 1.0);
    CHECK(w.at_year(1988) == 1.0);
    CHECK(w.at_year(1989) == 0.0);

    auto none = war_dummy(1990, 2006);
    for (double v : none.values()) CHECK(v == 0.0);

    auto single = war_dummy(1980, 1980);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 1.0);
}

TEST_CASE("war dummy column appends when requested") {
    std::vector<double> q(31, 2.0), l(31, 3.0), k(31, 4.0);
    ModelSpec spec;
    spec.form = FunctionalForm::cd_tinbergen;
    spec.include_war_dummy = true;
    auto design = build_design(make_dataset(q, l, k), spec);
    CHECK(design.names.back() == "WAR");
    double sum = 0.0;
    for (double v : design.col("WAR")) sum += v;
    CHECK(sum == 9.0);
}

TEST_CASE("restricted per-capita form equals the unrestricted fit under the constraint") {
    // Generate data satisfying beta + theta = 1 exactly, no noise:
    // lnQ = a + b lnK + (1-b) lnL  <=>  ln(Q/L) = a + b ln(K/L).
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> unif(1.0, 9.0);
    const double a = 0.3, b = 0.55;
    std::vector<double> q(20), l(20), k(20);
    for (int i = 0; i < 20; ++i) {
        l[i] = unif(gen);
        k[i] = unif(gen);
        q[i] = std::exp(a + b * std::log(k[i]) + (1.0 - b) * std::log(l[i]));
    }
    auto d = make_dataset(q, l, k);
    auto restricted = ols(build_design(d, {FunctionalForm::cd_restricted_percapita}));
    CHECK(restricted.coef("const") == doctest::Approx(a).epsilon(1e-9));
    CHECK(restricted.coef("ln(K/L)") == doctest::Approx(b).epsilon(1e-9));
    // The same numbers written as the unrestricted form reproduce lnQ exactly.
    auto unrestricted = ols(build_design(d, {FunctionalForm::cd_unrestricted}));
    CHECK(unrestricted.coef("lnK") == doctest::Approx(b).epsilon(1e-7));
    CHECK(unrestricted.coef("lnL") == doctest::Approx(1.0 - b).epsilon(1e-7));
}

TEST_CASE("design construction is deterministic and column-order stable") {
    std::vector<double> q(10, 2.5), l(10, 1.5), k(10, 3.5);
    auto d = make_dataset(q, l, k);
    auto a = build_design(d, {FunctionalForm::translog});
    auto b = build_design(d, {FunctionalForm::translog});
    CHECK(a.names == b.names);
    CHECK(a.columns == b.columns);
    CHECK(a.response == b.response);
}

TEST_CASE("non-positive inputs are rejected") {
    auto d = make_dataset({1.0, 2.0}, {0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(build_design(d, {FunctionalForm::cd_unrestricted}), NonPositiveValue);
}

TEST_CASE("form names round-trip") {
    for (FunctionalForm f : all_functional_forms()) {
        CHECK(functional_form_from_string(to_string(f)) == f);
    }
    CHECK_THROWS_AS(functional_form_from_string("ces"), ConfigError);
}
