#include "prodfn/dist.hpp"

#include <cmath>

#include "doctest.h"
#include "prodfn/errors.hpp"

using namespace prodfn::dist;

// Reference values from published tables / high-precision evaluations.

TEST_CASE("chi-square upper tail matches table points") {
    CHECK(chisq_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(chisq_sf(5.991464547107979, 2.0) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(chisq_sf(9.487729036781154, 4.0) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(chisq_sf(6.634896601021213, 1.0) == doctest::Approx(0.01).epsilon(1e-10));
    // df = 2 reduces to exp(-x/2).
    for (double x : {0.5, 1.0, 2.0, 7.3}) {
        CHECK(chisq_sf(x, 2.0) == doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-12));
    }
    CHECK(chisq_sf(0.0, 3.0) == 1.0);
}

TEST_CASE("F upper tail matches table points") {
    // F(0.05; 3, 26) = 2.9752...; F(0.05; 1, 10) = 4.9646...
    CHECK(f_sf(2.975154, 3.0, 26.0) == doctest::Approx(0.05).epsilon(1e-5));
    CHECK(f_sf(4.964603, 1.0, 10.0) == doctest::Approx(0.05).epsilon(1e-5));
    CHECK(f_sf(0.0, 2.0, 5.0) == 1.0);
}

TEST_CASE("student t relations") {
    // Two-sided 5% point at 26 df is 2.0555...
    CHECK(student_t_two_sided(2.055529, 26.0) == doctest::Approx(0.05).epsilon(1e-5));
    CHECK(student_t_sf(0.0, 12.0) == doctest::Approx(0.5).epsilon(1e-12));
    // t^2 with df d equals F(1, d).
    for (double t : {0.7, 1.5, 2.2}) {
        CHECK(student_t_two_sided(t, 9.0) ==
              doctest::Approx(f_sf(t * t, 1.0, 9.0)).epsilon(1e-10));
    }
    // Symmetry.
    CHECK(student_t_sf(-1.3, 7.0) == doctest::Approx(1.0 - student_t_sf(1.3, 7.0)).epsilon(1e-12));
}

TEST_CASE("t quantile inverts the tail") {
    for (double df : {5.0, 25.0, 100.0}) {
        for (double p : {0.9, 0.95, 0.975, 0.995}) {
            const double t = student_t_ppf(p, df);
            CHECK(1.0 - student_t_sf(t, df) == doctest::Approx(p).epsilon(1e-9));
        }
    }
    CHECK(student_t_ppf(0.5, 10.0) == 0.0);
    CHECK_THROWS_AS(student_t_ppf(0.0, 5.0), prodfn::InvalidParams);
}

TEST_CASE("normal tails") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_sf(1.959963984540054) == doctest::Approx(0.025).epsilon(1e-10));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
}

TEST_CASE("incomplete gamma and beta basics") {
    CHECK(gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(gamma_p(2.5, 0.0) == 0.0);
    CHECK(gamma_q(2.5, 0.0) == 1.0);
    CHECK(beta_inc(2.0, 3.0, 0.0) == 0.0);
    CHECK(beta_inc(2.0, 3.0, 1.0) == 1.0);
    // I_x(1,1) = x.
    for (double x : {0.1, 0.4, 0.9}) {
        CHECK(beta_inc(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
    }
    // Complement identity I_x(a,b) = 1 - I_{1-x}(b,a).
    CHECK(beta_inc(3.5, 1.25, 0.3) ==
          doctest::Approx(1.0 - beta_inc(1.25, 3.5, 0.7)).epsilon(1e-12));
}

TEST_CASE("p-values are monotone in the statistic") {
    double prev = 1.0;
    for (double x = 0.5; x < 30.0; x += 0.5) {
        const double p = chisq_sf(x, 4.0);
        CHECK(p < prev);
        prev = p;
    }
}
