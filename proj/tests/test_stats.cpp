#include <doctest.h>

#include <cmath>
#include <vector>

#include "tdoslab/stats.hpp"

using namespace tdoslab;

TEST_CASE("mean and sample standard deviation") {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    CHECK(mean(xs) == 2.5);
    CHECK(sample_std(xs) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
    CHECK(sample_std(std::vector<double>{7.0}) == 0.0);
}

TEST_CASE("student t quantiles match the published table") {
    // two-sided 99% CIs use the 0.995 point
    CHECK(student_t_quantile(0.995, 4) == doctest::Approx(4.604095).epsilon(2e-5));
    CHECK(student_t_quantile(0.995, 29) == doctest::Approx(2.756386).epsilon(2e-5));
    CHECK(student_t_quantile(0.995, 99) == doctest::Approx(2.626405).epsilon(2e-5));
    CHECK(student_t_quantile(0.975, 10) == doctest::Approx(2.228139).epsilon(2e-5));
    CHECK(student_t_quantile(0.5, 12) == 0.0);
    CHECK(student_t_quantile(0.005, 4) == doctest::Approx(-4.604095).epsilon(2e-5));
}

TEST_CASE("t CDF is a proper distribution function") {
    for (double df : {1.0, 2.0, 5.0, 30.0, 200.0}) {
        CHECK(student_t_cdf(0.0, df) == 0.5);
        double prev = 0.0;
        for (double t = -8.0; t <= 8.0; t += 0.25) {
            const double c = student_t_cdf(t, df);
            CHECK(c >= prev - 1e-12);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
            prev = c;
        }
        // quantile inverts the CDF
        for (double p : {0.6, 0.9, 0.975, 0.999})
            CHECK(student_t_cdf(student_t_quantile(p, df), df) == doctest::Approx(p).epsilon(1e-9));
    }
}
