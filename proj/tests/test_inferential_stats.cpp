#include <doctest.h>

#include <cmath>
#include <vector>

#include "advisory/errors.hpp"
#include "advisory/inferential_stats.hpp"
#include "advisory/rng.hpp"

using namespace advisory;

TEST_CASE("anova_from_ss reproduces the reference grid") {
    AnovaTable t = anova_from_ss(730.6691, 7694.921, 2, 39, 0.05);
    CHECK(t.df_between == 1);
    CHECK(t.df_within == 37);
    CHECK(t.df_total == 38);
    CHECK(t.ms_between == doctest::Approx(730.6691).epsilon(1e-9));
    CHECK(t.ms_within == doctest::Approx(207.9708).epsilon(1e-6));
    CHECK(t.f == doctest::Approx(3.513325).epsilon(1e-6));
    CHECK(t.p_value == doctest::Approx(0.068789).epsilon(1e-4));
    CHECK(t.f_crit == doctest::Approx(4.105456).epsilon(1e-6));
    CHECK(t.ss_total == doctest::Approx(8425.59).epsilon(1e-6));
}

TEST_CASE("anova_from_ss edge cases") {
    AnovaTable zero = anova_from_ss(0.0, 10.0, 3, 12, 0.05);
    CHECK(zero.f == 0.0);
    CHECK(zero.p_value == doctest::Approx(1.0));
    CHECK_THROWS_AS(anova_from_ss(5.0, 0.0, 2, 10, 0.05), DomainError);
    CHECK_THROWS_AS(anova_from_ss(5.0, 5.0, 1, 10, 0.05), DomainError);
    CHECK_THROWS_AS(anova_from_ss(5.0, 5.0, 2, 2, 0.05), DomainError);
}

TEST_CASE("one_way_anova hand oracle") {
    // groups [1,2], [3,4]: grand mean 2.5, ss_between = 4, ss_within = 1
    AnovaTable t = one_way_anova({{1, 2}, {3, 4}});
    CHECK(t.ss_between == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(t.ss_within == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.f == doctest::Approx(8.0).epsilon(1e-12));
    // p = P(F(1,2) > 8) = 2 * (1 - t_cdf(2*sqrt(2), 2)) = 0.1055728...
    CHECK(t.p_value == doctest::Approx(0.105573).epsilon(1e-5));
}

TEST_CASE("one_way_anova identical groups") {
    AnovaTable t = one_way_anova({{1, 2, 3}, {1, 2, 3}});
    CHECK(t.f == doctest::Approx(0.0).scale(1.0));
    CHECK(t.p_value == doctest::Approx(1.0));
    CHECK_THROWS_AS(one_way_anova({{2, 2}, {2, 2}}), DomainError);
}

TEST_CASE("t_test_equal_var reproduces the reference grid") {
    GroupSummary g1{17, 19.05882353, 107.8088235};
    GroupSummary g2{17, 26.17647059, 210.7794118};
    TTestResult r = t_test_equal_var(g1, g2, 0.0, 0.05);
    CHECK(r.pooled_variance == doctest::Approx(159.2941176).epsilon(1e-9));
    CHECK(r.df == 32);
    CHECK(r.t_stat == doctest::Approx(-1.644167436).epsilon(1e-8));
    CHECK(r.p_one_tail == doctest::Approx(0.054966019).epsilon(1e-6));
    CHECK(r.p_two_tail == doctest::Approx(0.109932039).epsilon(1e-6));
    CHECK(r.t_crit_one_tail == doctest::Approx(1.693888703).epsilon(1e-6));
    CHECK(r.t_crit_two_tail == doctest::Approx(2.036933334).epsilon(1e-8));
}

TEST_CASE("t-test symmetry and antisymmetry") {
    GroupSummary g{10, 4.2, 1.5};
    TTestResult same = t_test_equal_var(g, g);
    CHECK(same.t_stat == doctest::Approx(0.0).scale(1.0));
    CHECK(same.p_two_tail == doctest::Approx(1.0));

    GroupSummary a{8, 3.0, 2.0}, b{12, 5.5, 1.0};
    TTestResult ab = t_test_equal_var(a, b);
    TTestResult ba = t_test_equal_var(b, a);
    CHECK(ab.t_stat == doctest::Approx(-ba.t_stat).epsilon(1e-12));
    CHECK(ab.p_one_tail == doctest::Approx(ba.p_one_tail).epsilon(1e-12));
    CHECK(ab.p_two_tail == doctest::Approx(ba.p_two_tail).epsilon(1e-12));
}

TEST_CASE("t_test_from_samples") {
    TTestResult same = t_test_from_samples({1, 2, 3}, {1, 2, 3});
    CHECK(same.t_stat == doctest::Approx(0.0).scale(1.0));

    // [0,0,2,2] vs [1,1,3,3]: means 1 and 2, both variances 4/3,
    // pooled 4/3, se = sqrt(4/3 * 1/2) = sqrt(2/3)
    TTestResult r = t_test_from_samples({0, 0, 2, 2}, {1, 1, 3, 3});
    CHECK(r.pooled_variance == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(r.t_stat == doctest::Approx(-1.0 / std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(t_test_from_samples({5}, {1, 2}), DomainError);
    CHECK_THROWS_AS(t_test_from_samples({2, 2}, {2, 2}), DomainError);
}

TEST_CASE("F = t^2 duality on random samples") {
    Lcg64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> a(3 + rng.next_below(20)), b(3 + rng.next_below(20));
        for (double& x : a) x = rng.next_normal();
        for (double& x : b) x = 2.0 + 1.5 * rng.next_normal();
        AnovaTable f = one_way_anova({a, b});
        TTestResult t = t_test_from_samples(a, b);
        CHECK(f.f == doctest::Approx(t.t_stat * t.t_stat).epsilon(1e-9));
        CHECK(f.p_value == doctest::Approx(t.p_two_tail).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("AnovaTable invariants on random inputs") {
    Lcg64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const double ssb = 100.0 * rng.next_double();
        const double ssw = 1e-6 + 100.0 * rng.next_double();
        const std::size_t k = 2 + rng.next_below(5);
        const std::size_t n = k + 2 + rng.next_below(50);
        AnovaTable t = anova_from_ss(ssb, ssw, k, n, 0.05);
        CHECK(t.ss_total == doctest::Approx(t.ss_between + t.ss_within).epsilon(1e-6));
        CHECK(t.df_between + t.df_within == t.df_total);
        CHECK(t.ms_between == doctest::Approx(t.ss_between / static_cast<double>(t.df_between)));
        CHECK(t.f == doctest::Approx(t.ms_between / t.ms_within));
        CHECK(t.p_value >= 0.0);
        CHECK(t.p_value <= 1.0);
        CHECK(t.f_crit > 0.0);
    }
}
