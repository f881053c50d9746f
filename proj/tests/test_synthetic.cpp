#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "advisory/data_model.hpp"
#include "advisory/errors.hpp"
#include "advisory/synthetic.hpp"

using namespace advisory;

TEST_CASE("generate_cohort default quotas") {
    GeneratorParams p;
    p.seed = 7;
    Dataset ds = generate_cohort(p);
    CHECK(ds.size() == 249);

    std::size_t female = 0, expected = 0;
    const std::size_t gen_i = ds.attr_index("GEN");
    const std::size_t ls_i = ds.attr_index("L_STATUS");
    for (const Instance& in : ds.instances()) {
        if (ds.attribute(gen_i).values[static_cast<std::size_t>(in[gen_i].code())] == "F") ++female;
        if (ds.attribute(ls_i).values[static_cast<std::size_t>(in[ls_i].code())] ==
            "ExpectedToGraduate")
            ++expected;
    }
    CHECK(female == 115);  // round(249 * 0.46)
    CHECK(expected == 39); // round(249 * 39/249)
}

TEST_CASE("generate_cohort is deterministic per seed") {
    GeneratorParams p;
    p.seed = 1234;
    const std::string a = to_cohort_csv(generate_cohort(p));
    const std::string b = to_cohort_csv(generate_cohort(p));
    CHECK(a == b);
    p.seed = 1235;
    CHECK(to_cohort_csv(generate_cohort(p)) != a);
}

TEST_CASE("generated records satisfy all cohort invariants") {
    GeneratorParams p;
    p.seed = 55;
    Dataset ds = generate_cohort(p);
    // reparse runs the full row validation
    Dataset back = parse_cohort_csv(to_cohort_csv(ds));
    CHECK(back == ds);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        StudentRecord r = record_from_row(ds, i);
        CHECK(r.total_gain_ch <= r.total_reg_ch);
        CHECK(r.total_gain_ch >= 0);
        CHECK(*r.diff_g_r_ch == r.total_reg_ch - r.total_gain_ch);
        CHECK(r.cum_gpa >= 0.0);
        CHECK(r.cum_gpa <= 5.0);
    }
}

TEST_CASE("risk signal ordering holds across seeds") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        GeneratorParams p;
        p.seed = seed;
        Dataset ds = generate_cohort(p);
        auto groups = partition_by(ds, "Ad_STATUS");
        double normal_diff = 0.0, under_diff = 0.0;
        bool have_normal = false, have_under = false;
        for (const auto& [name, g] : groups) {
            double mean = 0.0;
            for (double x : g.numeric_column("Diff_G_R_C_H")) mean += x;
            mean /= static_cast<double>(g.size());
            if (name == "Normal") {
                normal_diff = mean;
                have_normal = true;
            } else if (name == "UnderRisk") {
                under_diff = mean;
                have_under = true;
            }
        }
        REQUIRE(have_normal);
        REQUIRE(have_under);
        CHECK(under_diff > normal_diff);
    }
}

TEST_CASE("graduating students carry more registered hours on average") {
    // averaged over several seeds the status-conditioned hour profiles
    // should be recoverable within a few standard errors
    double sum_exp = 0.0, sum_in = 0.0;
    std::size_t n_exp = 0, n_in = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorParams p;
        p.seed = seed;
        Dataset ds = generate_cohort(p);
        for (const auto& [name, g] : partition_by(ds, "L_STATUS")) {
            for (double x : g.numeric_column("Total_Reg_C_H")) {
                if (name == "ExpectedToGraduate") {
                    sum_exp += x;
                    ++n_exp;
                } else {
                    sum_in += x;
                    ++n_in;
                }
            }
        }
    }
    const double mean_exp = sum_exp / static_cast<double>(n_exp);
    const double mean_in = sum_in / static_cast<double>(n_in);
    // defaults: 175.5385 sd 20.5 vs 109.3381 sd 41.4 (clamping shifts
    // these slightly, so only coarse agreement is asserted)
    CHECK(mean_exp > mean_in);
    CHECK(mean_exp == doctest::Approx(175.5385).epsilon(0.05));
    CHECK(mean_in == doctest::Approx(109.3381).epsilon(0.05));
}

TEST_CASE("parameter validation") {
    GeneratorParams p;
    p.n = 0;
    CHECK_THROWS_AS(generate_cohort(p), InvalidParams);

    p = GeneratorParams{};
    p.female_fraction = 1.5;
    CHECK_THROWS_AS(generate_cohort(p), InvalidParams);

    p = GeneratorParams{};
    p.risk_priors = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(generate_cohort(p), InvalidParams);

    p = GeneratorParams{};
    p.risk_priors = {1.0, 0.5, -0.5};
    CHECK_THROWS_AS(generate_cohort(p), InvalidParams);

    p = GeneratorParams{};
    p.profiles[0][0].reg_sd = -1.0;
    CHECK_THROWS_AS(generate_cohort(p), InvalidParams);
}

TEST_CASE("params JSON round trip") {
    GeneratorParams p;
    p.n = 42;
    p.seed = 9;
    p.female_fraction = 0.25;
    p.risk_priors = {0.5, 0.3, 0.2};
    p.profiles[2][1].gpa_mean = 1.75;
    GeneratorParams q = params_from_json(params_to_json(p));
    CHECK(q.n == 42);
    CHECK(q.seed == 9);
    CHECK(q.female_fraction == doctest::Approx(0.25));
    CHECK(q.risk_priors[1] == doctest::Approx(0.3));
    CHECK(q.profiles[2][1].gpa_mean == doctest::Approx(1.75));
    // identical params -> identical cohorts
    CHECK(to_cohort_csv(generate_cohort(q)) == to_cohort_csv(generate_cohort(p)));
}
