#include <doctest.h>

#include <sstream>

#include "advisory/data_model.hpp"
#include "advisory/errors.hpp"
#include "advisory/synthetic.hpp"

using namespace advisory;

namespace {

const char* kHeader =
    "Sid,Total_Reg_C_H,Total_Gain_C_H,Total_Cur_C_H,CUM_GPA,L_STATUS,GEN,Ad_STATUS,Plan_Study\n";

std::string one_row_csv(const std::string& row) { return std::string(kHeader) + row + "\n"; }

} // namespace

TEST_CASE("parse_cohort_csv derives Diff_G_R_C_H when absent") {
    Dataset ds = parse_cohort_csv(one_row_csv("S1,175,155,16,3.81,ExpectedToGraduate,F,Normal,New"));
    REQUIRE(ds.size() == 1);
    StudentRecord r = record_from_row(ds, 0);
    CHECK(r.sid == "S1");
    CHECK(r.diff_g_r_ch == 20);
    CHECK(r.l_status == LStatus::ExpectedToGraduate);
    CHECK(r.gen == Gender::Female);
    CHECK(r.ad_status == AdStatus::Normal);
}

TEST_CASE("parse_cohort_csv header validation") {
    CHECK_THROWS_AS(
        parse_cohort_csv("Sid,Total_Reg_C_H,Total_Gain_C_H,Total_Cur_C_H,CUM_GPA,L_STATUS,GEN,Plan_Study\n"),
        MalformedHeader);
    CHECK_THROWS_AS(parse_cohort_csv(std::string(kHeader).substr(0, 3) + ",Bogus\n"), MalformedHeader);
    CHECK_THROWS_AS(parse_cohort_csv(""), MalformedHeader);
}

TEST_CASE("parse_cohort_csv row validation") {
    // GPA outside [0, 5]
    CHECK_THROWS_AS(parse_cohort_csv(one_row_csv("S1,175,155,16,5.3,InStudy,M,Normal,Old")),
                    ValueError);
    // non-numeric hours
    CHECK_THROWS_AS(parse_cohort_csv(one_row_csv("S1,abc,155,16,3.1,InStudy,M,Normal,Old")),
                    ValueError);
    // out-of-vocabulary nominal
    CHECK_THROWS_AS(parse_cohort_csv(one_row_csv("S1,175,155,16,3.1,InStudy,M,Fine,Old")),
                    ValueError);
    // gained exceeds registered
    CHECK_THROWS_AS(parse_cohort_csv(one_row_csv("S1,80,90,16,3.1,InStudy,M,Normal,Old")),
                    ValueError);
    // missing value
    CHECK_THROWS_AS(parse_cohort_csv(one_row_csv("S1,175,,16,3.1,InStudy,M,Normal,Old")),
                    ValueError);
    // reported row number is 1-based over data rows
    try {
        parse_cohort_csv(std::string(kHeader) +
                         "S1,175,155,16,3.81,InStudy,M,Normal,New\n"
                         "S2,175,155,16,9.9,InStudy,M,Normal,New\n");
        FAIL("expected ValueError");
    } catch (const ValueError& e) {
        CHECK(e.row() == 2);
    }
}

TEST_CASE("derive_diff") {
    StudentRecord r;
    r.total_reg_ch = 109;
    r.total_gain_ch = 85;
    CHECK(*derive_diff(r).diff_g_r_ch == 24);

    r.total_reg_ch = 61;
    r.total_gain_ch = 61;
    CHECK(*derive_diff(r).diff_g_r_ch == 0);

    r.total_reg_ch = 80;
    r.total_gain_ch = 90;
    CHECK_THROWS_AS(derive_diff(r), NegativeDiff);
}

TEST_CASE("derive_diff is idempotent") {
    StudentRecord r;
    r.total_reg_ch = 120;
    r.total_gain_ch = 100;
    StudentRecord once = derive_diff(r);
    CHECK(derive_diff(once) == once);
}

TEST_CASE("gpa_band boundaries") {
    CHECK(gpa_band(3.76) == GpaBand::Good);
    CHECK(gpa_band(5.00) == GpaBand::Good);
    CHECK(gpa_band(3.75) == GpaBand::Poor);
    CHECK(gpa_band(2.00) == GpaBand::Poor);
    CHECK(gpa_band(1.99) == GpaBand::BelowScale);
    CHECK(gpa_band(0.0) == GpaBand::BelowScale);
}

TEST_CASE("partition_by splits and errors") {
    GeneratorParams p;
    p.n = 60;
    p.seed = 3;
    Dataset ds = generate_cohort(p);

    auto groups = partition_by(ds, "L_STATUS");
    std::size_t total = 0;
    for (const auto& [name, g] : groups) total += g.size();
    CHECK(total == ds.size());

    CHECK_THROWS_AS(partition_by(ds, "CUM_GPA"), NotNominal);
    CHECK_THROWS_AS(partition_by(ds, "Nope"), UnknownAttribute);
}

TEST_CASE("partition_by degenerate single group") {
    std::string csv(kHeader);
    csv += "S1,100,90,15,3.0,InStudy,F,Normal,New\n";
    csv += "S2,110,80,15,2.5,InStudy,F,UnderRisk,New\n";
    Dataset ds = parse_cohort_csv(csv);
    auto groups = partition_by(ds, "GEN");
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].first == "F");
    CHECK(groups[0].second.size() == 2);
}

TEST_CASE("CSV round trip is identity") {
    GeneratorParams p;
    p.n = 80;
    p.seed = 99;
    Dataset ds = generate_cohort(p);
    const std::string csv = to_cohort_csv(ds);
    Dataset back = parse_cohort_csv(csv);
    CHECK(back == ds);
    CHECK(to_cohort_csv(back) == csv);
}

TEST_CASE("drop_features removes columns but keeps the class") {
    GeneratorParams p;
    p.n = 20;
    p.seed = 1;
    Dataset ds = generate_cohort(p);
    Dataset slim = drop_features(ds, {"Plan_Study", "GEN"});
    CHECK(slim.n_attributes() == ds.n_attributes() - 2);
    CHECK(slim.class_attribute().name == "Ad_STATUS");
    CHECK_THROWS_AS(drop_features(ds, {"Ad_STATUS"}), DomainError);
    CHECK_THROWS_AS(drop_features(ds, {"Nope"}), UnknownAttribute);
}
