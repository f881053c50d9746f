#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "advisory/advisor.hpp"
#include "advisory/errors.hpp"
#include "advisory/inferential_stats.hpp"
#include "advisory/synthetic.hpp"

using namespace advisory;

namespace {

Dataset tiny_numeric_dataset() {
    std::vector<AttributeSpec> schema = {
        {"x", AttrKind::Numeric, AttrRole::Feature, {}},
        {"y", AttrKind::Nominal, AttrRole::Class, {"lo", "hi"}},
    };
    Dataset ds(schema, 1);
    for (double v : {1.0, 2.0, 3.0, 4.0}) ds.add_instance({Cell::numeric(v), Cell::nominal(0)});
    for (double v : {10.0, 11.0, 12.0, 13.0}) ds.add_instance({Cell::numeric(v), Cell::nominal(1)});
    return ds;
}

bool rule_matches(const AdvisingRule& rule, const Dataset& ds, std::size_t row) {
    for (const RuleCondition& c : rule.conditions) {
        const std::size_t a = ds.attr_index(c.attr);
        const Cell& cell = ds.instance(row)[a];
        switch (c.rel) {
            case RuleCondition::Rel::Eq:
                if (ds.attribute(a).values[static_cast<std::size_t>(cell.code())] !=
                    c.nominal_value)
                    return false;
                break;
            case RuleCondition::Rel::Le:
                if (!(cell.num() <= c.threshold)) return false;
                break;
            case RuleCondition::Rel::Gt:
                if (!(cell.num() > c.threshold)) return false;
                break;
        }
    }
    return true;
}

} // namespace

TEST_CASE("extract_rules on a single-leaf tree") {
    std::vector<AttributeSpec> schema = {
        {"x", AttrKind::Numeric, AttrRole::Feature, {}},
        {"y", AttrKind::Nominal, AttrRole::Class, {"a", "b"}},
    };
    Dataset ds(schema, 1);
    for (int i = 0; i < 5; ++i) ds.add_instance({Cell::numeric(i), Cell::nominal(0)});
    DecisionTreeModel tree = c45_fit(ds);
    auto rules = extract_rules(tree);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].conditions.empty());
    CHECK(rules[0].conclusion == "a");
    CHECK(rules[0].support == 5);
    CHECK(rules[0].confidence == doctest::Approx(1.0));
}

TEST_CASE("extract_rules on a depth-1 numeric split") {
    Dataset ds = tiny_numeric_dataset();
    DecisionTreeModel tree = c45_fit(ds, {1, false, 0.25});
    auto rules = extract_rules(tree);
    REQUIRE(rules.size() == 2);
    for (const AdvisingRule& r : rules) {
        REQUIRE(r.conditions.size() == 1);
        CHECK(r.conditions[0].attr == "x");
        CHECK(r.conditions[0].threshold == doctest::Approx(7.0)); // midpoint of 4 and 10
    }
    CHECK(rules[0].conditions[0].rel != rules[1].conditions[0].rel);
}

TEST_CASE("rules cover every training instance exactly once") {
    GeneratorParams p;
    p.n = 150;
    p.seed = 21;
    Dataset ds = generate_cohort(p);
    DecisionTreeModel tree = c45_fit(ds);
    auto rules = extract_rules(tree);
    REQUIRE(!rules.empty());

    std::size_t support_total = 0;
    for (const AdvisingRule& r : rules) support_total += r.support;
    CHECK(support_total == ds.size());

    for (std::size_t row = 0; row < ds.size(); ++row) {
        std::size_t hits = 0;
        for (const AdvisingRule& r : rules)
            if (rule_matches(r, ds, row)) ++hits;
        CHECK(hits == 1);
    }

    // ordered by descending support
    CHECK(std::is_sorted(rules.begin(), rules.end(),
                         [](const AdvisingRule& a, const AdvisingRule& b) {
                             return a.support > b.support;
                         }));
}

TEST_CASE("top rule keys on the registered-minus-gained gap") {
    GeneratorParams p;
    p.seed = 42;
    Dataset ds = generate_cohort(p);
    auto rules = extract_rules(c45_fit(ds));
    REQUIRE(!rules.empty());
    REQUIRE(!rules[0].conditions.empty());
    bool uses_diff = false;
    for (const RuleCondition& c : rules[0].conditions)
        if (c.attr == "Diff_G_R_C_H") uses_diff = true;
    CHECK(uses_diff);
}

TEST_CASE("rule_to_string formatting") {
    AdvisingRule r;
    r.conditions = {{"Diff_G_R_C_H", RuleCondition::Rel::Gt, "", 35.5},
                    {"GEN", RuleCondition::Rel::Eq, "F", 0.0}};
    r.conclusion = "UnderRisk";
    r.support = 12;
    r.confidence = 0.917;
    const std::string s = rule_to_string(r);
    CHECK(s.find("IF ") == 0);
    CHECK(s.find("Diff_G_R_C_H > 35.5") != std::string::npos);
    CHECK(s.find(" AND GEN = F") != std::string::npos);
    CHECK(s.find("THEN Ad_STATUS = UnderRisk") != std::string::npos);
    CHECK(s.find("support 12") != std::string::npos);
}

TEST_CASE("cohort_analysis composition and sections") {
    GeneratorParams p;
    p.seed = 11;
    Dataset ds = generate_cohort(p);
    CohortAnalysis a = cohort_analysis(ds);

    CHECK(a.composition.n == 249);
    CHECK(a.composition.n_female == 115);
    CHECK(a.composition.n_expected == 39);
    CHECK(a.composition.female_percent == doctest::Approx(100.0 * 115.0 / 249.0));
    CHECK(a.composition.expected_percent == doctest::Approx(100.0 * 39.0 / 249.0));

    REQUIRE(!a.descriptive.empty());
    CHECK(a.descriptive.size() == 4); // four numeric value attributes
    CHECK_FALSE(a.descriptive_error.has_value());
    REQUIRE(a.anova.has_value());
    REQUIRE(a.ttest.has_value());

    // cross-check the t-test section against a direct computation
    std::vector<double> good, poor;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        StudentRecord r = record_from_row(ds, i);
        if (gpa_band(r.cum_gpa) == GpaBand::Good) good.push_back(*r.diff_g_r_ch);
        else if (gpa_band(r.cum_gpa) == GpaBand::Poor) poor.push_back(*r.diff_g_r_ch);
    }
    TTestResult direct = t_test_from_samples(good, poor);
    CHECK(a.ttest->t_stat == doctest::Approx(direct.t_stat).epsilon(1e-12));
    CHECK(a.ttest->df == direct.df);
}

TEST_CASE("cohort_analysis records a section error for single-gender cohorts") {
    std::string csv =
        "Sid,Total_Reg_C_H,Total_Gain_C_H,Total_Cur_C_H,CUM_GPA,L_STATUS,GEN,Ad_STATUS,Plan_Study\n";
    for (int i = 0; i < 6; ++i)
        csv += "S" + std::to_string(i + 1) + "," + std::to_string(150 + i) + "," +
               std::to_string(120 + 2 * i) + ",15," + (i % 2 ? "4.1" : "2.9") +
               ",ExpectedToGraduate,F,Normal,New\n";
    Dataset ds = parse_cohort_csv(csv);
    CohortAnalysis a = cohort_analysis(ds);
    CHECK_FALSE(a.anova.has_value());
    REQUIRE(a.anova_error.has_value());
    CHECK(a.composition.n == 6);
}

TEST_CASE("make_advising_report flags the gap and carries the distribution") {
    GeneratorParams p;
    p.seed = 33;
    Dataset ds = generate_cohort(p);
    Model model = fit({Algorithm::NaiveBayes, {}, 5}, ds);

    StudentRecord s;
    s.sid = "S900";
    s.total_reg_ch = 160;
    s.total_gain_ch = 110; // gap 50
    s.total_cur_ch = 15;
    s.cum_gpa = 2.4;
    s.l_status = LStatus::InStudy;
    s.gen = Gender::Male;
    s.plan_study = PlanStudy::New;

    AdvisingReport r = make_advising_report(model, s, 30.0);
    CHECK(r.student.diff_g_r_ch == 50);
    CHECK(r.diff_flag);
    CHECK(r.band == GpaBand::Poor);
    CHECK(r.distribution.p.size() == 3);
    double sum = 0.0;
    for (double v : r.distribution.p) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((r.predicted_risk == "Normal" || r.predicted_risk == "NearToRisk" ||
           r.predicted_risk == "UnderRisk"));

    AdvisingReport below = make_advising_report(model, s, 60.0);
    CHECK_FALSE(below.diff_flag);
}

TEST_CASE("render_report text layout and JSON round trip") {
    GeneratorParams p;
    p.n = 120;
    p.seed = 3;
    Dataset ds = generate_cohort(p);
    Model model = fit({Algorithm::C45, {}, 5}, ds);
    StudentRecord s = record_from_row(ds, 0);
    AdvisingReport r = make_advising_report(model, s, 30.0);
    r.advisor_name = "Dr. Example";
    r.semesters[0].recommended_courses = {"MATH101", "CS102"};
    r.semesters[0].has_problem = true;
    r.semesters[0].problem_type = "Academic";
    r.semesters[0].solution = "Reduce load";

    const std::string text = render_report(r, "text");
    CHECK(text.find("First Academic Semester") != std::string::npos);
    CHECK(text.find("Second Academic Semester") != std::string::npos);
    CHECK(text.find("Summer Semester") != std::string::npos);
    CHECK(text.find("Recommended Courses") != std::string::npos);
    CHECK(text.find("Actually selected Courses") != std::string::npos);
    CHECK(text.find("Is there any problem confronted student?") != std::string::npos);
    CHECK(text.find("Problem type:") != std::string::npos);
    CHECK(text.find("Solution:") != std::string::npos);
    CHECK(text.find("Advisor's name:") != std::string::npos);
    CHECK(text.find("Dr. Example") != std::string::npos);
    CHECK(text.find("MATH101") != std::string::npos);

    AdvisingReport back = advising_report_from_json(advising_report_to_json(r));
    CHECK(back.student == r.student);
    CHECK(back.predicted_risk == r.predicted_risk);
    CHECK(back.diff_flag == r.diff_flag);
    CHECK(back.semesters[0].recommended_courses == r.semesters[0].recommended_courses);
    CHECK(back.semesters[0].problem_type == "Academic");
    CHECK(render_report(back, "json") == render_report(r, "json"));

    CHECK_THROWS_AS(render_report(r, "xml"), UnsupportedFormat);
}
