#ifndef ADVISORY_ADVISOR_HPP
#define ADVISORY_ADVISOR_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advisory/classifiers.hpp"
#include "advisory/data_model.hpp"
#include "advisory/descriptive_stats.hpp"
#include "advisory/inferential_stats.hpp"

namespace advisory {

// --- decision-rule extraction ----------------------------------------------

struct RuleCondition {
    enum class Rel { Eq, Le, Gt };
    std::string attr;
    Rel rel = Rel::Eq;
    std::string nominal_value; // Eq
    double threshold = 0.0;    // Le / Gt
};

struct AdvisingRule {
    std::vector<RuleCondition> conditions; // root-to-leaf order
    std::string conclusion;                // leaf majority class
    std::size_t support = 0;               // leaf training count
    double confidence = 0.0;               // leaf majority probability
};

// one rule per leaf, ordered by descending support
std::vector<AdvisingRule> extract_rules(const DecisionTreeModel& tree);

std::string rule_to_string(const AdvisingRule& r);

// --- cohort analysis bundle ------------------------------------------------

struct CohortComposition {
    std::size_t n = 0;
    std::size_t n_female = 0;
    std::size_t n_expected = 0;
    double female_percent = 0.0;
    double expected_percent = 0.0;
};

// Sections are emitted independently: a section that fails its
// precondition records an error instead of aborting the bundle.
struct CohortAnalysis {
    CohortComposition composition;

    // descriptive grid: per value attribute, per L_STATUS group
    struct DescriptiveRow {
        std::string value_attr;
        std::vector<std::pair<std::string, DescriptiveSummary>> by_group;
    };
    std::vector<DescriptiveRow> descriptive;
    std::optional<std::string> descriptive_error;

    // ANOVA of Diff_G_R_C_H across GEN within the expected-to-graduate group
    std::optional<AnovaTable> anova;
    std::optional<std::string> anova_error;

    // equal-variance t-test of Diff_G_R_C_H between Good and Poor GPA bands
    std::optional<TTestResult> ttest;
    std::optional<std::string> ttest_error;
};

CohortAnalysis cohort_analysis(const Dataset& ds, double alpha = 0.05);

// --- advising report -------------------------------------------------------

struct SemesterPlan {
    std::vector<std::string> recommended_courses;
    std::vector<std::string> selected_courses;
    bool has_problem = false;
    std::string problem_type; // Academic / Psychological / Social
    std::string solution;
};

struct AdvisingReport {
    StudentRecord student;
    std::string predicted_risk;
    ClassDistribution distribution;
    GpaBand band = GpaBand::Good;
    bool diff_flag = false;
    double diff_threshold = 0.0;
    std::array<SemesterPlan, 3> semesters; // first, second, summer
    std::string advisor_name;
};

// classify one student and flag a high registered-minus-gained gap;
// narrative fields start blank and are filled in by the advisor
AdvisingReport make_advising_report(const Model& model, const StudentRecord& student,
                                    double diff_threshold);

// format is "text" or "json"; throws UnsupportedFormat otherwise
std::string render_report(const AdvisingReport& r, const std::string& format);

nlohmann::json advising_report_to_json(const AdvisingReport& r);
AdvisingReport advising_report_from_json(const nlohmann::json& j);

} // namespace advisory

#endif
