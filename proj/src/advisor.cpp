#include "advisory/advisor.hpp"
#include "advisory/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace advisory {

namespace {

void collect_rules(const DecisionTreeModel& tree, int at,
                   std::vector<RuleCondition>& path, std::vector<AdvisingRule>& out) {
    const TreeNode& node = tree.node(at);
    if (node.type == TreeNode::Type::Leaf) {
        AdvisingRule r;
        r.conditions = path;
        const auto cls = static_cast<std::size_t>(node.majority);
        r.conclusion = tree.schema()[tree.class_index()].values[cls];
        r.support = node.count;
        r.confidence = node.dist.empty() ? 0.0 : node.dist[cls];
        out.push_back(std::move(r));
        return;
    }
    const AttributeSpec& attr = tree.schema()[static_cast<std::size_t>(node.attr)];
    if (node.type == TreeNode::Type::NominalSplit) {
        for (std::size_t v = 0; v < node.children.size(); ++v) {
            path.push_back({attr.name, RuleCondition::Rel::Eq, attr.values[v], 0.0});
            collect_rules(tree, node.children[v], path, out);
            path.pop_back();
        }
    } else {
        path.push_back({attr.name, RuleCondition::Rel::Le, "", node.threshold});
        collect_rules(tree, node.children[0], path, out);
        path.pop_back();
        path.push_back({attr.name, RuleCondition::Rel::Gt, "", node.threshold});
        collect_rules(tree, node.children[1], path, out);
        path.pop_back();
    }
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += "; ";
        out += items[i];
    }
    return out;
}

const char* kSemesterNames[3] = {"First Academic Semester", "Second Academic Semester",
                                 "Summer Semester"};

} // namespace

std::vector<AdvisingRule> extract_rules(const DecisionTreeModel& tree) {
    std::vector<AdvisingRule> out;
    std::vector<RuleCondition> path;
    collect_rules(tree, tree.root(), path, out);
    std::stable_sort(out.begin(), out.end(),
                     [](const AdvisingRule& a, const AdvisingRule& b) {
                         return a.support > b.support;
                     });
    return out;
}

std::string rule_to_string(const AdvisingRule& r) {
    std::ostringstream ss;
    ss << "IF ";
    if (r.conditions.empty()) ss << "(always)";
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        const RuleCondition& c = r.conditions[i];
        if (i) ss << " AND ";
        ss << c.attr;
        switch (c.rel) {
            case RuleCondition::Rel::Eq: ss << " = " << c.nominal_value; break;
            case RuleCondition::Rel::Le: ss << " <= " << c.threshold; break;
            case RuleCondition::Rel::Gt: ss << " > " << c.threshold; break;
        }
    }
    ss << " THEN Ad_STATUS = " << r.conclusion
       << "  (support " << r.support << ", confidence " << r.confidence << ")";
    return ss.str();
}

CohortAnalysis cohort_analysis(const Dataset& ds, double alpha) {
    if (ds.empty()) throw EmptyDataset();
    CohortAnalysis out;

    // composition line
    out.composition.n = ds.size();
    const std::size_t gen = ds.attr_index("GEN");
    const std::size_t ls = ds.attr_index("L_STATUS");
    for (std::size_t r = 0; r < ds.size(); ++r) {
        if (ds.instance(r)[gen].code() == 1) ++out.composition.n_female;
        if (ds.instance(r)[ls].code() == 1) ++out.composition.n_expected;
    }
    out.composition.female_percent =
        100.0 * static_cast<double>(out.composition.n_female) / static_cast<double>(ds.size());
    out.composition.expected_percent =
        100.0 * static_cast<double>(out.composition.n_expected) / static_cast<double>(ds.size());

    // descriptive grid by L_STATUS
    try {
        for (const char* attr :
             {"Total_Reg_C_H", "Total_Gain_C_H", "Diff_G_R_C_H", "CUM_GPA"}) {
            CohortAnalysis::DescriptiveRow row;
            row.value_attr = attr;
            row.by_group = summarize_by_group(ds, attr, "L_STATUS");
            out.descriptive.push_back(std::move(row));
        }
    } catch (const Error& e) {
        out.descriptive.clear();
        out.descriptive_error = e.what();
    }

    // ANOVA of Diff_G_R_C_H across GEN within the expected-to-graduate group
    try {
        const Dataset* expected = nullptr;
        auto parts = partition_by(ds, "L_STATUS");
        for (const auto& [name, group] : parts)
            if (name == "ExpectedToGraduate") expected = &group;
        if (!expected) throw MissingGroup("no ExpectedToGraduate students");
        auto by_gen = partition_by(*expected, "GEN");
        if (by_gen.size() < 2) throw MissingGroup("expected-to-graduate group has a single gender");
        std::vector<std::vector<double>> groups;
        for (const auto& [name, group] : by_gen)
            groups.push_back(group.numeric_column("Diff_G_R_C_H"));
        out.anova = one_way_anova(groups, alpha);
    } catch (const Error& e) {
        out.anova_error = e.what();
    }

    // t-test of Diff_G_R_C_H between Good and Poor GPA bands
    try {
        std::vector<double> good, poor;
        const std::size_t gpa = ds.attr_index("CUM_GPA");
        const std::size_t diff = ds.attr_index("Diff_G_R_C_H");
        for (std::size_t r = 0; r < ds.size(); ++r) {
            switch (gpa_band(ds.instance(r)[gpa].num())) {
                case GpaBand::Good: good.push_back(ds.instance(r)[diff].num()); break;
                case GpaBand::Poor: poor.push_back(ds.instance(r)[diff].num()); break;
                default: break;
            }
        }
        if (good.size() < 2 || poor.size() < 2)
            throw MissingGroup("fewer than 2 students in a GPA band");
        out.ttest = t_test_from_samples(good, poor, 0.0, alpha);
    } catch (const Error& e) {
        out.ttest_error = e.what();
    }

    return out;
}

AdvisingReport make_advising_report(const Model& model, const StudentRecord& student,
                                    double diff_threshold) {
    AdvisingReport r;
    r.student = student.diff_g_r_ch ? student : derive_diff(student);
    const Instance row = row_from_record(r.student);
    r.distribution = predict_proba(model, row);
    const auto& class_values = model_schema(model)[model_class_index(model)].values;
    r.predicted_risk = class_values[static_cast<std::size_t>(predict(model, row))];
    r.band = gpa_band(r.student.cum_gpa);
    r.diff_threshold = diff_threshold;
    r.diff_flag = static_cast<double>(*r.student.diff_g_r_ch) > diff_threshold;
    return r;
}

std::string render_report(const AdvisingReport& r, const std::string& format) {
    if (format == "json") return advising_report_to_json(r).dump(2);
    if (format != "text") throw UnsupportedFormat(format);

    std::ostringstream ss;
    ss << "Annual Academic Report\n";
    ss << "======================\n";
    ss << "Student Id: " << r.student.sid << "\n";
    ss << "CUM. GPA: " << r.student.cum_gpa << " (" << to_string(r.band) << " band)\n";
    ss << "Registered/Gained/Diff hours: " << r.student.total_reg_ch << "/"
       << r.student.total_gain_ch << "/" << r.student.diff_g_r_ch.value_or(0) << "\n";
    ss << "Predicted Ad_STATUS: " << r.predicted_risk << " (";
    for (std::size_t i = 0; i < r.distribution.p.size(); ++i)
        ss << (i ? ", " : "") << r.distribution.p[i];
    ss << ")\n";
    if (r.diff_flag)
        ss << "Problem: registered-minus-gained hours "
           << r.student.diff_g_r_ch.value_or(0) << " exceed threshold "
           << r.diff_threshold << "\n";
    ss << "\n";
    for (int s = 0; s < 3; ++s) {
        const SemesterPlan& plan = r.semesters[static_cast<std::size_t>(s)];
        ss << kSemesterNames[s] << "\n";
        ss << "  Recommended Courses: " << join(plan.recommended_courses) << "\n";
        ss << "  Actually selected Courses: " << join(plan.selected_courses) << "\n";
        ss << "  Is there any problem confronted student? "
           << (plan.has_problem ? "Yes" : "No") << "\n";
        ss << "  Problem type: " << plan.problem_type << "\n";
        ss << "  Solution: " << plan.solution << "\n";
    }
    ss << "Advisor's name: " << r.advisor_name << "\n";
    return ss.str();
}

namespace {

nlohmann::json semester_to_json(const SemesterPlan& p) {
    return {{"recommended_courses", p.recommended_courses},
            {"selected_courses", p.selected_courses},
            {"has_problem", p.has_problem},
            {"problem_type", p.problem_type},
            {"solution", p.solution}};
}

SemesterPlan semester_from_json(const nlohmann::json& j) {
    SemesterPlan p;
    p.recommended_courses = j.at("recommended_courses").get<std::vector<std::string>>();
    p.selected_courses = j.at("selected_courses").get<std::vector<std::string>>();
    p.has_problem = j.at("has_problem").get<bool>();
    p.problem_type = j.at("problem_type").get<std::string>();
    p.solution = j.at("solution").get<std::string>();
    return p;
}

const std::vector<std::string> kLStatusNames = {"InStudy", "ExpectedToGraduate"};
const std::vector<std::string> kAdStatusNames = {"Normal", "NearToRisk", "UnderRisk"};
const std::vector<std::string> kPlanNames = {"Old", "New", "Developed"};

template <typename E>
E enum_from_name(const std::vector<std::string>& names, const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw DomainError("unknown enum value '" + s + "'");
    return static_cast<E>(it - names.begin());
}

} // namespace

nlohmann::json advising_report_to_json(const AdvisingReport& r) {
    nlohmann::json student = {
        {"sid", r.student.sid},
        {"total_reg_ch", r.student.total_reg_ch},
        {"total_gain_ch", r.student.total_gain_ch},
        {"total_cur_ch", r.student.total_cur_ch},
        {"cum_gpa", r.student.cum_gpa},
        {"diff_g_r_ch", r.student.diff_g_r_ch.value_or(0)},
        {"l_status", kLStatusNames[static_cast<std::size_t>(r.student.l_status)]},
        {"gen", r.student.gen == Gender::Female ? "F" : "M"},
        {"ad_status", kAdStatusNames[static_cast<std::size_t>(r.student.ad_status)]},
        {"plan_study", kPlanNames[static_cast<std::size_t>(r.student.plan_study)]},
    };
    return {{"student", student},
            {"predicted_risk", r.predicted_risk},
            {"distribution", r.distribution.p},
            {"gpa_band", to_string(r.band)},
            {"diff_flag", r.diff_flag},
            {"diff_threshold", r.diff_threshold},
            {"semesters",
             {semester_to_json(r.semesters[0]), semester_to_json(r.semesters[1]),
              semester_to_json(r.semesters[2])}},
            {"advisor_name", r.advisor_name}};
}

AdvisingReport advising_report_from_json(const nlohmann::json& j) {
    AdvisingReport r;
    const auto& s = j.at("student");
    r.student.sid = s.at("sid").get<std::string>();
    r.student.total_reg_ch = s.at("total_reg_ch").get<int>();
    r.student.total_gain_ch = s.at("total_gain_ch").get<int>();
    r.student.total_cur_ch = s.at("total_cur_ch").get<int>();
    r.student.cum_gpa = s.at("cum_gpa").get<double>();
    r.student.diff_g_r_ch = s.at("diff_g_r_ch").get<int>();
    r.student.l_status = enum_from_name<LStatus>(kLStatusNames, s.at("l_status"));
    r.student.gen = s.at("gen") == "F" ? Gender::Female : Gender::Male;
    r.student.ad_status = enum_from_name<AdStatus>(kAdStatusNames, s.at("ad_status"));
    r.student.plan_study = enum_from_name<PlanStudy>(kPlanNames, s.at("plan_study"));
    r.predicted_risk = j.at("predicted_risk").get<std::string>();
    r.distribution.p = j.at("distribution").get<std::vector<double>>();
    const std::string band = j.at("gpa_band").get<std::string>();
    r.band = band == "Good" ? GpaBand::Good : band == "Poor" ? GpaBand::Poor : GpaBand::BelowScale;
    r.diff_flag = j.at("diff_flag").get<bool>();
    r.diff_threshold = j.at("diff_threshold").get<double>();
    for (std::size_t i = 0; i < 3; ++i)
        r.semesters[i] = semester_from_json(j.at("semesters").at(i));
    r.advisor_name = j.at("advisor_name").get<std::string>();
    return r;
}

} // namespace advisory
