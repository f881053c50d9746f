// advisory_miner: cohort statistics, risk classifiers, and advising
// reports over the student-cohort CSV schema.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "advisory/advisor.hpp"
#include "advisory/classifiers.hpp"
#include "advisory/data_model.hpp"
#include "advisory/descriptive_stats.hpp"
#include "advisory/errors.hpp"
#include "advisory/evaluation.hpp"
#include "advisory/inferential_stats.hpp"
#include "advisory/synthetic.hpp"

using nlohmann::json;
using namespace advisory;

namespace {

// ---------------------------------------------------------------------------
// small helpers

std::string fmt(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dataset load_dataset(const std::string& path) { return parse_cohort_csv(read_all(path)); }

// atomic-ish output: write to a temp file, rename on success
void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open output file: " + tmp);
        out << content;
        if (!out) {
            std::remove(tmp.c_str());
            throw Error("write failed: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot rename " + tmp + " to " + path);
    }
}

void check_format(const std::string& f, const std::vector<std::string>& allowed) {
    for (const auto& a : allowed)
        if (f == a) return;
    throw UnsupportedFormat(f);
}

// drop data features the model was not trained with
Dataset align_to_model(const Dataset& ds, const Model& m) {
    const auto& ms = model_schema(m);
    std::vector<std::string> drop;
    for (const auto& a : ds.schema()) {
        if (a.role != AttrRole::Feature && a.role != AttrRole::Derived) continue;
        bool found = false;
        for (const auto& b : ms)
            if (b.name == a.name) found = true;
        if (!found) drop.push_back(a.name);
    }
    return drop.empty() ? ds : drop_features(ds, drop);
}

// ---------------------------------------------------------------------------
// shared CLI state

struct Options {
    std::string data;
    std::string out;
    std::string model_path;
    std::string params_path;
    std::string format = "text";
    std::string algo = "c45";
    std::vector<std::string> exclude;
    std::size_t folds = 10;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double alpha = 0.05;
    std::size_t knn_k = 5;
    std::size_t min_leaf = 2;
    double cf = 0.25;
    bool no_prune = false;
    std::size_t gen_n = 249;
    double diff_threshold = 30.0;
    std::string advisor_name;
};

LearnerSpec learner_from(const Options& o) {
    LearnerSpec spec;
    if (o.algo == "c45") spec.algo = Algorithm::C45;
    else if (o.algo == "nb") spec.algo = Algorithm::NaiveBayes;
    else if (o.algo == "knn") spec.algo = Algorithm::Knn;
    else if (o.algo == "prior") spec.algo = Algorithm::Prior;
    else throw Error("unknown algorithm: " + o.algo);
    spec.c45.min_leaf = o.min_leaf;
    spec.c45.cf = o.cf;
    spec.c45.prune = !o.no_prune;
    spec.knn_k = o.knn_k;
    return spec;
}

Dataset load_and_exclude(const Options& o) {
    Dataset ds = load_dataset(o.data);
    return o.exclude.empty() ? ds : drop_features(ds, o.exclude);
}

// resolve --seed with the ADVISORY_MINER_SEED fallback; usage error if absent
std::uint64_t require_seed(Options& o) {
    if (o.seed_set) return o.seed;
    if (const char* env = std::getenv("ADVISORY_MINER_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw CLI::ValidationError("ADVISORY_MINER_SEED is not an unsigned integer");
        }
    }
    throw CLI::RequiredError("--seed (or ADVISORY_MINER_SEED)");
}

// ---------------------------------------------------------------------------
// JSON assembly for the statistics bundles

json summary_to_json(const DescriptiveSummary& s) {
    json j;
    j["n"] = s.n;
    j["mean"] = s.mean;
    j["median"] = s.median;
    if (s.st_dev) j["st_dev"] = *s.st_dev;
    if (s.mode) j["mode"] = *s.mode;
    if (s.std_error) j["std_error"] = *s.std_error;
    if (s.kurtosis) j["kurtosis"] = *s.kurtosis;
    if (s.skewness) j["skewness"] = *s.skewness;
    return j;
}

json anova_to_json(const AnovaTable& t) {
    return json{{"ss_between", t.ss_between}, {"ss_within", t.ss_within},
                {"ss_total", t.ss_total},     {"df_between", t.df_between},
                {"df_within", t.df_within},   {"df_total", t.df_total},
                {"ms_between", t.ms_between}, {"ms_within", t.ms_within},
                {"f", t.f},                   {"p_value", t.p_value},
                {"f_crit", t.f_crit},         {"alpha", t.alpha}};
}

json ttest_to_json(const TTestResult& r) {
    auto g = [](const GroupSummary& s) {
        return json{{"n", s.n}, {"mean", s.mean}, {"variance", s.variance}};
    };
    return json{{"group1", g(r.g1)},
                {"group2", g(r.g2)},
                {"pooled_variance", r.pooled_variance},
                {"hypothesized_mean_diff", r.hypothesized_mean_diff},
                {"df", r.df},
                {"t_stat", r.t_stat},
                {"p_one_tail", r.p_one_tail},
                {"p_two_tail", r.p_two_tail},
                {"t_crit_one_tail", r.t_crit_one_tail},
                {"t_crit_two_tail", r.t_crit_two_tail},
                {"alpha", r.alpha}};
}

// ---------------------------------------------------------------------------
// text renderers

std::string opt_cell(const std::optional<double>& v, int prec = 6) {
    return v ? fmt(*v, prec) : std::string("-");
}

std::string render_descriptive_text(const std::vector<CohortAnalysis::DescriptiveRow>& rows) {
    std::ostringstream out;
    constexpr std::size_t kLabel = 20, kCol = 18;
    for (const auto& row : rows) {
        out << row.value_attr << " by L_STATUS\n";
        out << pad("", kLabel);
        for (const auto& [group, s] : row.by_group) out << pad(group, kCol);
        out << '\n';
        auto line = [&](const std::string& label, auto get) {
            out << pad(label, kLabel);
            for (const auto& [group, s] : row.by_group) out << pad(get(s), kCol);
            out << '\n';
        };
        line("Mean", [](const DescriptiveSummary& s) { return fmt(s.mean); });
        line("Standard Error", [](const DescriptiveSummary& s) { return opt_cell(s.std_error); });
        line("Median", [](const DescriptiveSummary& s) { return fmt(s.median); });
        line("Mode", [](const DescriptiveSummary& s) { return opt_cell(s.mode); });
        line("Standard Deviation", [](const DescriptiveSummary& s) { return opt_cell(s.st_dev); });
        line("Kurtosis", [](const DescriptiveSummary& s) { return opt_cell(s.kurtosis); });
        line("Skewness", [](const DescriptiveSummary& s) { return opt_cell(s.skewness); });
        line("Count", [](const DescriptiveSummary& s) { return std::to_string(s.n); });
        out << '\n';
    }
    return out.str();
}

std::string render_descriptive_csv(const std::vector<CohortAnalysis::DescriptiveRow>& rows) {
    std::ostringstream out;
    out << "attribute,group,n,mean,std_error,median,mode,st_dev,kurtosis,skewness\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    for (const auto& row : rows)
        for (const auto& [group, s] : row.by_group)
            out << row.value_attr << ',' << group << ',' << s.n << ',' << fmt(s.mean) << ','
                << opt(s.std_error) << ',' << fmt(s.median) << ',' << opt(s.mode) << ','
                << opt(s.st_dev) << ',' << opt(s.kurtosis) << ',' << opt(s.skewness) << '\n';
    return out.str();
}

std::string render_anova_text(const AnovaTable& t) {
    std::ostringstream out;
    constexpr std::size_t kW = 16;
    out << "ANOVA\n";
    out << pad("Source of Variation", 22) << pad("SS", kW) << pad("df", 6) << pad("MS", kW)
        << pad("F", kW) << pad("P-value", kW) << pad("F crit", kW) << '\n';
    out << pad("Between Groups", 22) << pad(fmt(t.ss_between, 4), kW)
        << pad(std::to_string(t.df_between), 6) << pad(fmt(t.ms_between, 4), kW)
        << pad(fmt(t.f, 6), kW) << pad(fmt(t.p_value, 6), kW) << pad(fmt(t.f_crit, 6), kW) << '\n';
    out << pad("Within Groups", 22) << pad(fmt(t.ss_within, 4), kW)
        << pad(std::to_string(t.df_within), 6) << pad(fmt(t.ms_within, 4), kW) << '\n';
    out << pad("Total", 22) << pad(fmt(t.ss_total, 4), kW) << pad(std::to_string(t.df_total), 6)
        << '\n';
    return out.str();
}

std::string render_ttest_text(const TTestResult& r, const std::string& name1,
                              const std::string& name2) {
    std::ostringstream out;
    constexpr std::size_t kLabel = 30, kCol = 18;
    out << "t-Test: Two-Sample Assuming Equal Variances\n";
    out << pad("", kLabel) << pad(name1, kCol) << pad(name2, kCol) << '\n';
    out << pad("Mean", kLabel) << pad(fmt(r.g1.mean), kCol) << pad(fmt(r.g2.mean), kCol) << '\n';
    out << pad("Variance", kLabel) << pad(fmt(r.g1.variance), kCol) << pad(fmt(r.g2.variance), kCol)
        << '\n';
    out << pad("Observations", kLabel) << pad(std::to_string(r.g1.n), kCol)
        << pad(std::to_string(r.g2.n), kCol) << '\n';
    out << pad("Pooled Variance", kLabel) << fmt(r.pooled_variance) << '\n';
    out << pad("Hypothesized Mean Difference", kLabel) << fmt(r.hypothesized_mean_diff) << '\n';
    out << pad("df", kLabel) << r.df << '\n';
    out << pad("t Stat", kLabel) << fmt(r.t_stat, 9) << '\n';
    out << pad("P(T<=t) one-tail", kLabel) << fmt(r.p_one_tail, 9) << '\n';
    out << pad("t Critical one-tail", kLabel) << fmt(r.t_crit_one_tail, 9) << '\n';
    out << pad("P(T<=t) two-tail", kLabel) << fmt(r.p_two_tail, 9) << '\n';
    out << pad("t Critical two-tail", kLabel) << fmt(r.t_crit_two_tail, 9) << '\n';
    return out.str();
}

std::string render_eval_text(const EvaluationReport& r) {
    std::ostringstream out;
    const std::size_t n = r.confusion.total();
    const std::size_t correct = r.confusion.trace();
    out << "=== Stratified " << r.fold_count << "-fold cross-validation (seed " << r.seed
        << ") ===\n\n";
    out << "Correctly Classified Instances    " << correct << "   "
        << fmt(100.0 * r.accuracy, 4) << " %\n";
    out << "Incorrectly Classified Instances  " << (n - correct) << "   "
        << fmt(100.0 * (1.0 - r.accuracy), 4) << " %\n";
    out << "Kappa statistic                   " << fmt(r.kappa, 4) << '\n';
    out << "Mean absolute error               " << fmt(r.errors.mae, 4) << '\n';
    out << "Root mean squared error           " << fmt(r.errors.rmse, 4) << '\n';
    out << "Relative absolute error           " << fmt(r.errors.rae_percent, 4) << " %\n";
    out << "Root relative squared error       " << fmt(r.errors.rrse_percent, 4) << " %\n";
    out << "Total Number of Instances         " << n << "\n\n";

    out << "=== Detailed Accuracy By Class ===\n\n";
    constexpr std::size_t kCol = 12;
    out << pad("", 16) << pad("Precision", kCol) << pad("Recall", kCol) << pad("F-Measure", kCol)
        << "Class\n";
    for (std::size_t c = 0; c < r.prf.per_class.size(); ++c) {
        const PrfRow& row = r.prf.per_class[c];
        out << pad("", 16) << pad(fmt(row.precision, 3), kCol) << pad(fmt(row.recall, 3), kCol)
            << pad(fmt(row.f_measure, 3), kCol) << r.confusion.classes[c] << '\n';
    }
    out << pad("Weighted Avg.", 16) << pad(fmt(r.prf.weighted.precision, 3), kCol)
        << pad(fmt(r.prf.weighted.recall, 3), kCol) << pad(fmt(r.prf.weighted.f_measure, 3), kCol)
        << "\n\n";

    out << "=== Confusion Matrix ===\n\n";
    out << pad("actual \\ predicted", 20);
    for (const auto& c : r.confusion.classes) out << pad(c, 14);
    out << '\n';
    for (std::size_t i = 0; i < r.confusion.classes.size(); ++i) {
        out << pad(r.confusion.classes[i], 20);
        for (std::size_t j = 0; j < r.confusion.classes.size(); ++j)
            out << pad(std::to_string(r.confusion.counts[i][j]), 14);
        out << '\n';
    }
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
    return out.str();
}

// the analysis sections used by `analyze`, `describe`, `anova`, `ttest`
std::string render_analysis_text(const CohortAnalysis& a) {
    std::ostringstream out;
    out << "=== Cohort composition ===\n\n";
    out << "Students:             " << a.composition.n << '\n';
    out << "Female:               " << a.composition.n_female << " ("
        << fmt(a.composition.female_percent, 2) << " %)\n";
    out << "Expected to graduate: " << a.composition.n_expected << " ("
        << fmt(a.composition.expected_percent, 2) << " %)\n\n";

    out << "=== Descriptive statistics by learning status ===\n\n";
    if (a.descriptive_error) out << "unavailable: " << *a.descriptive_error << "\n\n";
    else out << render_descriptive_text(a.descriptive);

    out << "=== ANOVA: Diff_G_R_C_H across GEN (expected-to-graduate group) ===\n\n";
    if (a.anova_error) out << "unavailable: " << *a.anova_error << "\n\n";
    else out << render_anova_text(*a.anova) << '\n';

    out << "=== t-Test: Diff_G_R_C_H, Good vs Poor CUM_GPA band ===\n\n";
    if (a.ttest_error) out << "unavailable: " << *a.ttest_error << '\n';
    else out << render_ttest_text(*a.ttest, "Good", "Poor");
    return out.str();
}

json analysis_to_json(const CohortAnalysis& a) {
    json j;
    j["composition"] = {{"n", a.composition.n},
                        {"n_female", a.composition.n_female},
                        {"n_expected", a.composition.n_expected},
                        {"female_percent", a.composition.female_percent},
                        {"expected_percent", a.composition.expected_percent}};
    if (a.descriptive_error) j["descriptive_error"] = *a.descriptive_error;
    else {
        json rows = json::array();
        for (const auto& row : a.descriptive) {
            json groups = json::object();
            for (const auto& [g, s] : row.by_group) groups[g] = summary_to_json(s);
            rows.push_back({{"attribute", row.value_attr}, {"groups", groups}});
        }
        j["descriptive"] = rows;
    }
    if (a.anova_error) j["anova_error"] = *a.anova_error;
    else j["anova"] = anova_to_json(*a.anova);
    if (a.ttest_error) j["ttest_error"] = *a.ttest_error;
    else j["ttest"] = ttest_to_json(*a.ttest);
    return j;
}

// ---------------------------------------------------------------------------
// subcommand bodies

int run_generate(Options& o) {
    GeneratorParams p;
    if (!o.params_path.empty()) p = params_from_json(json::parse(read_all(o.params_path)));
    p.n = o.gen_n;
    p.seed = require_seed(o);
    std::cerr << "seed: " << p.seed << '\n';
    write_output(o.out, to_cohort_csv(generate_cohort(p)));
    return 0;
}

int run_describe(Options& o) {
    check_format(o.format, {"text", "csv", "json"});
    Dataset ds = load_dataset(o.data);
    std::vector<CohortAnalysis::DescriptiveRow> rows;
    for (const auto& attr : ds.schema()) {
        if (attr.kind != AttrKind::Numeric) continue;
        if (attr.role != AttrRole::Feature && attr.role != AttrRole::Derived) continue;
        rows.push_back({attr.name, summarize_by_group(ds, attr.name, "L_STATUS")});
    }
    if (o.format == "text") write_output(o.out, render_descriptive_text(rows));
    else if (o.format == "csv") write_output(o.out, render_descriptive_csv(rows));
    else {
        json j = json::array();
        for (const auto& row : rows) {
            json groups = json::object();
            for (const auto& [g, s] : row.by_group) groups[g] = summary_to_json(s);
            j.push_back({{"attribute", row.value_attr}, {"groups", groups}});
        }
        write_output(o.out, j.dump(2) + "\n");
    }
    return 0;
}

int run_analyze(Options& o) {
    check_format(o.format, {"text", "csv", "json"});
    Dataset ds = load_dataset(o.data);
    if (o.format == "csv") {
        // per-student series for external plotting
        std::ostringstream out;
        out << "index,reg,gain,diff,band\n";
        for (std::size_t i = 0; i < ds.size(); ++i) {
            StudentRecord r = record_from_row(ds, i);
            out << (i + 1) << ',' << r.total_reg_ch << ',' << r.total_gain_ch << ','
                << *r.diff_g_r_ch << ',' << to_string(gpa_band(r.cum_gpa)) << '\n';
        }
        write_output(o.out, out.str());
        return 0;
    }
    CohortAnalysis a = cohort_analysis(ds, o.alpha);
    if (o.format == "text") write_output(o.out, render_analysis_text(a));
    else write_output(o.out, analysis_to_json(a).dump(2) + "\n");
    return 0;
}

int run_anova(Options& o) {
    check_format(o.format, {"text", "json"});
    CohortAnalysis a = cohort_analysis(load_dataset(o.data), o.alpha);
    if (a.anova_error) throw Error(*a.anova_error);
    if (o.format == "text") write_output(o.out, render_anova_text(*a.anova));
    else write_output(o.out, anova_to_json(*a.anova).dump(2) + "\n");
    return 0;
}

int run_ttest(Options& o) {
    check_format(o.format, {"text", "json"});
    CohortAnalysis a = cohort_analysis(load_dataset(o.data), o.alpha);
    if (a.ttest_error) throw Error(*a.ttest_error);
    if (o.format == "text") write_output(o.out, render_ttest_text(*a.ttest, "Good", "Poor"));
    else write_output(o.out, ttest_to_json(*a.ttest).dump(2) + "\n");
    return 0;
}

int run_train(Options& o) {
    Dataset ds = load_and_exclude(o);
    Model model = fit(learner_from(o), ds);
    write_output(o.out, model_to_json(model).dump(2) + "\n");
    return 0;
}

int run_crossval(Options& o) {
    check_format(o.format, {"text", "json"});
    Dataset ds = load_and_exclude(o);
    const std::uint64_t seed = require_seed(o);
    std::cerr << "seed: " << seed << '\n';
    EvaluationReport r = cross_validate(learner_from(o), ds, o.folds, seed);
    if (o.format == "text") write_output(o.out, render_eval_text(r));
    else write_output(o.out, report_to_json(r).dump(2) + "\n");
    return 0;
}

int run_predict(Options& o) {
    check_format(o.format, {"text", "csv", "json"});
    Model model = model_from_json(json::parse(read_all(o.model_path)));
    Dataset ds = align_to_model(load_dataset(o.data), model);
    const auto& cls = ds.class_attribute().values;
    std::ostringstream text;
    std::ostringstream csv;
    json arr = json::array();
    csv << "Sid,predicted";
    for (const auto& c : cls) csv << ",p_" << c;
    csv << '\n';
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Instance& x = ds.instance(i);
        const std::string sid = record_from_row(ds, i).sid;
        ClassDistribution d = predict_proba(model, x);
        const int pred = predict(model, x);
        text << sid << ": " << cls[static_cast<std::size_t>(pred)] << " (";
        csv << sid << ',' << cls[static_cast<std::size_t>(pred)];
        json jp = json::object();
        for (std::size_t c = 0; c < cls.size(); ++c) {
            text << (c ? ", " : "") << cls[c] << " " << fmt(d.p[c], 4);
            csv << ',' << fmt(d.p[c], 6);
            jp[cls[c]] = d.p[c];
        }
        text << ")\n";
        csv << '\n';
        arr.push_back({{"sid", sid},
                       {"predicted", cls[static_cast<std::size_t>(pred)]},
                       {"distribution", jp}});
    }
    if (o.format == "text") write_output(o.out, text.str());
    else if (o.format == "csv") write_output(o.out, csv.str());
    else write_output(o.out, arr.dump(2) + "\n");
    return 0;
}

int run_rules(Options& o) {
    check_format(o.format, {"text", "json"});
    DecisionTreeModel tree;
    if (!o.model_path.empty()) {
        Model m = model_from_json(json::parse(read_all(o.model_path)));
        const auto* t = std::get_if<DecisionTreeModel>(&m);
        if (!t) throw Error("rules require a decision-tree model");
        tree = *t;
    } else {
        tree = c45_fit(load_and_exclude(o), {o.min_leaf, !o.no_prune, o.cf});
    }
    auto rules = extract_rules(tree);
    if (o.format == "text") {
        std::ostringstream out;
        for (const auto& r : rules) out << rule_to_string(r) << '\n';
        write_output(o.out, out.str());
    } else {
        json arr = json::array();
        for (const auto& r : rules) {
            json conds = json::array();
            for (const auto& c : r.conditions) {
                json jc = {{"attr", c.attr}};
                if (c.rel == RuleCondition::Rel::Eq) {
                    jc["rel"] = "=";
                    jc["value"] = c.nominal_value;
                } else {
                    jc["rel"] = c.rel == RuleCondition::Rel::Le ? "<=" : ">";
                    jc["threshold"] = c.threshold;
                }
                conds.push_back(jc);
            }
            arr.push_back({{"conditions", conds},
                           {"conclusion", r.conclusion},
                           {"support", r.support},
                           {"confidence", r.confidence}});
        }
        write_output(o.out, arr.dump(2) + "\n");
    }
    return 0;
}

int run_report(Options& o) {
    check_format(o.format, {"text", "json"});
    Model model = model_from_json(json::parse(read_all(o.model_path)));
    Dataset ds = align_to_model(load_dataset(o.data), model);
    std::ostringstream text;
    json arr = json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        AdvisingReport r =
            make_advising_report(model, record_from_row(ds, i), o.diff_threshold);
        r.advisor_name = o.advisor_name;
        if (o.format == "text") text << render_report(r, "text") << '\n';
        else arr.push_back(advising_report_to_json(r));
    }
    if (o.format == "text") write_output(o.out, text.str());
    else write_output(o.out, arr.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// argument surface

void add_data_option(CLI::App* cmd, Options& o, bool required = true) {
    auto* opt = cmd->add_option("--data", o.data, "input cohort CSV ('-' for stdin)");
    if (required) opt->required();
}

void add_learner_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--algo", o.algo, "algorithm")
        ->check(CLI::IsMember({"c45", "nb", "knn", "prior"}))
        ->default_val("c45");
    cmd->add_option("--k", o.knn_k, "kNN neighbor count")->default_val(5);
    cmd->add_option("--min-leaf", o.min_leaf, "C4.5 minimum leaf size")->default_val(2);
    cmd->add_option("--cf", o.cf, "C4.5 pruning confidence")->default_val(0.25);
    cmd->add_flag("--no-prune", o.no_prune, "disable C4.5 pruning");
    cmd->add_option("--exclude", o.exclude, "feature attributes to drop before training");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"student-cohort mining: statistics, risk classifiers, advising reports"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "output format")->default_val("text");
    };

    CLI::App* generate = app.add_subcommand("generate", "emit a synthetic cohort CSV");
    generate->add_option("--n", o.gen_n, "cohort size")->default_val(249);
    generate->add_option("--params", o.params_path, "generator params JSON file");
    generate->add_option("--seed", o.seed, "generator seed")
        ->each([&](const std::string&) { o.seed_set = true; });
    generate->add_option("--out", o.out, "output path (default stdout)");

    CLI::App* describe = app.add_subcommand("describe", "descriptive statistics by group");
    add_data_option(describe, o);
    add_common(describe);

    CLI::App* analyze = app.add_subcommand("analyze", "full cohort analysis bundle");
    add_data_option(analyze, o);
    analyze->add_option("--alpha", o.alpha, "significance level")->default_val(0.05);
    add_common(analyze);

    CLI::App* anova = app.add_subcommand("anova", "hour-gap ANOVA across gender");
    add_data_option(anova, o);
    anova->add_option("--alpha", o.alpha, "significance level")->default_val(0.05);
    add_common(anova);

    CLI::App* ttest = app.add_subcommand("ttest", "hour-gap t-test across GPA bands");
    add_data_option(ttest, o);
    ttest->add_option("--alpha", o.alpha, "significance level")->default_val(0.05);
    add_common(ttest);

    CLI::App* train = app.add_subcommand("train", "fit a classifier, write model JSON");
    add_data_option(train, o);
    add_learner_options(train, o);
    train->add_option("--out", o.out, "output path (default stdout)");

    CLI::App* crossval = app.add_subcommand("crossval", "stratified k-fold evaluation");
    add_data_option(crossval, o);
    add_learner_options(crossval, o);
    crossval->add_option("--folds", o.folds, "fold count")
        ->default_val(10)
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    crossval->add_option("--seed", o.seed, "fold-shuffle seed")
        ->each([&](const std::string&) { o.seed_set = true; });
    add_common(crossval);

    CLI::App* predict = app.add_subcommand("predict", "classify students with a saved model");
    predict->add_option("--model", o.model_path, "model JSON path")->required();
    add_data_option(predict, o);
    add_common(predict);

    CLI::App* rules = app.add_subcommand("rules", "extract decision rules from a tree");
    rules->add_option("--model", o.model_path, "decision-tree model JSON path");
    add_data_option(rules, o, false);
    add_learner_options(rules, o);
    add_common(rules);

    CLI::App* report = app.add_subcommand("report", "render advising report forms");
    report->add_option("--model", o.model_path, "model JSON path")->required();
    add_data_option(report, o);
    report->add_option("--diff-threshold", o.diff_threshold,
                       "flag students whose registered-minus-gained gap exceeds this")
        ->default_val(30.0);
    report->add_option("--advisor", o.advisor_name, "advisor name for the form");
    add_common(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*generate) return run_generate(o);
        if (*describe) return run_describe(o);
        if (*analyze) return run_analyze(o);
        if (*anova) return run_anova(o);
        if (*ttest) return run_ttest(o);
        if (*train) return run_train(o);
        if (*crossval) return run_crossval(o);
        if (*predict) return run_predict(o);
        if (*rules) {
            if (o.model_path.empty() && o.data.empty())
                throw CLI::RequiredError("--model or --data");
            return run_rules(o);
        }
        if (*report) return run_report(o);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
