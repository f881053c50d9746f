#include "advisory/evaluation.hpp"
#include "advisory/errors.hpp"
#include "advisory/rng.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace advisory {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> cls)
    : classes(std::move(cls)),
      counts(classes.size(), std::vector<std::size_t>(classes.size(), 0)) {}

std::size_t ConfusionMatrix::total() const {
    std::size_t t = 0;
    for (const auto& row : counts)
        for (std::size_t c : row) t += c;
    return t;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
}

double ConfusionMatrix::accuracy() const {
    const std::size_t n = total();
    if (n == 0) throw EmptyMatrix();
    return static_cast<double>(trace()) / static_cast<double>(n);
}

double kappa(const ConfusionMatrix& cm) {
    const std::size_t n = cm.total();
    if (n == 0) throw EmptyMatrix();
    const double dn = static_cast<double>(n);
    const std::size_t k = cm.counts.size();
    double p_o = static_cast<double>(cm.trace()) / dn;
    double p_e = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            row += static_cast<double>(cm.counts[i][j]);
            col += static_cast<double>(cm.counts[j][i]);
        }
        p_e += (row / dn) * (col / dn);
    }
    if (std::fabs(1.0 - p_e) < 1e-12) return 0.0;
    return (p_o - p_e) / (1.0 - p_e);
}

ProbErrors probabilistic_errors(
    const std::vector<std::pair<ClassDistribution, int>>& predictions,
    const ClassDistribution& priors) {
    if (predictions.empty()) throw EmptyInput("probabilistic_errors needs predictions");
    const std::size_t n_classes = priors.p.size();

    double abs_sum = 0.0, sq_sum = 0.0;
    double base_abs = 0.0, base_sq = 0.0;
    std::size_t entries = 0;
    for (const auto& [dist, actual] : predictions) {
        for (std::size_t c = 0; c < n_classes; ++c) {
            const double target = static_cast<int>(c) == actual ? 1.0 : 0.0;
            const double e = dist.p[c] - target;
            const double be = priors.p[c] - target;
            abs_sum += std::fabs(e);
            sq_sum += e * e;
            base_abs += std::fabs(be);
            base_sq += be * be;
            ++entries;
        }
    }
    const double dn = static_cast<double>(entries);
    ProbErrors out;
    out.mae = abs_sum / dn;
    out.rmse = std::sqrt(sq_sum / dn);
    const double base_mae = base_abs / dn;
    const double base_rmse = std::sqrt(base_sq / dn);
    if (base_mae <= 0.0 || base_rmse <= 0.0)
        throw DegenerateBaseline("prior predictor makes no error (single-class data)");
    out.rae_percent = 100.0 * out.mae / base_mae;
    out.rrse_percent = 100.0 * out.rmse / base_rmse;
    return out;
}

double f_measure(double precision, double recall) {
    if (precision + recall <= 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

PrfReport per_class_prf(const ConfusionMatrix& cm) {
    const std::size_t n = cm.total();
    if (n == 0) throw EmptyMatrix();
    const std::size_t k = cm.counts.size();
    PrfReport out;
    for (std::size_t c = 0; c < k; ++c) {
        const double tp = static_cast<double>(cm.counts[c][c]);
        double col = 0.0, row = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            col += static_cast<double>(cm.counts[j][c]);
            row += static_cast<double>(cm.counts[c][j]);
        }
        PrfRow r;
        r.support = static_cast<std::size_t>(row);
        r.precision = col > 0.0 ? tp / col : 0.0;
        r.recall = row > 0.0 ? tp / row : 0.0;
        r.f_measure = f_measure(r.precision, r.recall);
        out.per_class.push_back(r);
    }
    const double dn = static_cast<double>(n);
    for (const PrfRow& r : out.per_class) {
        const double w = static_cast<double>(r.support) / dn;
        out.weighted.precision += w * r.precision;
        out.weighted.recall += w * r.recall;
        out.weighted.f_measure += w * r.f_measure;
    }
    out.weighted.support = n;
    return out;
}

std::vector<std::vector<std::size_t>> stratified_k_fold(const Dataset& ds,
                                                        std::size_t k,
                                                        std::uint64_t seed) {
    if (ds.empty()) throw EmptyDataset();
    if (k < 2 || k > ds.size())
        throw KOutOfRange("k = " + std::to_string(k) + " for n = " + std::to_string(ds.size()));

    const std::size_t n_classes = ds.class_attribute().values.size();
    std::vector<std::vector<std::size_t>> by_class(n_classes);
    for (std::size_t r = 0; r < ds.size(); ++r)
        by_class[static_cast<std::size_t>(ds.class_code(r))].push_back(r);

    // shuffle within each class, then deal round-robin; the fold cursor
    // carries over between classes so total fold sizes stay balanced
    Lcg64 rng(seed);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t cursor = 0;
    for (auto& members : by_class) {
        rng.shuffle(members);
        for (std::size_t idx : members) {
            folds[cursor].push_back(idx);
            cursor = (cursor + 1) % k;
        }
    }
    return folds;
}

EvaluationReport cross_validate(const LearnerSpec& spec, const Dataset& ds,
                                std::size_t k, std::uint64_t seed) {
    if (ds.empty()) throw EmptyDataset();
    const auto folds = stratified_k_fold(ds, k, seed);

    EvaluationReport report;
    report.fold_count = k;
    report.seed = seed;
    report.confusion = ConfusionMatrix(ds.class_attribute().values);

    const std::size_t n_classes = ds.class_attribute().values.size();
    std::vector<std::size_t> class_n(n_classes, 0);
    for (std::size_t r = 0; r < ds.size(); ++r)
        ++class_n[static_cast<std::size_t>(ds.class_code(r))];
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (class_n[c] > 0 && class_n[c] < k)
            report.warnings.push_back("class '" + ds.class_attribute().values[c] + "' has " +
                                      std::to_string(class_n[c]) + " instances, fewer than " +
                                      std::to_string(k) + " folds; some folds lack it");
    }

    ClassDistribution priors;
    priors.p.assign(n_classes, 0.0);
    for (std::size_t c = 0; c < n_classes; ++c)
        priors.p[c] = static_cast<double>(class_n[c]) / static_cast<double>(ds.size());

    std::vector<std::pair<ClassDistribution, int>> predictions;
    predictions.reserve(ds.size());
    for (const auto& fold : folds) {
        if (fold.empty()) continue;
        if (spec.algo == Algorithm::Prior) {
            // the relative-error baseline: class priors of the whole
            // dataset, so that its own RAE/RRSE come out at exactly 100%
            const auto guess = static_cast<std::size_t>(priors.argmax());
            for (std::size_t r : fold) {
                predictions.emplace_back(priors, ds.class_code(r));
                report.confusion.add(static_cast<std::size_t>(ds.class_code(r)), guess);
            }
            continue;
        }
        std::vector<bool> held(ds.size(), false);
        for (std::size_t r : fold) held[r] = true;
        std::vector<std::size_t> train_rows;
        train_rows.reserve(ds.size() - fold.size());
        for (std::size_t r = 0; r < ds.size(); ++r)
            if (!held[r]) train_rows.push_back(r);

        const Dataset train = ds.subset(train_rows);
        const Model model = fit(spec, train);
        for (std::size_t r : fold) {
            predictions.emplace_back(predict_proba(model, ds.instance(r)), ds.class_code(r));
            report.confusion.add(static_cast<std::size_t>(ds.class_code(r)),
                                 static_cast<std::size_t>(predict(model, ds.instance(r))));
        }
    }

    report.accuracy = report.confusion.accuracy();
    report.kappa = advisory::kappa(report.confusion);
    report.errors = probabilistic_errors(predictions, priors);
    report.prf = per_class_prf(report.confusion);
    return report;
}

nlohmann::json report_to_json(const EvaluationReport& r) {
    nlohmann::json per_class = nlohmann::json::array();
    for (std::size_t c = 0; c < r.prf.per_class.size(); ++c) {
        const PrfRow& row = r.prf.per_class[c];
        per_class.push_back({{"class", r.confusion.classes[c]},
                             {"precision", row.precision},
                             {"recall", row.recall},
                             {"f_measure", row.f_measure},
                             {"support", row.support}});
    }
    return {
        {"accuracy", r.accuracy},
        {"kappa", r.kappa},
        {"mean_absolute_error", r.errors.mae},
        {"root_mean_squared_error", r.errors.rmse},
        {"relative_absolute_error_percent", r.errors.rae_percent},
        {"root_relative_squared_error_percent", r.errors.rrse_percent},
        {"per_class", per_class},
        {"weighted_avg",
         {{"precision", r.prf.weighted.precision},
          {"recall", r.prf.weighted.recall},
          {"f_measure", r.prf.weighted.f_measure}}},
        {"confusion", {{"classes", r.confusion.classes}, {"counts", r.confusion.counts}}},
        {"folds", r.fold_count},
        {"seed", r.seed},
        {"warnings", r.warnings},
    };
}

} // namespace advisory
