#ifndef ADVISORY_EVALUATION_HPP
#define ADVISORY_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advisory/classifiers.hpp"
#include "advisory/data_model.hpp"

namespace advisory {

struct ConfusionMatrix {
    std::vector<std::string> classes;
    std::vector<std::vector<std::size_t>> counts; // [actual][predicted]

    explicit ConfusionMatrix(std::vector<std::string> cls = {});
    void add(std::size_t actual, std::size_t predicted) { ++counts[actual][predicted]; }
    std::size_t total() const;
    std::size_t trace() const;
    double accuracy() const; // throws EmptyMatrix
};

// Cohen's kappa from the matrix marginals; 0 when chance agreement is 1
double kappa(const ConfusionMatrix& cm);

struct ProbErrors {
    double mae = 0.0;
    double rmse = 0.0;
    double rae_percent = 0.0;
    double rrse_percent = 0.0;
};

// probability-vector errors against one-hot targets, relative to the
// class-prior baseline predictor
ProbErrors probabilistic_errors(
    const std::vector<std::pair<ClassDistribution, int>>& predictions,
    const ClassDistribution& priors);

struct PrfRow {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    std::size_t support = 0;
};

struct PrfReport {
    std::vector<PrfRow> per_class;
    PrfRow weighted; // weights = actual-class supports
};

double f_measure(double precision, double recall);
PrfReport per_class_prf(const ConfusionMatrix& cm);

struct EvaluationReport {
    double accuracy = 0.0;
    double kappa = 0.0;
    ProbErrors errors;
    PrfReport prf;
    ConfusionMatrix confusion;
    std::size_t fold_count = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

// disjoint index folds covering the dataset; per-class counts across
// folds differ by at most 1; deterministic for a fixed seed
std::vector<std::vector<std::size_t>> stratified_k_fold(const Dataset& ds,
                                                        std::size_t k,
                                                        std::uint64_t seed);

// fit on k-1 folds, score the held-out fold, pool over all n predictions
EvaluationReport cross_validate(const LearnerSpec& spec, const Dataset& ds,
                                std::size_t k, std::uint64_t seed);

nlohmann::json report_to_json(const EvaluationReport& r);

} // namespace advisory

#endif
