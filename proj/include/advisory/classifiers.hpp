#ifndef ADVISORY_CLASSIFIERS_HPP
#define ADVISORY_CLASSIFIERS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advisory/data_model.hpp"

namespace advisory {

// Posterior over class values, in vocabulary order; sums to 1.
struct ClassDistribution {
    std::vector<double> p;

    // ties broken by class order
    int argmax() const;
};

// Shannon entropy in bits; 0 log 0 = 0. Throws EmptyInput when the
// counts are empty or all zero.
double entropy(const std::vector<std::size_t>& class_counts);

// Split quality of one feature attribute against the class. For numeric
// attributes the gain is the maximum over candidate binary thresholds
// (midpoints between adjacent distinct sorted values). gain_ratio is
// absent when the split information is zero.
double info_gain(const Dataset& ds, const std::string& attr);
std::optional<double> gain_ratio(const Dataset& ds, const std::string& attr);

// --- C4.5 ------------------------------------------------------------------

struct C45Params {
    std::size_t min_leaf = 2;  // a node with fewer than 2*min_leaf cases becomes a leaf
    bool prune = true;         // pessimistic-error subtree replacement
    double cf = 0.25;          // pruning confidence
};

struct TreeNode {
    enum class Type { Leaf, NominalSplit, NumericSplit };
    Type type = Type::Leaf;
    int attr = -1;                       // split attribute (schema index)
    double threshold = 0.0;              // numeric splits: <= goes left
    std::vector<int> children;           // nominal: one per vocabulary value; numeric: {le, gt}
    std::vector<std::size_t> class_counts;
    std::size_t count = 0;               // training cases reaching this node
    int majority = 0;
    std::vector<double> dist;            // class distribution of the node's cases
};

class DecisionTreeModel {
public:
    DecisionTreeModel() = default;
    DecisionTreeModel(std::vector<AttributeSpec> schema, std::size_t class_index,
                      std::vector<TreeNode> nodes, int root);

    const std::vector<AttributeSpec>& schema() const { return schema_; }
    std::size_t class_index() const { return class_index_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    int root() const { return root_; }
    const TreeNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    std::size_t leaf_count() const;
    std::size_t depth() const;

private:
    std::vector<AttributeSpec> schema_;
    std::size_t class_index_ = 0;
    std::vector<TreeNode> nodes_;
    int root_ = -1;
};

DecisionTreeModel c45_fit(const Dataset& ds, const C45Params& params = {});

// --- Naive Bayes -----------------------------------------------------------

class NaiveBayesModel {
public:
    struct NumericLikelihood {
        std::vector<double> mean;      // per class
        std::vector<double> variance;  // per class, floored
    };

    std::vector<AttributeSpec> schema;
    std::size_t class_index = 0;
    std::vector<double> priors;  // add-one smoothed, sum to 1
    // per attribute: nominal -> rows per class over the vocabulary
    // (add-one smoothed, each row sums to 1); numeric -> Gaussian params
    std::vector<std::vector<std::vector<double>>> nominal_likelihood;
    std::vector<NumericLikelihood> numeric_likelihood;
};

NaiveBayesModel nb_fit(const Dataset& ds);

// --- k-nearest neighbour ---------------------------------------------------

class KnnModel {
public:
    std::vector<AttributeSpec> schema;
    std::size_t class_index = 0;
    std::size_t k = 5;
    bool normalize = true;           // min-max normalization of numeric features
    std::vector<double> attr_min, attr_max;  // per schema slot (numeric features)
    std::vector<Instance> train;
    std::vector<int> labels;
};

KnnModel knn_fit(const Dataset& ds, std::size_t k = 5, bool normalize = true);

// Euclidean distance over min-max-normalized numeric features plus 0/1
// mismatch terms for nominal features.
double knn_distance(const KnnModel& m, const Instance& a, const Instance& b);

// vote ties broken by summed inverse neighbor distance, then class order
int knn_predict(const KnnModel& m, const Instance& x);

// --- baseline and common surface -------------------------------------------

// ZeroR: always predicts the stored class proportions.
class PriorModel {
public:
    std::vector<AttributeSpec> schema;
    std::size_t class_index = 0;
    std::vector<double> priors;  // raw class proportions
};

PriorModel prior_fit(const Dataset& ds);

using Model = std::variant<DecisionTreeModel, NaiveBayesModel, KnnModel, PriorModel>;

enum class Algorithm { C45, NaiveBayes, Knn, Prior };

struct LearnerSpec {
    Algorithm algo = Algorithm::C45;
    C45Params c45;
    std::size_t knn_k = 5;
};

Model fit(const LearnerSpec& spec, const Dataset& ds);

ClassDistribution predict_proba(const Model& m, const Instance& x);
ClassDistribution predict_proba(const DecisionTreeModel& m, const Instance& x);
ClassDistribution predict_proba(const NaiveBayesModel& m, const Instance& x);
ClassDistribution predict_proba(const KnnModel& m, const Instance& x);
ClassDistribution predict_proba(const PriorModel& m, const Instance& x);

// argmax of predict_proba; returns the class code
int predict(const Model& m, const Instance& x);

const std::vector<AttributeSpec>& model_schema(const Model& m);
std::size_t model_class_index(const Model& m);

nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

} // namespace advisory

#endif
