#include "advisory/classifiers.hpp"
#include "advisory/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "advisory/special_functions.hpp"

namespace advisory {

namespace {

constexpr double kEps = 1e-12;

std::vector<std::size_t> feature_indices(const std::vector<AttributeSpec>& schema) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema[i].role == AttrRole::Feature || schema[i].role == AttrRole::Derived)
            out.push_back(i);
    return out;
}

double entropy_of(const std::vector<std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

std::vector<std::size_t> class_counts_of(const Dataset& ds,
                                         const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> counts(ds.class_attribute().values.size(), 0);
    for (std::size_t r : rows) ++counts[static_cast<std::size_t>(ds.class_code(r))];
    return counts;
}

struct SplitEval {
    bool valid = false;
    double gain = 0.0;
    double split_info = 0.0;
    double threshold = 0.0; // numeric only
};

// nominal split over a row subset; requires >= 2 branches of size >= min_branch
SplitEval eval_nominal_split(const Dataset& ds, const std::vector<std::size_t>& rows,
                             std::size_t attr, std::size_t min_branch) {
    const std::size_t n_values = ds.attribute(attr).values.size();
    const std::size_t n_classes = ds.class_attribute().values.size();
    std::vector<std::vector<std::size_t>> counts(n_values,
                                                 std::vector<std::size_t>(n_classes, 0));
    std::vector<std::size_t> sizes(n_values, 0);
    for (std::size_t r : rows) {
        const auto v = static_cast<std::size_t>(ds.instance(r)[attr].code());
        ++sizes[v];
        ++counts[v][static_cast<std::size_t>(ds.class_code(r))];
    }
    std::size_t big_branches = 0;
    for (std::size_t s : sizes)
        if (s >= min_branch && s > 0) ++big_branches;
    SplitEval e;
    if (big_branches < 2) return e;

    const double total = static_cast<double>(rows.size());
    const double parent = entropy_of(class_counts_of(ds, rows), rows.size());
    double child_entropy = 0.0;
    double split_info = 0.0;
    for (std::size_t v = 0; v < n_values; ++v) {
        if (sizes[v] == 0) continue;
        const double w = static_cast<double>(sizes[v]) / total;
        child_entropy += w * entropy_of(counts[v], sizes[v]);
        split_info -= w * std::log2(w);
    }
    e.valid = true;
    e.gain = std::max(0.0, parent - child_entropy);
    e.split_info = split_info;
    return e;
}

// best binary threshold for a numeric attribute; both sides >= min_branch
SplitEval eval_numeric_split(const Dataset& ds, const std::vector<std::size_t>& rows,
                             std::size_t attr, std::size_t min_branch) {
    const std::size_t n_classes = ds.class_attribute().values.size();
    std::vector<std::pair<double, int>> vc;
    vc.reserve(rows.size());
    for (std::size_t r : rows)
        vc.emplace_back(ds.instance(r)[attr].num(), ds.class_code(r));
    std::sort(vc.begin(), vc.end());

    SplitEval best;
    const std::size_t n = vc.size();
    if (n < 2 * std::max<std::size_t>(min_branch, 1)) return best;
    const double parent = entropy_of(class_counts_of(ds, rows), n);

    std::vector<std::size_t> left(n_classes, 0), right(n_classes, 0);
    for (const auto& [v, c] : vc) ++right[static_cast<std::size_t>(c)];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto c = static_cast<std::size_t>(vc[i].second);
        ++left[c];
        --right[c];
        if (vc[i].first == vc[i + 1].first) continue;
        const std::size_t nl = i + 1, nr = n - nl;
        if (nl < min_branch || nr < min_branch) continue;
        const double wl = static_cast<double>(nl) / static_cast<double>(n);
        const double wr = 1.0 - wl;
        const double gain = parent - wl * entropy_of(left, nl) - wr * entropy_of(right, nr);
        if (!best.valid || gain > best.gain + kEps) {
            best.valid = true;
            best.gain = std::max(0.0, gain);
            best.split_info = -(wl * std::log2(wl) + wr * std::log2(wr));
            best.threshold = 0.5 * (vc[i].first + vc[i + 1].first);
        }
    }
    return best;
}

SplitEval eval_split(const Dataset& ds, const std::vector<std::size_t>& rows,
                     std::size_t attr, std::size_t min_branch) {
    return ds.attribute(attr).kind == AttrKind::Nominal
               ? eval_nominal_split(ds, rows, attr, min_branch)
               : eval_numeric_split(ds, rows, attr, min_branch);
}

std::vector<std::size_t> all_rows(const Dataset& ds) {
    std::vector<std::size_t> rows(ds.size());
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

int majority_class(const std::vector<std::size_t>& counts) {
    return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::vector<double> dist_from_counts(const std::vector<std::size_t>& counts) {
    const auto total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    std::vector<double> d(counts.size(), 0.0);
    if (total == 0) return d;
    for (std::size_t i = 0; i < counts.size(); ++i)
        d[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return d;
}

// --- C4.5 induction --------------------------------------------------------

class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const C45Params& params)
        : ds_(ds), params_(params), features_(feature_indices(ds.schema())) {}

    int build(const std::vector<std::size_t>& rows, std::vector<bool> used_nominal) {
        TreeNode node;
        node.class_counts = class_counts_of(ds_, rows);
        node.count = rows.size();
        node.majority = majority_class(node.class_counts);
        node.dist = dist_from_counts(node.class_counts);

        const bool pure = std::count_if(node.class_counts.begin(), node.class_counts.end(),
                                        [](std::size_t c) { return c > 0; }) <= 1;
        const std::size_t min_leaf = std::max<std::size_t>(params_.min_leaf, 1);
        if (pure || rows.size() < 2 * min_leaf)
            return emplace(std::move(node));

        // score every candidate attribute
        std::vector<std::pair<std::size_t, SplitEval>> candidates;
        double gain_sum = 0.0;
        for (std::size_t a : features_) {
            if (ds_.attribute(a).kind == AttrKind::Nominal && used_nominal[a]) continue;
            SplitEval e = eval_split(ds_, rows, a, min_leaf);
            if (!e.valid || e.gain <= kEps) continue;
            gain_sum += e.gain;
            candidates.emplace_back(a, e);
        }
        if (candidates.empty()) return emplace(std::move(node));

        // gain >= mean gain gate, then best gain ratio
        const double mean_gain = gain_sum / static_cast<double>(candidates.size());
        std::size_t best_attr = 0;
        SplitEval best;
        double best_ratio = -1.0;
        for (const auto& [a, e] : candidates) {
            if (e.gain + kEps < mean_gain || e.split_info <= kEps) continue;
            const double ratio = e.gain / e.split_info;
            if (ratio > best_ratio + kEps) {
                best_ratio = ratio;
                best_attr = a;
                best = e;
            }
        }
        if (best_ratio < 0.0) return emplace(std::move(node));

        node.attr = static_cast<int>(best_attr);
        if (ds_.attribute(best_attr).kind == AttrKind::Nominal) {
            node.type = TreeNode::Type::NominalSplit;
            used_nominal[best_attr] = true;
            const std::size_t n_values = ds_.attribute(best_attr).values.size();
            std::vector<std::vector<std::size_t>> parts(n_values);
            for (std::size_t r : rows)
                parts[static_cast<std::size_t>(ds_.instance(r)[best_attr].code())].push_back(r);
            for (const auto& part : parts) {
                if (part.empty()) {
                    // empty branch falls back to the parent's distribution
                    TreeNode leaf;
                    leaf.class_counts.assign(node.class_counts.size(), 0);
                    leaf.count = 0;
                    leaf.majority = node.majority;
                    leaf.dist = node.dist;
                    node.children.push_back(emplace(std::move(leaf)));
                } else {
                    node.children.push_back(build(part, used_nominal));
                }
            }
        } else {
            node.type = TreeNode::Type::NumericSplit;
            node.threshold = best.threshold;
            std::vector<std::size_t> le, gt;
            for (std::size_t r : rows) {
                if (ds_.instance(r)[best_attr].num() <= best.threshold) le.push_back(r);
                else gt.push_back(r);
            }
            node.children.push_back(build(le, used_nominal));
            node.children.push_back(build(gt, used_nominal));
        }
        return emplace(std::move(node));
    }

    std::vector<TreeNode> take_nodes() { return std::move(nodes_); }

private:
    int emplace(TreeNode node) {
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size() - 1);
    }

    const Dataset& ds_;
    const C45Params& params_;
    std::vector<std::size_t> features_;
    std::vector<TreeNode> nodes_;
};

// Upper confidence limit of the binomial error rate, times n: the
// pessimistic error count C4.5 assigns to a leaf with n cases and e errors.
double pessimistic_errors(std::size_t n, std::size_t e, double cf) {
    if (n == 0) return 0.0;
    if (e >= n) return static_cast<double>(n);
    const double dn = static_cast<double>(n);
    if (e == 0) return dn * (1.0 - std::pow(cf, 1.0 / dn));
    // solve P(X <= e | n, p) = cf for p; the CDF is I_{1-p}(n-e, e+1)
    const double a = dn - static_cast<double>(e);
    const double b = static_cast<double>(e) + 1.0;
    double lo = static_cast<double>(e) / dn, hi = 1.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (sf::reg_inc_beta(a, b, 1.0 - mid) > cf) lo = mid; else hi = mid;
    }
    return dn * 0.5 * (lo + hi);
}

// subtree replacement; returns the estimated error count of the (possibly
// replaced) subtree rooted at idx
double prune_node(std::vector<TreeNode>& nodes, int idx, double cf) {
    TreeNode& node = nodes[static_cast<std::size_t>(idx)];
    const std::size_t errors = node.count - node.class_counts[static_cast<std::size_t>(node.majority)];
    const double as_leaf = pessimistic_errors(node.count, errors, cf);
    if (node.type == TreeNode::Type::Leaf) return as_leaf;

    double as_subtree = 0.0;
    for (int c : node.children) as_subtree += prune_node(nodes, c, cf);
    if (as_leaf <= as_subtree + 1e-9) {
        node.type = TreeNode::Type::Leaf;
        node.attr = -1;
        node.children.clear();
        return as_leaf;
    }
    return as_subtree;
}

// --- shared predict helpers ------------------------------------------------

void check_instance(const std::vector<AttributeSpec>& schema, const Instance& x) {
    if (x.size() != schema.size())
        throw SchemaMismatch("instance has " + std::to_string(x.size()) +
                             " values, model schema has " + std::to_string(schema.size()));
}

nlohmann::json cell_to_json(const AttributeSpec& a, const Cell& c) {
    if (a.role == AttrRole::Id) return c.text();
    if (a.kind == AttrKind::Numeric) return c.num();
    return a.values[static_cast<std::size_t>(c.code())];
}

Cell cell_from_json(const AttributeSpec& a, const nlohmann::json& j) {
    if (a.role == AttrRole::Id) return Cell::id(j.get<std::string>());
    if (a.kind == AttrKind::Numeric) return Cell::numeric(j.get<double>());
    int code = a.value_index(j.get<std::string>());
    if (code < 0) throw SchemaMismatch("value not in vocabulary of " + a.name);
    return Cell::nominal(code);
}

} // namespace

int ClassDistribution::argmax() const {
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

double entropy(const std::vector<std::size_t>& class_counts) {
    const auto total = std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0});
    if (total == 0) throw EmptyInput("entropy needs at least one case");
    return entropy_of(class_counts, total);
}

double info_gain(const Dataset& ds, const std::string& attr) {
    const std::size_t a = ds.attr_index(attr);
    if (ds.attribute(a).role != AttrRole::Feature && ds.attribute(a).role != AttrRole::Derived)
        throw UnknownAttribute(attr + " is not a feature");
    if (ds.empty()) throw EmptyDataset();
    SplitEval e = eval_split(ds, all_rows(ds), a, 1);
    return e.valid ? e.gain : 0.0;
}

std::optional<double> gain_ratio(const Dataset& ds, const std::string& attr) {
    const std::size_t a = ds.attr_index(attr);
    if (ds.attribute(a).role != AttrRole::Feature && ds.attribute(a).role != AttrRole::Derived)
        throw UnknownAttribute(attr + " is not a feature");
    if (ds.empty()) throw EmptyDataset();
    SplitEval e = eval_split(ds, all_rows(ds), a, 1);
    if (!e.valid || e.split_info <= kEps) return std::nullopt;
    return e.gain / e.split_info;
}

DecisionTreeModel::DecisionTreeModel(std::vector<AttributeSpec> schema,
                                     std::size_t class_index,
                                     std::vector<TreeNode> nodes, int root)
    : schema_(std::move(schema)), class_index_(class_index),
      nodes_(std::move(nodes)), root_(root) {}

std::size_t DecisionTreeModel::leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) {
            return n.type == TreeNode::Type::Leaf;
        }));
}

std::size_t DecisionTreeModel::depth() const {
    if (root_ < 0) return 0;
    // depth via recursion over the node pool
    struct Walk {
        const std::vector<TreeNode>& nodes;
        std::size_t at(int i) const {
            const TreeNode& n = nodes[static_cast<std::size_t>(i)];
            std::size_t d = 0;
            for (int c : n.children) d = std::max(d, at(c));
            return d + (n.type == TreeNode::Type::Leaf ? 0 : 1);
        }
    };
    return Walk{nodes_}.at(root_);
}

DecisionTreeModel c45_fit(const Dataset& ds, const C45Params& params) {
    if (ds.empty()) throw EmptyDataset();
    if (feature_indices(ds.schema()).empty()) throw NoFeatures();
    TreeBuilder builder(ds, params);
    const int root = builder.build(all_rows(ds), std::vector<bool>(ds.n_attributes(), false));
    std::vector<TreeNode> nodes = builder.take_nodes();
    if (params.prune) prune_node(nodes, root, params.cf);
    return DecisionTreeModel(ds.schema(), ds.class_index(), std::move(nodes), root);
}

ClassDistribution predict_proba(const DecisionTreeModel& m, const Instance& x) {
    check_instance(m.schema(), x);
    int at = m.root();
    for (;;) {
        const TreeNode& n = m.node(at);
        if (n.type == TreeNode::Type::Leaf) return {n.dist};
        const auto a = static_cast<std::size_t>(n.attr);
        if (n.type == TreeNode::Type::NominalSplit)
            at = n.children[static_cast<std::size_t>(x[a].code())];
        else
            at = x[a].num() <= n.threshold ? n.children[0] : n.children[1];
    }
}

// --- Naive Bayes -----------------------------------------------------------

NaiveBayesModel nb_fit(const Dataset& ds) {
    if (ds.empty()) throw EmptyDataset();
    NaiveBayesModel m;
    m.schema = ds.schema();
    m.class_index = ds.class_index();
    const std::size_t n_classes = ds.class_attribute().values.size();
    const double n = static_cast<double>(ds.size());

    std::vector<std::size_t> class_n(n_classes, 0);
    for (std::size_t r = 0; r < ds.size(); ++r)
        ++class_n[static_cast<std::size_t>(ds.class_code(r))];

    // add-one smoothed priors
    m.priors.resize(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c)
        m.priors[c] = (static_cast<double>(class_n[c]) + 1.0) / (n + static_cast<double>(n_classes));

    m.nominal_likelihood.resize(ds.n_attributes());
    m.numeric_likelihood.resize(ds.n_attributes());
    for (std::size_t a : feature_indices(ds.schema())) {
        const AttributeSpec& spec = ds.attribute(a);
        if (spec.kind == AttrKind::Nominal) {
            const std::size_t v_count = spec.values.size();
            auto& table = m.nominal_likelihood[a];
            table.assign(n_classes, std::vector<double>(v_count, 0.0));
            for (std::size_t r = 0; r < ds.size(); ++r) {
                const auto c = static_cast<std::size_t>(ds.class_code(r));
                table[c][static_cast<std::size_t>(ds.instance(r)[a].code())] += 1.0;
            }
            for (std::size_t c = 0; c < n_classes; ++c) {
                const double denom = static_cast<double>(class_n[c]) + static_cast<double>(v_count);
                for (double& cell : table[c]) cell = (cell + 1.0) / denom;
            }
        } else {
            // Gaussian per class with a variance floor of 1e-9 * range^2
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            double all_sum = 0.0;
            for (std::size_t r = 0; r < ds.size(); ++r) {
                const double v = ds.instance(r)[a].num();
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                all_sum += v;
            }
            const double range = hi - lo;
            const double floor = range > 0.0 ? 1e-9 * range * range : 1e-9;
            const double all_mean = all_sum / n;

            auto& lik = m.numeric_likelihood[a];
            lik.mean.assign(n_classes, all_mean);
            lik.variance.assign(n_classes, floor);
            std::vector<double> sums(n_classes, 0.0);
            for (std::size_t r = 0; r < ds.size(); ++r)
                sums[static_cast<std::size_t>(ds.class_code(r))] += ds.instance(r)[a].num();
            for (std::size_t c = 0; c < n_classes; ++c)
                if (class_n[c] > 0) lik.mean[c] = sums[c] / static_cast<double>(class_n[c]);
            std::vector<double> sqs(n_classes, 0.0);
            for (std::size_t r = 0; r < ds.size(); ++r) {
                const auto c = static_cast<std::size_t>(ds.class_code(r));
                const double d = ds.instance(r)[a].num() - lik.mean[c];
                sqs[c] += d * d;
            }
            for (std::size_t c = 0; c < n_classes; ++c) {
                if (class_n[c] >= 2)
                    lik.variance[c] = std::max(floor, sqs[c] / static_cast<double>(class_n[c] - 1));
            }
        }
    }
    return m;
}

ClassDistribution predict_proba(const NaiveBayesModel& m, const Instance& x) {
    check_instance(m.schema, x);
    const std::size_t n_classes = m.priors.size();
    std::vector<double> logp(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) logp[c] = std::log(m.priors[c]);
    for (std::size_t a : feature_indices(m.schema)) {
        if (m.schema[a].kind == AttrKind::Nominal) {
            const auto v = static_cast<std::size_t>(x[a].code());
            for (std::size_t c = 0; c < n_classes; ++c)
                logp[c] += std::log(m.nominal_likelihood[a][c][v]);
        } else {
            const double v = x[a].num();
            for (std::size_t c = 0; c < n_classes; ++c) {
                const double var = m.numeric_likelihood[a].variance[c];
                const double d = v - m.numeric_likelihood[a].mean[c];
                logp[c] += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
            }
        }
    }
    const double mx = *std::max_element(logp.begin(), logp.end());
    ClassDistribution out;
    out.p.resize(n_classes);
    double sum = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        out.p[c] = std::exp(logp[c] - mx);
        sum += out.p[c];
    }
    for (double& p : out.p) p /= sum;
    return out;
}

// --- k-nearest neighbour ---------------------------------------------------

KnnModel knn_fit(const Dataset& ds, std::size_t k, bool normalize) {
    if (ds.empty()) throw EmptyDataset();
    if (k < 1) throw KTooLarge("k must be at least 1");
    if (k > ds.size())
        throw KTooLarge("k = " + std::to_string(k) + " exceeds " +
                        std::to_string(ds.size()) + " training instances");
    KnnModel m;
    m.schema = ds.schema();
    m.class_index = ds.class_index();
    m.k = k;
    m.normalize = normalize;
    m.attr_min.assign(ds.n_attributes(), 0.0);
    m.attr_max.assign(ds.n_attributes(), 0.0);
    for (std::size_t a : feature_indices(ds.schema())) {
        if (ds.attribute(a).kind != AttrKind::Numeric) continue;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t r = 0; r < ds.size(); ++r) {
            const double v = ds.instance(r)[a].num();
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        m.attr_min[a] = lo;
        m.attr_max[a] = hi;
    }
    m.train.reserve(ds.size());
    m.labels.reserve(ds.size());
    for (std::size_t r = 0; r < ds.size(); ++r) {
        m.train.push_back(ds.instance(r));
        m.labels.push_back(ds.class_code(r));
    }
    return m;
}

double knn_distance(const KnnModel& m, const Instance& a, const Instance& b) {
    check_instance(m.schema, a);
    check_instance(m.schema, b);
    double sum = 0.0;
    for (std::size_t i : feature_indices(m.schema)) {
        if (m.schema[i].kind == AttrKind::Nominal) {
            if (a[i].code() != b[i].code()) sum += 1.0;
        } else {
            double d = a[i].num() - b[i].num();
            if (m.normalize) {
                const double range = m.attr_max[i] - m.attr_min[i];
                d = range > 0.0 ? d / range : 0.0;
            }
            sum += d * d;
        }
    }
    return std::sqrt(sum);
}

namespace {

std::vector<std::pair<double, std::size_t>> nearest_neighbors(const KnnModel& m,
                                                              const Instance& x) {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(m.train.size());
    for (std::size_t i = 0; i < m.train.size(); ++i)
        dist.emplace_back(knn_distance(m, x, m.train[i]), i);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(m.k), dist.end());
    dist.resize(m.k);
    return dist;
}

} // namespace

ClassDistribution predict_proba(const KnnModel& m, const Instance& x) {
    check_instance(m.schema, x);
    const std::size_t n_classes = m.schema[m.class_index].values.size();
    ClassDistribution out;
    out.p.assign(n_classes, 0.0);
    for (const auto& [d, i] : nearest_neighbors(m, x))
        out.p[static_cast<std::size_t>(m.labels[i])] += 1.0 / static_cast<double>(m.k);
    return out;
}

// vote ties broken by summed inverse neighbor distance, then class order
int knn_predict(const KnnModel& m, const Instance& x) {
    check_instance(m.schema, x);
    const std::size_t n_classes = m.schema[m.class_index].values.size();
    std::vector<std::size_t> votes(n_classes, 0);
    std::vector<double> inv_dist(n_classes, 0.0);
    for (const auto& [d, i] : nearest_neighbors(m, x)) {
        const auto c = static_cast<std::size_t>(m.labels[i]);
        ++votes[c];
        inv_dist[c] += 1.0 / (d + 1e-12);
    }
    const std::size_t best_votes = *std::max_element(votes.begin(), votes.end());
    int best = -1;
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (votes[c] != best_votes) continue;
        if (best < 0 || inv_dist[c] > inv_dist[static_cast<std::size_t>(best)] + kEps)
            best = static_cast<int>(c);
    }
    return best;
}

// --- prior baseline --------------------------------------------------------

PriorModel prior_fit(const Dataset& ds) {
    if (ds.empty()) throw EmptyDataset();
    PriorModel m;
    m.schema = ds.schema();
    m.class_index = ds.class_index();
    m.priors.assign(ds.class_attribute().values.size(), 0.0);
    for (std::size_t r = 0; r < ds.size(); ++r)
        m.priors[static_cast<std::size_t>(ds.class_code(r))] += 1.0;
    for (double& p : m.priors) p /= static_cast<double>(ds.size());
    return m;
}

ClassDistribution predict_proba(const PriorModel& m, const Instance& x) {
    check_instance(m.schema, x);
    return {m.priors};
}

// --- common surface --------------------------------------------------------

Model fit(const LearnerSpec& spec, const Dataset& ds) {
    switch (spec.algo) {
        case Algorithm::C45: return c45_fit(ds, spec.c45);
        case Algorithm::NaiveBayes: return nb_fit(ds);
        case Algorithm::Knn: return knn_fit(ds, spec.knn_k);
        default: return prior_fit(ds);
    }
}

ClassDistribution predict_proba(const Model& m, const Instance& x) {
    return std::visit([&](const auto& model) { return predict_proba(model, x); }, m);
}

int predict(const Model& m, const Instance& x) {
    if (const auto* knn = std::get_if<KnnModel>(&m)) return knn_predict(*knn, x);
    return predict_proba(m, x).argmax();
}

const std::vector<AttributeSpec>& model_schema(const Model& m) {
    return std::visit([](const auto& model) -> const std::vector<AttributeSpec>& {
        if constexpr (std::is_same_v<std::decay_t<decltype(model)>, DecisionTreeModel>)
            return model.schema();
        else
            return model.schema;
    }, m);
}

std::size_t model_class_index(const Model& m) {
    return std::visit([](const auto& model) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(model)>, DecisionTreeModel>)
            return model.class_index();
        else
            return model.class_index;
    }, m);
}

// --- JSON serialization ----------------------------------------------------

nlohmann::json model_to_json(const Model& m) {
    nlohmann::json j;
    j["schema"] = schema_to_json(model_schema(m));
    j["class_index"] = model_class_index(m);
    if (const auto* tree = std::get_if<DecisionTreeModel>(&m)) {
        j["algorithm"] = "c45";
        j["root"] = tree->root();
        nlohmann::json nodes = nlohmann::json::array();
        for (const TreeNode& n : tree->nodes()) {
            nlohmann::json e;
            switch (n.type) {
                case TreeNode::Type::Leaf: e["type"] = "leaf"; break;
                case TreeNode::Type::NominalSplit: e["type"] = "nominal"; break;
                case TreeNode::Type::NumericSplit: e["type"] = "numeric"; break;
            }
            e["attr"] = n.attr;
            e["threshold"] = n.threshold;
            e["children"] = n.children;
            e["class_counts"] = n.class_counts;
            e["count"] = n.count;
            e["majority"] = n.majority;
            e["dist"] = n.dist;
            nodes.push_back(std::move(e));
        }
        j["nodes"] = std::move(nodes);
    } else if (const auto* nb = std::get_if<NaiveBayesModel>(&m)) {
        j["algorithm"] = "nb";
        j["priors"] = nb->priors;
        j["nominal_likelihood"] = nb->nominal_likelihood;
        nlohmann::json num = nlohmann::json::array();
        for (const auto& lik : nb->numeric_likelihood)
            num.push_back({{"mean", lik.mean}, {"variance", lik.variance}});
        j["numeric_likelihood"] = std::move(num);
    } else if (const auto* knn = std::get_if<KnnModel>(&m)) {
        j["algorithm"] = "knn";
        j["k"] = knn->k;
        j["normalize"] = knn->normalize;
        j["attr_min"] = knn->attr_min;
        j["attr_max"] = knn->attr_max;
        j["labels"] = knn->labels;
        nlohmann::json rows = nlohmann::json::array();
        for (const Instance& in : knn->train) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t a = 0; a < knn->schema.size(); ++a)
                row.push_back(cell_to_json(knn->schema[a], in[a]));
            rows.push_back(std::move(row));
        }
        j["train"] = std::move(rows);
    } else {
        j["algorithm"] = "prior";
        j["priors"] = std::get<PriorModel>(m).priors;
    }
    return j;
}

Model model_from_json(const nlohmann::json& j) {
    std::vector<AttributeSpec> schema = schema_from_json(j.at("schema"));
    const auto class_index = j.at("class_index").get<std::size_t>();
    const std::string algo = j.at("algorithm").get<std::string>();
    if (algo == "c45") {
        std::vector<TreeNode> nodes;
        for (const auto& e : j.at("nodes")) {
            TreeNode n;
            const std::string type = e.at("type").get<std::string>();
            n.type = type == "leaf" ? TreeNode::Type::Leaf
                   : type == "nominal" ? TreeNode::Type::NominalSplit
                                       : TreeNode::Type::NumericSplit;
            n.attr = e.at("attr").get<int>();
            n.threshold = e.at("threshold").get<double>();
            n.children = e.at("children").get<std::vector<int>>();
            n.class_counts = e.at("class_counts").get<std::vector<std::size_t>>();
            n.count = e.at("count").get<std::size_t>();
            n.majority = e.at("majority").get<int>();
            n.dist = e.at("dist").get<std::vector<double>>();
            nodes.push_back(std::move(n));
        }
        return DecisionTreeModel(std::move(schema), class_index, std::move(nodes),
                                 j.at("root").get<int>());
    }
    if (algo == "nb") {
        NaiveBayesModel m;
        m.schema = std::move(schema);
        m.class_index = class_index;
        m.priors = j.at("priors").get<std::vector<double>>();
        m.nominal_likelihood =
            j.at("nominal_likelihood").get<std::vector<std::vector<std::vector<double>>>>();
        for (const auto& e : j.at("numeric_likelihood")) {
            NaiveBayesModel::NumericLikelihood lik;
            lik.mean = e.at("mean").get<std::vector<double>>();
            lik.variance = e.at("variance").get<std::vector<double>>();
            m.numeric_likelihood.push_back(std::move(lik));
        }
        return m;
    }
    if (algo == "knn") {
        KnnModel m;
        m.schema = std::move(schema);
        m.class_index = class_index;
        m.k = j.at("k").get<std::size_t>();
        m.normalize = j.at("normalize").get<bool>();
        m.attr_min = j.at("attr_min").get<std::vector<double>>();
        m.attr_max = j.at("attr_max").get<std::vector<double>>();
        m.labels = j.at("labels").get<std::vector<int>>();
        for (const auto& row : j.at("train")) {
            Instance in;
            for (std::size_t a = 0; a < m.schema.size(); ++a)
                in.push_back(cell_from_json(m.schema[a], row[a]));
            m.train.push_back(std::move(in));
        }
        return m;
    }
    if (algo == "prior") {
        PriorModel m;
        m.schema = std::move(schema);
        m.class_index = class_index;
        m.priors = j.at("priors").get<std::vector<double>>();
        return m;
    }
    throw DomainError("unknown model algorithm '" + algo + "'");
}

} // namespace advisory
