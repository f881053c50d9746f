#ifndef ADVISORY_INFERENTIAL_STATS_HPP
#define ADVISORY_INFERENTIAL_STATS_HPP

#include <cstddef>
#include <vector>

namespace advisory {

struct GroupSummary {
    std::size_t n = 0;      // >= 2
    double mean = 0.0;
    double variance = 0.0;  // sample, n-1 denominator
};

GroupSummary summarize_group(const std::vector<double>& sample);

// One-way ANOVA grid: SS / Df / MS / F / P-value / F crit.
struct AnovaTable {
    double ss_between = 0.0;
    double ss_within = 0.0;
    double ss_total = 0.0;
    std::size_t df_between = 0;
    std::size_t df_within = 0;
    std::size_t df_total = 0;
    double ms_between = 0.0;
    double ms_within = 0.0;
    double f = 0.0;
    double p_value = 0.0;
    double f_crit = 0.0;
    double alpha = 0.05;
};

// Two-sample equal-variance t-test grid. One-tail p is taken against |t|.
struct TTestResult {
    GroupSummary g1, g2;
    double pooled_variance = 0.0;
    double hypothesized_mean_diff = 0.0;
    std::size_t df = 0;
    double t_stat = 0.0;
    double p_one_tail = 0.0;
    double p_two_tail = 0.0;
    double t_crit_one_tail = 0.0;
    double t_crit_two_tail = 0.0;
    double alpha = 0.05;
};

// k >= 2, n > k, ss >= 0, ss_within > 0; throws DomainError
AnovaTable anova_from_ss(double ss_between, double ss_within, std::size_t k,
                         std::size_t n, double alpha = 0.05);

// >= 2 groups, each non-empty, total n > group count; throws DomainError
AnovaTable one_way_anova(const std::vector<std::vector<double>>& groups,
                         double alpha = 0.05);

// both n >= 2, pooled variance > 0; throws DomainError
TTestResult t_test_equal_var(const GroupSummary& g1, const GroupSummary& g2,
                             double hypothesized_diff = 0.0, double alpha = 0.05);

TTestResult t_test_from_samples(const std::vector<double>& s1,
                                const std::vector<double>& s2,
                                double hypothesized_diff = 0.0, double alpha = 0.05);

} // namespace advisory

#endif
