#include "advisory/inferential_stats.hpp"
#include "advisory/errors.hpp"
#include "advisory/special_functions.hpp"

#include <cmath>

namespace advisory {

GroupSummary summarize_group(const std::vector<double>& sample) {
    if (sample.size() < 2) throw DomainError("group needs at least 2 observations");
    GroupSummary g;
    g.n = sample.size();
    double sum = 0.0;
    for (double v : sample) sum += v;
    g.mean = sum / static_cast<double>(g.n);
    double ss = 0.0;
    for (double v : sample) {
        const double d = v - g.mean;
        ss += d * d;
    }
    g.variance = ss / static_cast<double>(g.n - 1);
    return g;
}

AnovaTable anova_from_ss(double ss_between, double ss_within, std::size_t k,
                         std::size_t n, double alpha) {
    if (k < 2) throw DomainError("ANOVA needs at least 2 groups");
    if (n <= k) throw DomainError("ANOVA needs more observations than groups");
    if (ss_between < 0.0 || ss_within < 0.0) throw DomainError("sums of squares must be non-negative");
    if (ss_within == 0.0) throw DomainError("zero within-group variance");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");

    AnovaTable t;
    t.alpha = alpha;
    t.ss_between = ss_between;
    t.ss_within = ss_within;
    t.ss_total = ss_between + ss_within;
    t.df_between = k - 1;
    t.df_within = n - k;
    t.df_total = n - 1;
    t.ms_between = ss_between / static_cast<double>(t.df_between);
    t.ms_within = ss_within / static_cast<double>(t.df_within);
    t.f = t.ms_between / t.ms_within;
    const double d1 = static_cast<double>(t.df_between);
    const double d2 = static_cast<double>(t.df_within);
    t.p_value = 1.0 - sf::f_cdf(t.f, d1, d2);
    t.f_crit = sf::f_inv(1.0 - alpha, d1, d2);
    return t;
}

AnovaTable one_way_anova(const std::vector<std::vector<double>>& groups, double alpha) {
    if (groups.size() < 2) throw DomainError("ANOVA needs at least 2 groups");
    std::size_t n = 0;
    double total = 0.0;
    for (const auto& g : groups) {
        if (g.empty()) throw DomainError("ANOVA group is empty");
        n += g.size();
        for (double v : g) total += v;
    }
    if (n <= groups.size()) throw DomainError("ANOVA needs more observations than groups");
    const double grand_mean = total / static_cast<double>(n);

    double ss_between = 0.0, ss_within = 0.0;
    for (const auto& g : groups) {
        double sum = 0.0;
        for (double v : g) sum += v;
        const double mean = sum / static_cast<double>(g.size());
        const double d = mean - grand_mean;
        ss_between += static_cast<double>(g.size()) * d * d;
        for (double v : g) ss_within += (v - mean) * (v - mean);
    }
    return anova_from_ss(ss_between, ss_within, groups.size(), n, alpha);
}

TTestResult t_test_equal_var(const GroupSummary& g1, const GroupSummary& g2,
                             double hypothesized_diff, double alpha) {
    if (g1.n < 2 || g2.n < 2) throw DomainError("t-test groups need n >= 2");
    if (g1.variance < 0.0 || g2.variance < 0.0) throw DomainError("negative variance");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");

    TTestResult r;
    r.g1 = g1;
    r.g2 = g2;
    r.alpha = alpha;
    r.hypothesized_mean_diff = hypothesized_diff;
    r.df = g1.n + g2.n - 2;
    const double n1 = static_cast<double>(g1.n);
    const double n2 = static_cast<double>(g2.n);
    r.pooled_variance = ((n1 - 1.0) * g1.variance + (n2 - 1.0) * g2.variance)
                      / static_cast<double>(r.df);
    if (r.pooled_variance <= 0.0) throw DomainError("pooled variance is zero");
    const double se = std::sqrt(r.pooled_variance * (1.0 / n1 + 1.0 / n2));
    r.t_stat = (g1.mean - g2.mean - hypothesized_diff) / se;
    const double df = static_cast<double>(r.df);
    r.p_one_tail = 1.0 - sf::t_cdf(std::fabs(r.t_stat), df);
    r.p_two_tail = 2.0 * r.p_one_tail;
    r.t_crit_one_tail = sf::t_inv(1.0 - alpha, df);
    r.t_crit_two_tail = sf::t_inv(1.0 - alpha / 2.0, df);
    return r;
}

TTestResult t_test_from_samples(const std::vector<double>& s1,
                                const std::vector<double>& s2,
                                double hypothesized_diff, double alpha) {
    return t_test_equal_var(summarize_group(s1), summarize_group(s2),
                            hypothesized_diff, alpha);
}

} // namespace advisory
