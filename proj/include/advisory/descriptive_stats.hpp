#ifndef ADVISORY_DESCRIPTIVE_STATS_HPP
#define ADVISORY_DESCRIPTIVE_STATS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advisory/data_model.hpp"

namespace advisory {

// Per-group statistic grid. st_dev needs n >= 2, skewness n >= 3,
// kurtosis n >= 4; below that the field is absent. Mode is absent when
// every value is unique.
struct DescriptiveSummary {
    std::size_t n = 0;
    double mean = 0.0;
    std::optional<double> st_dev;     // sample, n-1 denominator
    double median = 0.0;
    std::optional<double> mode;       // ties broken by smallest value
    std::optional<double> std_error;  // st_dev / sqrt(n)
    std::optional<double> kurtosis;   // bias-corrected excess
    std::optional<double> skewness;   // bias-corrected
};

// throws EmptyInput
DescriptiveSummary summarize(const std::vector<double>& values);

// one summary per non-empty group of group_attr, in vocabulary order;
// throws UnknownAttribute / NotNumeric / NotNominal
std::vector<std::pair<std::string, DescriptiveSummary>>
summarize_by_group(const Dataset& ds, const std::string& value_attr,
                   const std::string& group_attr);

} // namespace advisory

#endif
