#include "advisory/descriptive_stats.hpp"
#include "advisory/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace advisory {

DescriptiveSummary summarize(const std::vector<double>& values) {
    if (values.empty()) throw EmptyInput("summarize needs at least one value");
    const std::size_t n = values.size();
    const double dn = static_cast<double>(n);

    DescriptiveSummary s;
    s.n = n;

    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / dn;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    s.median = (n % 2 == 1) ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    // mode: most frequent value, smallest on ties, absent when all unique
    std::map<double, std::size_t> freq;
    for (double v : sorted) ++freq[v];
    std::size_t best = 1;
    for (const auto& [v, c] : freq) {
        if (c > best) {
            best = c;
            s.mode = v;
        }
    }

    if (n >= 2) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - s.mean;
            ss += d * d;
        }
        const double var = ss / (dn - 1.0);
        s.st_dev = std::sqrt(var);
        s.std_error = *s.st_dev / std::sqrt(dn);

        if (*s.st_dev > 0.0) {
            double z3 = 0.0, z4 = 0.0;
            for (double v : values) {
                const double z = (v - s.mean) / *s.st_dev;
                z3 += z * z * z;
                z4 += z * z * z * z;
            }
            if (n >= 3)
                s.skewness = dn / ((dn - 1.0) * (dn - 2.0)) * z3;
            if (n >= 4)
                s.kurtosis = dn * (dn + 1.0) / ((dn - 1.0) * (dn - 2.0) * (dn - 3.0)) * z4
                           - 3.0 * (dn - 1.0) * (dn - 1.0) / ((dn - 2.0) * (dn - 3.0));
        }
    }
    return s;
}

std::vector<std::pair<std::string, DescriptiveSummary>>
summarize_by_group(const Dataset& ds, const std::string& value_attr,
                   const std::string& group_attr) {
    std::size_t vi = ds.attr_index(value_attr);
    if (ds.attribute(vi).kind != AttrKind::Numeric || ds.attribute(vi).role == AttrRole::Id)
        throw NotNumeric(value_attr);
    std::vector<std::pair<std::string, DescriptiveSummary>> out;
    for (const auto& [name, group] : partition_by(ds, group_attr))
        out.emplace_back(name, summarize(group.numeric_column(value_attr)));
    return out;
}

} // namespace advisory
