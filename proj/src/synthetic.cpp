#include "advisory/synthetic.hpp"
#include "advisory/errors.hpp"
#include "advisory/rng.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace advisory {

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

void check_fraction(double f, const char* name) {
    if (!(f >= 0.0 && f <= 1.0))
        throw InvalidParams(std::string(name) + " must lie in [0, 1]");
}

CellProfile read_profile(const nlohmann::json& j) {
    CellProfile c;
    c.reg_mean = j.at("reg_mean").get<double>();
    c.reg_sd = j.at("reg_sd").get<double>();
    c.diff_mean = j.at("diff_mean").get<double>();
    c.diff_sd = j.at("diff_sd").get<double>();
    c.gpa_mean = j.at("gpa_mean").get<double>();
    c.gpa_sd = j.at("gpa_sd").get<double>();
    return c;
}

nlohmann::json write_profile(const CellProfile& c) {
    return {{"reg_mean", c.reg_mean}, {"reg_sd", c.reg_sd},
            {"diff_mean", c.diff_mean}, {"diff_sd", c.diff_sd},
            {"gpa_mean", c.gpa_mean}, {"gpa_sd", c.gpa_sd}};
}

const char* kRiskNames[3] = {"normal", "near_to_risk", "under_risk"};
const char* kStatusNames[2] = {"in_study", "expected"};

} // namespace

std::array<std::array<CellProfile, 2>, 3> GeneratorParams::default_profiles() {
    // registered hours by learning status; diff and GPA by risk class,
    // spread far enough apart that the label is learnable at n = 249
    const double reg_mean[2] = {109.3381, 175.5385};
    const double reg_sd[2] = {41.40297, 20.50911};
    const double diff_mean[3] = {10.0, 28.0, 45.0};
    const double diff_sd[3] = {6.0, 7.0, 8.0};
    const double gpa_mean[3] = {4.05, 3.20, 2.45};
    const double gpa_sd[3] = {0.45, 0.45, 0.45};
    std::array<std::array<CellProfile, 2>, 3> out{};
    for (int r = 0; r < 3; ++r) {
        for (int s = 0; s < 2; ++s) {
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = {
                reg_mean[s], reg_sd[s], diff_mean[r], diff_sd[r], gpa_mean[r], gpa_sd[r]};
        }
    }
    return out;
}

GeneratorParams params_from_json(const nlohmann::json& j) {
    GeneratorParams p;
    if (j.contains("n")) p.n = j.at("n").get<std::size_t>();
    if (j.contains("female_fraction")) p.female_fraction = j.at("female_fraction").get<double>();
    if (j.contains("expected_fraction")) p.expected_fraction = j.at("expected_fraction").get<double>();
    if (j.contains("risk_priors")) {
        auto v = j.at("risk_priors").get<std::vector<double>>();
        if (v.size() != 3) throw InvalidParams("risk_priors needs 3 entries");
        std::copy(v.begin(), v.end(), p.risk_priors.begin());
    }
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("profiles")) {
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t s = 0; s < 2; ++s) {
                const auto& risk = j.at("profiles").at(kRiskNames[r]);
                if (risk.contains(kStatusNames[s]))
                    p.profiles[r][s] = read_profile(risk.at(kStatusNames[s]));
            }
    }
    return p;
}

nlohmann::json params_to_json(const GeneratorParams& p) {
    nlohmann::json profiles;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 2; ++s)
            profiles[kRiskNames[r]][kStatusNames[s]] = write_profile(p.profiles[r][s]);
    return {{"n", p.n},
            {"female_fraction", p.female_fraction},
            {"expected_fraction", p.expected_fraction},
            {"risk_priors", p.risk_priors},
            {"seed", p.seed},
            {"profiles", profiles}};
}

Dataset generate_cohort(const GeneratorParams& p) {
    if (p.n == 0) throw InvalidParams("n must be positive");
    check_fraction(p.female_fraction, "female_fraction");
    check_fraction(p.expected_fraction, "expected_fraction");
    double prior_sum = 0.0;
    for (double q : p.risk_priors) {
        if (q < 0.0) throw InvalidParams("risk priors must be non-negative");
        prior_sum += q;
    }
    if (std::fabs(prior_sum - 1.0) > 1e-9) throw InvalidParams("risk priors must sum to 1");
    for (const auto& row : p.profiles)
        for (const CellProfile& c : row)
            if (c.reg_sd < 0.0 || c.diff_sd < 0.0 || c.gpa_sd < 0.0)
                throw InvalidParams("standard deviations must be non-negative");

    Lcg64 rng(p.seed);

    // exact-count quota assignment for gender and learning status
    const auto n_female = static_cast<std::size_t>(std::lround(
        static_cast<double>(p.n) * p.female_fraction));
    const auto n_expected = static_cast<std::size_t>(std::lround(
        static_cast<double>(p.n) * p.expected_fraction));
    std::vector<int> gender(p.n, 0), status(p.n, 0);
    for (std::size_t i = 0; i < n_female && i < p.n; ++i) gender[i] = 1;
    for (std::size_t i = 0; i < n_expected && i < p.n; ++i) status[i] = 1;
    rng.shuffle(gender);
    rng.shuffle(status);

    Dataset ds(cohort_schema(), cohort_class_index());
    for (std::size_t i = 0; i < p.n; ++i) {
        const double u = rng.next_double();
        std::size_t risk = 0;
        double acc = 0.0;
        for (std::size_t r = 0; r < 3; ++r) {
            acc += p.risk_priors[r];
            if (u < acc) { risk = r; break; }
            risk = r;
        }
        const CellProfile& prof = p.profiles[risk][static_cast<std::size_t>(status[i])];

        StudentRecord rec;
        rec.sid = "S" + std::to_string(i + 1);
        rec.gen = gender[i] == 1 ? Gender::Female : Gender::Male;
        rec.l_status = status[i] == 1 ? LStatus::ExpectedToGraduate : LStatus::InStudy;
        rec.ad_status = static_cast<AdStatus>(risk);

        long reg = std::lround(prof.reg_mean + prof.reg_sd * rng.next_normal());
        reg = std::max(0L, reg);
        long diff = std::lround(prof.diff_mean + prof.diff_sd * rng.next_normal());
        diff = std::clamp(diff, 0L, reg);
        rec.total_reg_ch = static_cast<int>(reg);
        rec.total_gain_ch = static_cast<int>(reg - diff);
        rec.diff_g_r_ch = static_cast<int>(diff);

        double gpa = prof.gpa_mean + prof.gpa_sd * rng.next_normal();
        rec.cum_gpa = round2(std::clamp(gpa, 0.0, 5.0));

        // regular semesters allow 13-19 credit hours
        rec.total_cur_ch = 13 + static_cast<int>(rng.next_below(7));
        rec.plan_study = static_cast<PlanStudy>(rng.next_below(3));

        ds.add_instance(row_from_record(rec));
    }
    return ds;
}

} // namespace advisory
