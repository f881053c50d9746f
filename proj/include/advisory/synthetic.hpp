#ifndef ADVISORY_SYNTHETIC_HPP
#define ADVISORY_SYNTHETIC_HPP

#include <array>
#include <cstdint>

#include <nlohmann/json_fwd.hpp>

#include "advisory/data_model.hpp"

namespace advisory {

// Truncated-normal location/scale for one (risk, learning-status) cell.
struct CellProfile {
    double reg_mean = 0.0;
    double reg_sd = 0.0;
    double diff_mean = 0.0;
    double diff_sd = 0.0;
    double gpa_mean = 0.0;
    double gpa_sd = 0.0;
};

// Cohort generator parameters. Gender and learning status are assigned by
// exact quota; the risk label is a stochastic draw, and the feature draws
// are conditioned on it so the label stays learnable. Default hour
// locations and scales come from the observed cohort summaries.
struct GeneratorParams {
    std::size_t n = 249;
    double female_fraction = 0.46;
    double expected_fraction = 39.0 / 249.0;
    // priors over {Normal, NearToRisk, UnderRisk}
    std::array<double, 3> risk_priors = {0.72, 0.16, 0.12};
    // [risk][l_status]; l_status 0 = InStudy, 1 = ExpectedToGraduate
    std::array<std::array<CellProfile, 2>, 3> profiles = default_profiles();
    std::uint64_t seed = 0;

    static std::array<std::array<CellProfile, 2>, 3> default_profiles();
};

GeneratorParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const GeneratorParams& p);

// deterministic per seed; every record satisfies the cohort invariants
Dataset generate_cohort(const GeneratorParams& p);

} // namespace advisory

#endif
