#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biprox/interval.hpp"
#include "biprox/report.hpp"

namespace biprox {

struct SurveyOptions {
    std::vector<std::string> groups;  // group specs; empty means the whole catalog up to max_order
    int max_index = 12;
    int max_order = kDefaultOrderCap;
    int jobs = 1;
    std::uint64_t seed = 1;
};

// One row per equivalence class of inclusions, represented by its first member in canonical order.
struct SurveyRecord {
    int class_id = 0;
    std::string group;
    std::string subgroup;
    int group_order = 0;
    int index = 0;
    int interval_size = 0;
    int class_size = 0;
    bool maximal = false;
    bool group_cyclic = false;
    bool distributive = false, dedekind = false, cyclic = false;
    bool w_cyclic_primal = false, w_cyclic_dual = false;
    bool w_plus_primal = false, w_plus_dual = false;
    bool h_cyclic = false, linearly_primitive = false;
    bool Z = false, ZZ = false, F2 = false;
    std::optional<int> boolean_rank;
    Rational sum_primal{0}, sum_dual{0};
    std::string error;  // cap or numeric failure; other fields unset
};

struct SurveyResult {
    std::vector<std::string> groups;  // canonical order actually used
    int inclusions = 0;               // conjugacy classes of inclusions before reduction
    std::vector<SurveyRecord> records;
};

// Throws TheoremViolation if a class is cyclic but not w-cyclic.
SurveyResult run_survey(const SurveyOptions& opt);

std::string survey_csv(const SurveyResult& r);
Json survey_summary(const SurveyResult& r, const SurveyOptions& opt);

}  // namespace biprox
