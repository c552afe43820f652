#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "biprox/report.hpp"

namespace biprox {

struct CommandOptions {
    std::string group;
    std::string subgroup = "trivial";
    std::string side = "both";  // primal | dual | both
    int max_index = 12;
    int max_order = kDefaultOrderCap;
    int jobs = 1;
    std::uint64_t seed = 1;
    bool check_paper = false;
    std::string format = "json";  // json | csv | text | dot
    std::string basis = "auto";   // auto | cosets | matrix-units
    std::vector<std::string> groups;  // survey catalog filter
    std::string csv_path;             // survey CSV destination (stdout when format is csv)
    std::string file;                 // fusion-check input
};

// Expected tables, entries already multiplied by sqrt(index).
// s3: basis e1, e2, e11, e12, e21, e22 of the primal algebra of S3.
// s2s4: basis e1..e7 of double cosets of <(1,2)> in S4, e1 = H.
std::vector<std::vector<CVector>> expected_s3_table();
std::vector<std::vector<CVector>> expected_s2s4_table();

struct TableMatch {
    bool ok = false;
    double max_deviation = 0;
    std::vector<int> permutation;  // computed basis index -> expected basis index
};
TableMatch match_exact(const CoproductTable& t, const std::vector<std::vector<CVector>>& expected);
// Searches permutations fixing index 0.
TableMatch match_up_to_permutation(const CoproductTable& t, const std::vector<std::vector<CVector>>& expected);

CoproductTable default_table(const ContextPtr& ctx, const std::string& basis = "auto");

// Each returns the process exit code and writes to out.
int cmd_analyze(const CommandOptions& o, std::ostream& out);
int cmd_table(const CommandOptions& o, std::ostream& out);
int cmd_survey(const CommandOptions& o, std::ostream& out);
int cmd_lattice(const CommandOptions& o, std::ostream& out);
int cmd_fusion_check(const CommandOptions& o, std::ostream& out);
int cmd_catalog(const CommandOptions& o, std::ostream& out);

int exit_code(const Error& e);

}  // namespace biprox
