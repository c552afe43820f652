#pragma once

#include <istream>
#include <string>
#include <vector>

#include "biprox/boxalgebra.hpp"

namespace biprox {

// N[i][j][k] = multiplicity of x_k in x_i x_j; basis element 0 is the unit.
struct FusionRing {
    int rank = 0;
    std::vector<std::vector<std::vector<long long>>> N;
    std::vector<int> dual;  // i -> i*, recovered from N[i][j][0]

    long long operator()(int i, int j, int k) const { return N[i][j][k]; }
};

// r blocks of r rows of r integers; block i is the matrix (N[i][j][k])_{j,k}.
// Lines starting with '#' are comments. Throws ParseError.
FusionRing parse_fusion_ring(std::istream& in);
FusionRing load_fusion_ring(const std::string& path);
FusionRing make_fusion_ring(std::vector<std::vector<std::vector<long long>>> n);  // fills dual

// Throws AxiomViolation naming the first failing identity instance.
void verify_axioms(const FusionRing& ring);

std::vector<double> fp_dimensions(const FusionRing& ring);
// Unital subsets closed under products and duals, sorted; always contains {0} and the full basis.
std::vector<std::vector<int>> find_subrings(const FusionRing& ring);

FusionRing group_ring(const GroupPtr& g);

struct ContextFusion {
    FusionRing ring;                            // exact multiplicities (route b)
    std::vector<std::vector<std::vector<char>>> pattern;  // nonzero pattern from coproducts (route a)
    std::vector<int> block_dims;
    bool patterns_agree = false;
};
// Trivial bottom only (NotTrivialH otherwise). Blocks follow the realization order
// except that the trivial representation is moved to index 0.
ContextFusion fusion_from_context(const ContextPtr& ctx);

}  // namespace biprox
