#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "biprox/boxalgebra.hpp"
#include "biprox/interval.hpp"

namespace biprox {

enum class Tri { no, yes, not_determined };
std::string to_string(Tri t);
inline Tri tri(bool b) { return b ? Tri::yes : Tri::no; }

// Biprojection lattice of a context together with the biprojections <p_i>
// generated by its minimal central projections.
struct CentralData {
    FiniteLattice lattice;               // biprojection order: bottom e1, top id
    std::vector<Subgroup> nodes;         // subgroup of each lattice element
    std::vector<BoxElement> central;     // minimal central projections
    std::vector<int> generated;          // lattice element of <p_i>
};
CentralData central_data(const ContextPtr& ctx);
int node_index(const std::vector<Subgroup>& nodes, const Subgroup& k);

// Context P(a < b) for lattice elements a <= b of the biprojection lattice.
ContextPtr sub_context(const ContextPtr& ctx, const std::vector<Subgroup>& nodes, int a, int b);

struct WCyclicWitness {
    int block = -1;
    BoxElement central;  // minimal central projection with <p> = id
    BoxElement minimal;  // minimal projection under it with <v> = id
};
std::optional<WCyclicWitness> is_w_cyclic(const ContextPtr& ctx);

bool is_distributive(const ContextPtr& ctx);
bool is_dedekind(const ContextPtr& ctx);
bool is_cyclic(const ContextPtr& ctx);

struct LwRw {
    bool lw = false;
    bool rw = false;
};
// Through the compressed contexts P(e1 <= b_K) and P(b_K <= id).
LwRw lw_rw_cyclic(const ContextPtr& ctx, const Subgroup& k);
// Inside ctx, with generic minimal projections of every block.
LwRw lw_rw_cyclic_direct(const ContextPtr& ctx, const Subgroup& k);

bool property_Z(const ContextPtr& ctx);
bool property_ZZ(const ContextPtr& ctx);
Tri property_Z_tilde(const ContextPtr& ctx, int max_pairs = 200);
bool property_F2(const ContextPtr& ctx);

// Coproduct-central x, y whose ordinary product is not coproduct-central.
struct ZZWitness {
    BoxElement x, y;
    std::vector<int> x_cosets, y_cosets;  // set when found among 0/1 combinations of double cosets
};
std::optional<ZZWitness> find_zz_witness(const ContextPtr& ctx);

std::vector<Subgroup> maximal_biprojections(const ContextPtr& ctx);
Rational sum_bound(const ContextPtr& ctx);  // sum of 1/[id : b_i] over maximal biprojections
bool w_plus_cyclic(const ContextPtr& ctx);

// Lengths by name: cl, wcl, dl, tcl, tbl, tb<n>l, bcl, bbl, bb<n>l, h.
// nullopt means not determined (wcl beyond four generators).
using LengthMap = std::map<std::string, std::optional<int>>;
LengthMap lengths(const ContextPtr& ctx, const std::set<std::string>& which);
std::optional<int> wcl_by_chains(const ContextPtr& ctx);  // chain definition, for cross-checks

struct Implication {
    std::string name;
    bool hypothesis = false;
    Tri conclusion = Tri::not_determined;
    bool holds() const { return !hypothesis || conclusion != Tri::no; }
};
std::vector<Implication> verify_theorems(const ContextPtr& ctx, bool with_lengths = false);

struct ClassificationReport {
    std::string label;
    Side side = Side::primal;
    int index = 1;
    int lattice_size = 1;
    bool distributive = false, dedekind = false, cyclic = false;
    bool w_cyclic = false, w_plus_cyclic = false;
    bool Z = false, ZZ = false, F2 = false;
    Tri Z_tilde = Tri::not_determined;
    std::optional<int> boolean_rank;
    Rational sum_bound{0};
    std::vector<std::string> maximal;      // subgroup labels of maximal biprojections
    std::optional<int> w_cyclic_block;
    std::vector<std::string> generated;    // <p_i> per minimal central projection
    LengthMap lengths;
};

struct ClassifyOptions {
    std::set<std::string> lengths;
    bool z_tilde = false;
};
// Throws TheoremViolation if cyclic but not w-cyclic.
ClassificationReport classify(const ContextPtr& ctx, const ClassifyOptions& opt = {});

}  // namespace biprox
