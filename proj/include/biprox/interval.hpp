#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "biprox/lattice.hpp"
#include "biprox/linalg.hpp"
#include "biprox/permgroup.hpp"

namespace biprox {

using Rational = boost::rational<long long>;

// An inclusion H <= G of finite groups, G being the whole parent group.
class Inclusion {
public:
    Inclusion(GroupPtr g, Subgroup h);

    const GroupPtr& group() const { return g_; }
    const Subgroup& subgroup() const { return h_; }
    Subgroup top() const { return whole_group(g_); }
    int index() const { return g_->order() / h_.order(); }
    // [H, G], nodes in lattice order; built on first use.
    const FiniteLattice& interval() const;
    const std::vector<Subgroup>& nodes() const;

private:
    GroupPtr g_;
    Subgroup h_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

// First g in element order with <H, g> = G.
std::optional<int> is_H_cyclic(const Inclusion& inc);

struct OreReport {
    bool distributive = false;
    bool h_cyclic = false;
    std::optional<int> witness;
};
// Throws TheoremViolation if the interval is distributive but G is not H-cyclic.
OreReport ore_verify(const Inclusion& inc);

struct DualOreConditions {
    bool cond_normal = false;  // HgK = KgH for every K in [H,G]
    bool cond_sum = false;     // sum over minimal overgroups of 1/[K:H] <= 2
    Rational sum_value{0};
};
DualOreConditions dual_ore_conditions(const Inclusion& inc);

constexpr int kDefaultQuotientCap = 200;

// Compares H/H_G <= G/H_G up to isomorphism of pairs.
bool inclusions_equivalent(const Inclusion& a, const Inclusion& b, int quotient_cap = kDefaultQuotientCap);

// Index of a block of the primal 2-box algebra whose H-fixed vectors have pointwise stabilizer H.
std::optional<int> is_linearly_primitive_inclusion(const Inclusion& inc, std::uint64_t seed = 1);
bool is_linearly_primitive_group(const GroupPtr& g, std::uint64_t seed = 1);
// Pointwise stabilizer {g : g . q = q} of a coefficient vector under left translation.
Subgroup left_stabilizer(const GroupPtr& g, const CVector& q, double tol = 1e-8);

}  // namespace biprox
