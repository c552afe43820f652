#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "biprox/lattice.hpp"
#include "biprox/linalg.hpp"
#include "biprox/permgroup.hpp"

namespace biprox {

// primal: b_H C[T] b_H with convolution product and pointwise coproduct.
// dual:   bi-H-invariant functions on T with pointwise product and convolution coproduct.
// T is the top subgroup of the ambient group; for a plain inclusion T = G.
enum class Side { primal, dual };

std::string to_string(Side s);

struct Tolerances {
    double eq = 1e-9;          // idempotency, commutation, equality
    double rank_rel = 1e-8;    // rank cutoff relative to the largest eigenvalue
    double ambiguous_lo = 1e-10;
    double ambiguous_hi = 1e-6;
    double gap = 1e-6;         // eigen-gap needed to split the center
};

class BoxContext;
using ContextPtr = std::shared_ptr<const BoxContext>;
class BoxElement;

// Block realisation A = (+)_i End(C^{m_i}) computed from the center and one minimal
// projection per block; built lazily and cached by the context.
struct Realization {
    std::vector<CVector> center_basis;          // GNS coordinates, orthonormal, self-adjoint elements
    std::vector<CVector> central_projections;   // coefficient vectors over the ambient group
    std::vector<int> block_dims;                // m_i
    std::vector<std::vector<CVector>> qbasis;   // per block: orthonormal GNS coordinates spanning A v_i
    CMatrix phi_inv;                            // stacked block entries -> GNS coordinates
    std::uint64_t seed_used = 0;
};

class BoxContext : public std::enable_shared_from_this<BoxContext> {
public:
    static ContextPtr make(const GroupPtr& g, const Subgroup& top, const Subgroup& bottom, Side side,
                           std::uint64_t seed = 1);
    static ContextPtr primal(const GroupPtr& g, const Subgroup& h, std::uint64_t seed = 1);
    static ContextPtr dual(const GroupPtr& g, const Subgroup& h, std::uint64_t seed = 1);

    const GroupPtr& group() const { return group_; }
    const Subgroup& top() const { return top_; }
    const Subgroup& bottom() const { return bottom_; }
    Side side() const { return side_; }
    std::uint64_t seed() const { return seed_; }
    const Tolerances& tol() const { return tol_; }

    int index() const { return top_.order() / bottom_.order(); }
    double delta() const;
    double kappa() const;                   // sqrt(|T| |H|)
    double gns_weight() const;              // <x|y> = w * sum_g x_g conj(y_g)
    int dim() const { return static_cast<int>(cosets_.size()); }
    const std::vector<std::vector<int>>& double_cosets() const { return cosets_; }
    int coset_of(int g) const { return coset_of_[g]; }  // -1 outside T

    ContextPtr other_side() const;
    ContextPtr with_seed(std::uint64_t seed) const;
    const std::vector<Subgroup>& interval() const;  // [H, T], sorted
    std::string label() const;

    const Realization& realization() const;

private:
    BoxContext() = default;
    GroupPtr group_;
    Subgroup top_, bottom_;
    Side side_ = Side::primal;
    std::uint64_t seed_ = 1;
    Tolerances tol_;
    std::vector<std::vector<int>> cosets_;
    std::vector<int> coset_of_;

    mutable std::once_flag real_once_, interval_once_;
    mutable std::shared_ptr<Realization> real_;
    mutable std::vector<Subgroup> interval_;
};

class BoxElement {
public:
    BoxElement() = default;
    BoxElement(ContextPtr ctx, CVector coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {}
    static BoxElement zero(const ContextPtr& ctx);

    const ContextPtr& context() const { return ctx_; }
    const CVector& coeffs() const { return c_; }
    cplx operator[](int g) const { return c_[g]; }
    double max_abs() const;

    BoxElement& operator+=(const BoxElement& o);
    BoxElement& operator-=(const BoxElement& o);
    BoxElement& operator*=(cplx s);
    friend BoxElement operator+(BoxElement a, const BoxElement& b) { return a += b; }
    friend BoxElement operator-(BoxElement a, const BoxElement& b) { return a -= b; }
    friend BoxElement operator*(cplx s, BoxElement a) { return a *= s; }

private:
    ContextPtr ctx_;
    CVector c_;
};

// Dual-side elements share the representation; the alias documents intent.
using DualElement = BoxElement;

double distance(const BoxElement& a, const BoxElement& b);  // max |a_g - b_g|

// ---- basic elements
BoxElement element_pi(const ContextPtr& ctx, int g);          // primal, trivial H
BoxElement element_delta(const ContextPtr& ctx, int g);       // dual, trivial H: e_g
BoxElement coset_indicator(const ContextPtr& ctx, int coset); // sum of g over a double coset
BoxElement element_bK(const ContextPtr& ctx, const Subgroup& k);
BoxElement e1(const ContextPtr& ctx);
BoxElement id(const ContextPtr& ctx);

// ---- structure
BoxElement mul(const BoxElement& x, const BoxElement& y);
BoxElement coproduct(const BoxElement& x, const BoxElement& y);
BoxElement star(const BoxElement& x);
BoxElement contragredient(const BoxElement& x);
cplx trace(const BoxElement& x);
cplx inner(const BoxElement& x, const BoxElement& y);  // tr(y* x)
BoxElement fourier(const BoxElement& x);               // onto the other side
BoxElement fourier_inv(const BoxElement& x);
BoxElement dual_coproduct(const DualElement& a, const DualElement& b);

// Values on double cosets, in the order of ctx->double_cosets().
CVector coset_values(const BoxElement& x);
BoxElement from_coset_values(const ContextPtr& ctx, const CVector& v);
CVector gns_coords(const BoxElement& x);
BoxElement from_gns_coords(const ContextPtr& ctx, const CVector& c);

// ---- block realisation
std::vector<CMatrix> to_blocks(const BoxElement& x);
BoxElement from_blocks(const ContextPtr& ctx, const std::vector<CMatrix>& blocks);

// ---- predicates and projections
bool is_self_adjoint(const BoxElement& x);
bool is_positive(const BoxElement& x);
bool is_projection(const BoxElement& x);
bool is_central(const BoxElement& x);
bool is_coproduct_central(const BoxElement& x);  // commutes with everything under the coproduct
bool is_minimal(const BoxElement& p);
int projection_rank(const BoxElement& p);         // sum of block ranks
BoxElement range_projection(const BoxElement& x);
bool leq_range(const BoxElement& x, const BoxElement& y);  // R(x) <= R(y)
BoxElement central_support(const BoxElement& p);
std::vector<BoxElement> minimal_central_projections(const ContextPtr& ctx);
std::vector<BoxElement> center_basis(const ContextPtr& ctx);
std::vector<BoxElement> coproduct_center_basis(const ContextPtr& ctx);

struct Biprojection {
    BoxElement element;
    Subgroup subgroup;
};

Biprojection generate_biprojection(const BoxElement& x);
Biprojection generate_biprojection(const std::vector<BoxElement>& xs);
std::optional<Subgroup> is_biprojection(const BoxElement& p);
bool is_normal_biprojection(const ContextPtr& ctx, const Subgroup& k);
// centrality of b_K in ctx and of its Fourier image on the other side
struct NormalityCheck {
    bool group_side;
    bool b_central;
    bool fourier_central;
};
NormalityCheck normality_crosscheck(const ContextPtr& ctx, const Subgroup& k);

// Lattice of biprojections ordered as projections: bottom e1, top id.
// nodes[i] is the subgroup of lattice element i.
FiniteLattice biprojection_lattice(const ContextPtr& ctx, std::vector<Subgroup>* nodes = nullptr);

struct CoproductTable {
    std::vector<std::string> labels;
    double scale = 1;  // entries are (x_i * x_j) times scale, expanded in the basis
    std::vector<std::vector<CVector>> entries;
};
CoproductTable coproduct_table(const std::vector<BoxElement>& basis, const std::vector<std::string>& labels,
                               double scale);
// Expansion of x in a basis (BasisNotSpanning if the basis is not one).
CVector expand_in_basis(const BoxElement& x, const std::vector<BoxElement>& basis);

// [H,K] and [K,G] as contexts on the same side.
ContextPtr compress_lower(const ContextPtr& ctx, const Subgroup& k);
ContextPtr compress_upper(const ContextPtr& ctx, const Subgroup& k);
// Biprojection-order pieces: P(e1 <= b_K) and P(b_K <= id).
ContextPtr planar_lower(const ContextPtr& ctx, const Subgroup& k);
ContextPtr planar_upper(const ContextPtr& ctx, const Subgroup& k);
// Reinterprets an element of a compressed context inside ctx.
BoxElement embed(const BoxElement& x, const ContextPtr& ctx);

// ---- random elements (all seeded by the caller)
BoxElement random_element(const ContextPtr& ctx, std::mt19937_64& rng);
BoxElement random_self_adjoint(const ContextPtr& ctx, std::mt19937_64& rng);
BoxElement random_positive(const ContextPtr& ctx, std::mt19937_64& rng);
BoxElement random_projection(const ContextPtr& ctx, std::mt19937_64& rng);
BoxElement random_minimal_projection(const ContextPtr& ctx, std::mt19937_64& rng, int block = -1);
BoxElement random_minimal_under(const BoxElement& central, std::mt19937_64& rng);

// S3 matrix-unit basis {e1, e2, e11, e12, e21, e22} obtained by inverting
// the explicit representation matrices; requires ctx = primal (S3, {1}).
std::vector<BoxElement> s3_matrix_unit_basis(const ContextPtr& ctx);

}  // namespace biprox
