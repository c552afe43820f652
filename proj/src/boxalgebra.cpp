#include "biprox/boxalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

namespace biprox {

std::string to_string(Side s) { return s == Side::primal ? "primal" : "dual"; }

// ------------------------------------------------------------------ contexts

namespace {

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::string, std::weak_ptr<const BoxContext>>& context_cache() {
    static std::map<std::string, std::weak_ptr<const BoxContext>> c;
    return c;
}

std::string context_key(const GroupPtr& g, const Subgroup& top, const Subgroup& bottom, Side side,
                        std::uint64_t seed) {
    std::ostringstream os;
    os << static_cast<const void*>(g.get()) << '|' << static_cast<int>(side) << '|' << seed << '|';
    for (int x : top.elements()) os << x << ',';
    os << '|';
    for (int x : bottom.elements()) os << x << ',';
    return os.str();
}

}  // namespace

ContextPtr BoxContext::make(const GroupPtr& g, const Subgroup& top, const Subgroup& bottom, Side side,
                            std::uint64_t seed) {
    if (!bottom.subset_of(top)) throw NotNested("bottom subgroup is not contained in top");
    const std::string key = context_key(g, top, bottom, side, seed);
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto& cache = context_cache();
    if (auto it = cache.find(key); it != cache.end())
        if (auto sp = it->second.lock()) return sp;

    auto ctx = std::shared_ptr<BoxContext>(new BoxContext());
    ctx->group_ = g;
    ctx->top_ = top;
    ctx->bottom_ = bottom;
    ctx->side_ = side;
    ctx->seed_ = seed;
    ctx->coset_of_.assign(g->order(), -1);
    const auto hl = bottom.elements();
    for (int x : top.elements()) {
        if (ctx->coset_of_[x] >= 0) continue;
        const int id = static_cast<int>(ctx->cosets_.size());
        std::vector<int> members;
        for (int a : hl)
            for (int b : hl) {
                int y = g->mul(g->mul(a, x), b);
                if (ctx->coset_of_[y] < 0) {
                    ctx->coset_of_[y] = id;
                    members.push_back(y);
                }
            }
        std::sort(members.begin(), members.end());
        ctx->cosets_.push_back(std::move(members));
    }
    if (cache.size() > 4096) {
        for (auto it = cache.begin(); it != cache.end();)
            it = it->second.expired() ? cache.erase(it) : std::next(it);
    }
    cache[key] = ctx;
    return ctx;
}

ContextPtr BoxContext::primal(const GroupPtr& g, const Subgroup& h, std::uint64_t seed) {
    return make(g, whole_group(g), h, Side::primal, seed);
}

ContextPtr BoxContext::dual(const GroupPtr& g, const Subgroup& h, std::uint64_t seed) {
    return make(g, whole_group(g), h, Side::dual, seed);
}

double BoxContext::delta() const { return std::sqrt(static_cast<double>(index())); }

double BoxContext::kappa() const {
    return std::sqrt(static_cast<double>(top_.order()) * static_cast<double>(bottom_.order()));
}

double BoxContext::gns_weight() const {
    return side_ == Side::primal ? static_cast<double>(bottom_.order()) : 1.0 / top_.order();
}

ContextPtr BoxContext::other_side() const {
    return make(group_, top_, bottom_, side_ == Side::primal ? Side::dual : Side::primal, seed_);
}

ContextPtr BoxContext::with_seed(std::uint64_t seed) const { return make(group_, top_, bottom_, side_, seed); }

const std::vector<Subgroup>& BoxContext::interval() const {
    std::call_once(interval_once_, [this] { interval_ = interval_subgroups(bottom_, top_); });
    return interval_;
}

std::string BoxContext::label() const {
    std::ostringstream os;
    os << to_string(side_) << '(' << (group_->name().empty() ? "G" : group_->name());
    if (top_.order() != group_->order()) os << " > [" << subgroup_label(top_) << ']';
    os << ", [" << subgroup_label(bottom_) << "])";
    return os.str();
}

// ------------------------------------------------------------------ elements

BoxElement BoxElement::zero(const ContextPtr& ctx) { return BoxElement(ctx, CVector(ctx->group()->order())); }

double BoxElement::max_abs() const {
    double m = 0;
    for (const auto& x : c_) m = std::max(m, std::abs(x));
    return m;
}

namespace {
void same_context(const BoxElement& a, const BoxElement& b) {
    if (a.context() != b.context()) {
        const auto& x = *a.context();
        const auto& y = *b.context();
        if (x.group() != y.group() || x.side() != y.side() || !(x.top() == y.top()) || !(x.bottom() == y.bottom()))
            throw ContextMismatch("elements live in different contexts");
    }
}
}  // namespace

BoxElement& BoxElement::operator+=(const BoxElement& o) {
    same_context(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

BoxElement& BoxElement::operator-=(const BoxElement& o) {
    same_context(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

BoxElement& BoxElement::operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
}

double distance(const BoxElement& a, const BoxElement& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    return m;
}

BoxElement element_pi(const ContextPtr& ctx, int g) {
    if (ctx->side() != Side::primal || !ctx->bottom().is_trivial()) throw NotTrivialH("pi(g) needs the primal side with H = {1}");
    if (!ctx->top().contains(g)) throw NotNested("element outside the top group");
    auto x = BoxElement::zero(ctx);
    CVector c = x.coeffs();
    c[g] = 1.0;
    return BoxElement(ctx, c);
}

BoxElement element_delta(const ContextPtr& ctx, int g) {
    if (ctx->side() != Side::dual || !ctx->bottom().is_trivial()) throw NotTrivialH("e_g needs the dual side with H = {1}");
    if (!ctx->top().contains(g)) throw NotNested("element outside the top group");
    CVector c(ctx->group()->order());
    c[g] = 1.0;
    return BoxElement(ctx, c);
}

BoxElement coset_indicator(const ContextPtr& ctx, int coset) {
    CVector c(ctx->group()->order());
    for (int g : ctx->double_cosets().at(coset)) c[g] = 1.0;
    return BoxElement(ctx, c);
}

BoxElement element_bK(const ContextPtr& ctx, const Subgroup& k) {
    if (!ctx->bottom().subset_of(k) || !k.subset_of(ctx->top())) throw NotNested("expected H <= K <= T");
    CVector c(ctx->group()->order());
    const double v = ctx->side() == Side::primal ? 1.0 / k.order() : 1.0;
    for (int g : k.elements()) c[g] = v;
    return BoxElement(ctx, c);
}

BoxElement e1(const ContextPtr& ctx) {
    return element_bK(ctx, ctx->side() == Side::primal ? ctx->top() : ctx->bottom());
}

BoxElement id(const ContextPtr& ctx) {
    return element_bK(ctx, ctx->side() == Side::primal ? ctx->bottom() : ctx->top());
}

// ----------------------------------------------------------------- structure

namespace {

CVector convolve(const FiniteGroup& g, const CVector& x, const CVector& y) {
    std::vector<int> sx, sy;
    for (int i = 0; i < g.order(); ++i) {
        if (x[i] != cplx{}) sx.push_back(i);
        if (y[i] != cplx{}) sy.push_back(i);
    }
    CVector out(g.order());
    for (int a : sx)
        for (int b : sy) out[g.mul(a, b)] += x[a] * y[b];
    return out;
}

CVector pointwise(const CVector& x, const CVector& y, double s) {
    CVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i] * y[i];
    return out;
}

}  // namespace

BoxElement mul(const BoxElement& x, const BoxElement& y) {
    same_context(x, y);
    const auto& ctx = x.context();
    if (ctx->side() == Side::primal) return BoxElement(ctx, convolve(*ctx->group(), x.coeffs(), y.coeffs()));
    return BoxElement(ctx, pointwise(x.coeffs(), y.coeffs(), 1.0));
}

BoxElement coproduct(const BoxElement& x, const BoxElement& y) {
    same_context(x, y);
    const auto& ctx = x.context();
    if (ctx->side() == Side::primal) return BoxElement(ctx, pointwise(x.coeffs(), y.coeffs(), ctx->kappa()));
    CVector c = convolve(*ctx->group(), x.coeffs(), y.coeffs());
    for (auto& v : c) v /= ctx->kappa();
    return BoxElement(ctx, c);
}

BoxElement dual_coproduct(const DualElement& a, const DualElement& b) {
    if (a.context()->side() != Side::dual) throw ContextMismatch("dual_coproduct expects dual-side elements");
    return coproduct(a, b);
}

BoxElement star(const BoxElement& x) {
    const auto& ctx = x.context();
    const auto& g = *ctx->group();
    CVector c(g.order());
    if (ctx->side() == Side::primal) {
        for (int i = 0; i < g.order(); ++i) c[i] = std::conj(x[g.inv(i)]);
    } else {
        for (int i = 0; i < g.order(); ++i) c[i] = std::conj(x[i]);
    }
    return BoxElement(ctx, c);
}

BoxElement contragredient(const BoxElement& x) {
    const auto& g = *x.context()->group();
    CVector c(g.order());
    for (int i = 0; i < g.order(); ++i) c[i] = x[g.inv(i)];
    return BoxElement(x.context(), c);
}

cplx trace(const BoxElement& x) {
    const auto& ctx = *x.context();
    if (ctx.side() == Side::primal) return static_cast<double>(ctx.bottom().order()) * x[0];
    cplx s = 0;
    for (int g : ctx.top().elements()) s += x[g];
    return s / static_cast<double>(ctx.top().order());
}

cplx inner(const BoxElement& x, const BoxElement& y) {
    same_context(x, y);
    cplx s = 0;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) s += x.coeffs()[i] * std::conj(y.coeffs()[i]);
    return x.context()->gns_weight() * s;
}

BoxElement fourier(const BoxElement& x) {
    const auto& ctx = x.context();
    auto other = ctx->other_side();
    const auto& g = *ctx->group();
    CVector c(g.order());
    if (ctx->side() == Side::primal) {
        for (int i = 0; i < g.order(); ++i) c[i] = ctx->kappa() * x[i];
    } else {
        for (int i = 0; i < g.order(); ++i) c[i] = x[g.inv(i)] / ctx->kappa();
    }
    return BoxElement(other, c);
}

BoxElement fourier_inv(const BoxElement& x) { return contragredient(fourier(x)); }

CVector coset_values(const BoxElement& x) {
    const auto& cos = x.context()->double_cosets();
    CVector v(cos.size());
    for (std::size_t d = 0; d < cos.size(); ++d) {
        cplx s = 0;
        for (int g : cos[d]) s += x[g];
        v[d] = s / static_cast<double>(cos[d].size());
    }
    return v;
}

BoxElement from_coset_values(const ContextPtr& ctx, const CVector& v) {
    CVector c(ctx->group()->order());
    const auto& cos = ctx->double_cosets();
    for (std::size_t d = 0; d < cos.size(); ++d)
        for (int g : cos[d]) c[g] = v[d];
    return BoxElement(ctx, c);
}

CVector gns_coords(const BoxElement& x) {
    const auto& ctx = *x.context();
    CVector v = coset_values(x);
    for (std::size_t d = 0; d < v.size(); ++d)
        v[d] *= std::sqrt(ctx.gns_weight() * static_cast<double>(ctx.double_cosets()[d].size()));
    return v;
}

BoxElement from_gns_coords(const ContextPtr& ctx, const CVector& c) {
    CVector v = c;
    for (std::size_t d = 0; d < v.size(); ++d)
        v[d] /= std::sqrt(ctx->gns_weight() * static_cast<double>(ctx->double_cosets()[d].size()));
    return from_coset_values(ctx, v);
}

// --------------------------------------------------------------- realisation

namespace {

BoxElement basis_element(const ContextPtr& ctx, int d) {
    CVector e(ctx->dim());
    e[d] = 1.0;
    return from_gns_coords(ctx, e);
}

// Kernel of x -> (s x - x s) (or the coproduct analogue) over the given test elements.
std::vector<CVector> commutant(const ContextPtr& ctx, const std::vector<BoxElement>& tests, bool use_coproduct) {
    const int d = ctx->dim();
    std::vector<BoxElement> basis;
    for (int k = 0; k < d; ++k) basis.push_back(basis_element(ctx, k));
    CMatrix m(static_cast<int>(tests.size()) * d, d);
    for (std::size_t t = 0; t < tests.size(); ++t)
        for (int k = 0; k < d; ++k) {
            BoxElement diff = use_coproduct ? coproduct(tests[t], basis[k]) - coproduct(basis[k], tests[t])
                                            : mul(tests[t], basis[k]) - mul(basis[k], tests[t]);
            CVector col = gns_coords(diff);
            for (int r = 0; r < d; ++r) m(static_cast<int>(t) * d + r, k) = col[r];
        }
    return nullspace(m, 1e-9);
}

bool commutes_with_basis(const BoxElement& z, bool use_coproduct, double tol) {
    const auto& ctx = z.context();
    const double scale = std::max(1.0, z.max_abs());
    for (int k = 0; k < ctx->dim(); ++k) {
        BoxElement u = coset_indicator(ctx, k);
        BoxElement diff = use_coproduct ? coproduct(z, u) - coproduct(u, z) : mul(z, u) - mul(u, z);
        if (diff.max_abs() > tol * scale * std::max(1.0, u.max_abs())) return false;
    }
    return true;
}

std::vector<CVector> center_coords(const ContextPtr& ctx, std::mt19937_64& rng, bool use_coproduct) {
    const int d = ctx->dim();
    std::vector<BoxElement> tests;
    if (d <= 40) {
        for (int k = 0; k < d; ++k) tests.push_back(basis_element(ctx, k));
    } else {
        tests.push_back(random_element(ctx, rng));
        tests.push_back(random_element(ctx, rng));
    }
    auto ns = commutant(ctx, tests, use_coproduct);
    std::vector<CVector> sa;
    for (const auto& z : ns) {
        BoxElement e = from_gns_coords(ctx, z);
        if (!commutes_with_basis(e, use_coproduct, 1e-8))
            throw NumericRankAmbiguous("commutant vector failed verification");
        BoxElement s = use_coproduct ? e : star(e);
        sa.push_back(gns_coords(e + s));
        sa.push_back(gns_coords(cplx(0, 1) * (e - s)));
    }
    auto basis = orthonormalize(sa, 1e-8);
    if (basis.size() != ns.size()) throw NumericRankAmbiguous("center basis lost rank while symmetrising");
    return basis;
}

std::shared_ptr<Realization> build_realization(const ContextPtr& ctx, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    auto r = std::make_shared<Realization>();
    r->seed_used = seed;
    const int d = ctx->dim();
    const double tol = ctx->tol().eq;

    r->center_basis = center_coords(ctx, rng, false);
    const int m = static_cast<int>(r->center_basis.size());
    std::vector<BoxElement> z;
    for (const auto& c : r->center_basis) z.push_back(from_gns_coords(ctx, c));

    // split the center with a random self-adjoint central element
    BoxElement c = BoxElement::zero(ctx);
    for (int j = 0; j < m; ++j) c += nd(rng) * z[j];
    CMatrix cm(m, m);
    for (int k = 0; k < m; ++k) {
        CVector col = gns_coords(mul(c, z[k]));
        for (int j = 0; j < m; ++j) cm(j, k) = dot(r->center_basis[j], col);
    }
    auto eig = hermitian_eigen(cm);
    double spread = 0;
    for (double v : eig.values) spread = std::max(spread, std::abs(v));
    for (int j = 1; j < m; ++j)
        if (eig.values[j] - eig.values[j - 1] < ctx->tol().gap * std::max(1.0, spread))
            throw NumericRankAmbiguous("eigenvalue collision while splitting the center");

    std::vector<BoxElement> cps;
    for (int j = 0; j < m; ++j) {
        BoxElement e = BoxElement::zero(ctx);
        for (int k = 0; k < m; ++k) e += eig.vectors(k, j) * z[k];
        const cplx lam = inner(mul(e, e), e) / inner(e, e);
        BoxElement p = (1.0 / lam) * e;
        if (distance(mul(p, p), p) > 1e-7 || distance(star(p), p) > 1e-7)
            throw NumericRankAmbiguous("central idempotent failed verification");
        cps.push_back(p);
    }
    // canonical order: trace, then coefficients
    auto key = [](const BoxElement& p) {
        std::vector<long long> k;
        k.push_back(std::llround(std::real(trace(p)) * 1e7));
        for (const auto& v : p.coeffs()) {
            k.push_back(std::llround(std::real(v) * 1e6));
            k.push_back(std::llround(std::imag(v) * 1e6));
        }
        return k;
    };
    std::sort(cps.begin(), cps.end(), [&](const BoxElement& a, const BoxElement& b) { return key(a) < key(b); });

    int total = 0;
    for (const auto& p : cps) {
        std::vector<CVector> span;
        for (int k = 0; k < d; ++k) span.push_back(gns_coords(mul(p, basis_element(ctx, k))));
        auto b = orthonormalize(span, 1e-8);
        const int rank = static_cast<int>(b.size());
        const int mi = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rank))));
        if (mi * mi != rank) throw NumericRankAmbiguous("block rank is not a square");

        BoxElement v = p;
        if (mi > 1) {
            BoxElement s = random_self_adjoint(ctx, rng);
            CMatrix sm(rank, rank);
            std::vector<BoxElement> be;
            for (const auto& bv : b) be.push_back(from_gns_coords(ctx, bv));
            for (int k = 0; k < rank; ++k) {
                CVector col = gns_coords(mul(s, be[k]));
                for (int j = 0; j < rank; ++j) sm(j, k) = dot(b[j], col);
            }
            auto se = hermitian_eigen(sm);
            double sp = 0;
            for (double x : se.values) sp = std::max(sp, std::abs(x));
            sp = std::max(sp, 1.0);
            const double top = se.values[rank - 1];
            for (int k = rank - mi; k < rank; ++k)
                if (std::abs(se.values[k] - top) > 1e-7 * sp) throw NumericRankAmbiguous("top eigenspace is split");
            if (top - se.values[rank - mi - 1] < ctx->tol().gap * sp)
                throw NumericRankAmbiguous("top eigenvalue of a block is not simple");
            CVector idc = gns_coords(id(ctx));
            CVector vc(d);
            for (int k = rank - mi; k < rank; ++k) {
                CVector w(d);
                for (int j = 0; j < rank; ++j)
                    for (int t = 0; t < d; ++t) w[t] += se.vectors(j, k) * b[j][t];
                const cplx pr = dot(w, idc);
                for (int t = 0; t < d; ++t) vc[t] += w[t] * pr;
            }
            v = from_gns_coords(ctx, vc);
            if (distance(mul(v, v), v) > 1e-7) throw NumericRankAmbiguous("minimal projection failed verification");
        }
        std::vector<CVector> left;
        for (int k = 0; k < d; ++k) left.push_back(gns_coords(mul(basis_element(ctx, k), v)));
        auto q = orthonormalize(left, 1e-8);
        if (static_cast<int>(q.size()) != mi) throw NumericRankAmbiguous("left ideal has the wrong dimension");
        r->central_projections.push_back(p.coeffs());
        r->block_dims.push_back(mi);
        r->qbasis.push_back(std::move(q));
        total += mi * mi;
    }
    if (total != d) throw NumericRankAmbiguous("block dimensions do not add up");

    // phi: GNS coordinates -> stacked block entries
    CMatrix phi(d, d);
    for (int k = 0; k < d; ++k) {
        BoxElement u = basis_element(ctx, k);
        int row = 0;
        for (std::size_t i = 0; i < r->qbasis.size(); ++i) {
            const auto& q = r->qbasis[i];
            const int mi = r->block_dims[i];
            for (int l = 0; l < mi; ++l) {
                CVector col = gns_coords(mul(u, from_gns_coords(ctx, q[l])));
                for (int a = 0; a < mi; ++a) phi(row + a * mi + l, k) = dot(q[a], col);
            }
            row += mi * mi;
        }
    }
    try {
        r->phi_inv = inverse(phi);
    } catch (const std::runtime_error&) {
        throw NumericRankAmbiguous("block realisation is singular");
    }
    (void)tol;
    return r;
}

}  // namespace

const Realization& BoxContext::realization() const {
    std::call_once(real_once_, [this] {
        auto self = shared_from_this();
        std::string last;
        for (int attempt = 0; attempt < 12; ++attempt) {
            try {
                real_ = build_realization(self, seed_ + 1000003ULL * attempt);
                return;
            } catch (const NumericRankAmbiguous& e) {
                last = e.what();
            }
        }
        throw NumericRankAmbiguous("realisation failed after retries: " + last);
    });
    return *real_;
}

std::vector<CMatrix> to_blocks(const BoxElement& x) {
    const auto& ctx = x.context();
    const auto& r = ctx->realization();
    std::vector<CMatrix> out;
    for (std::size_t i = 0; i < r.qbasis.size(); ++i) {
        const auto& q = r.qbasis[i];
        const int mi = r.block_dims[i];
        CMatrix b(mi, mi);
        for (int l = 0; l < mi; ++l) {
            CVector col = gns_coords(mul(x, from_gns_coords(ctx, q[l])));
            for (int a = 0; a < mi; ++a) b(a, l) = dot(q[a], col);
        }
        out.push_back(std::move(b));
    }
    return out;
}

BoxElement from_blocks(const ContextPtr& ctx, const std::vector<CMatrix>& blocks) {
    const auto& r = ctx->realization();
    CVector v(ctx->dim());
    int row = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const int mi = r.block_dims[i];
        for (int a = 0; a < mi; ++a)
            for (int l = 0; l < mi; ++l) v[row + a * mi + l] = blocks[i](a, l);
        row += mi * mi;
    }
    return from_gns_coords(ctx, r.phi_inv * v);
}

// ---------------------------------------------------------------- predicates

bool is_self_adjoint(const BoxElement& x) {
    return distance(star(x), x) <= x.context()->tol().eq * std::max(1.0, x.max_abs());
}

namespace {

struct Spectrum {
    std::vector<EigenResult> blocks;
    double max_eig = 0, min_eig = 0;
};

Spectrum spectrum(const BoxElement& x) {
    Spectrum s;
    bool first = true;
    for (auto& b : to_blocks(x)) {
        CMatrix h = b;
        for (int i = 0; i < h.rows(); ++i)
            for (int j = 0; j < h.cols(); ++j) h(i, j) = 0.5 * (b(i, j) + std::conj(b(j, i)));
        auto e = hermitian_eigen(h);
        for (double v : e.values) {
            if (first) s.max_eig = s.min_eig = v, first = false;
            s.max_eig = std::max(s.max_eig, v);
            s.min_eig = std::min(s.min_eig, v);
        }
        s.blocks.push_back(std::move(e));
    }
    return s;
}

}  // namespace

bool is_positive(const BoxElement& x) {
    if (!is_self_adjoint(x)) return false;
    auto s = spectrum(x);
    return s.min_eig >= -x.context()->tol().eq * std::max(1.0, s.max_eig);
}

bool is_projection(const BoxElement& x) {
    const double t = x.context()->tol().eq;
    return distance(mul(x, x), x) <= t && distance(star(x), x) <= t;
}

bool is_central(const BoxElement& x) { return commutes_with_basis(x, false, x.context()->tol().eq); }

bool is_coproduct_central(const BoxElement& x) { return commutes_with_basis(x, true, x.context()->tol().eq); }

bool is_minimal(const BoxElement& p) {
    if (!is_projection(p) || p.max_abs() <= p.context()->tol().eq) return false;
    const auto& ctx = p.context();
    std::vector<CVector> span;
    for (int k = 0; k < ctx->dim(); ++k) span.push_back(gns_coords(mul(mul(p, basis_element(ctx, k)), p)));
    return orthonormalize(span, 1e-7).size() == 1;
}

int projection_rank(const BoxElement& p) {
    int r = 0;
    for (const auto& b : to_blocks(p)) {
        cplx t = 0;
        for (int i = 0; i < b.rows(); ++i) t += b(i, i);
        r += static_cast<int>(std::lround(std::real(t)));
    }
    return r;
}

BoxElement range_projection(const BoxElement& x) {
    const auto& ctx = x.context();
    const auto& tol = ctx->tol();
    if (!is_self_adjoint(x)) throw NotPositive("range projection of a non-self-adjoint element");
    auto s = spectrum(x);
    if (s.max_eig <= 1e-14) {
        if (s.min_eig < -1e-12) throw NotPositive("element has negative spectrum");
        return BoxElement::zero(ctx);
    }
    if (s.min_eig < -tol.eq * std::max(1.0, s.max_eig)) throw NotPositive("element has negative spectrum");
    std::vector<CMatrix> proj;
    for (const auto& e : s.blocks) {
        const int n = e.vectors.rows();
        CMatrix p(n, n);
        for (int k = 0; k < n; ++k) {
            const double rel = e.values[k] / s.max_eig;
            if (rel > tol.ambiguous_lo && rel < tol.ambiguous_hi)
                throw NumericRankAmbiguous("eigenvalue " + std::to_string(rel) + " near the rank cutoff");
            if (rel <= tol.rank_rel) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) p(i, j) += e.vectors(i, k) * std::conj(e.vectors(j, k));
        }
        proj.push_back(std::move(p));
    }
    return from_blocks(ctx, proj);
}

bool leq_range(const BoxElement& x, const BoxElement& y) {
    BoxElement px = range_projection(x), py = range_projection(y);
    return distance(mul(py, px), px) <= 1e-8;
}

BoxElement central_support(const BoxElement& p) {
    const auto& ctx = p.context();
    const auto& r = ctx->realization();
    auto blocks = to_blocks(p);
    BoxElement out = BoxElement::zero(ctx);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].max_abs() > 1e-8) out += BoxElement(ctx, r.central_projections[i]);
    return out;
}

std::vector<BoxElement> minimal_central_projections(const ContextPtr& ctx) {
    std::vector<BoxElement> out;
    for (const auto& c : ctx->realization().central_projections) out.emplace_back(ctx, c);
    return out;
}

std::vector<BoxElement> center_basis(const ContextPtr& ctx) {
    std::vector<BoxElement> out;
    for (const auto& c : ctx->realization().center_basis) out.push_back(from_gns_coords(ctx, c));
    return out;
}

std::vector<BoxElement> coproduct_center_basis(const ContextPtr& ctx) {
    std::mt19937_64 rng(ctx->seed() ^ 0x5bd1e995ULL);
    std::vector<BoxElement> out;
    for (const auto& c : center_coords(ctx, rng, true)) out.push_back(from_gns_coords(ctx, c));
    return out;
}

// -------------------------------------------------------------- biprojections

std::optional<Subgroup> is_biprojection(const BoxElement& p) {
    const auto& ctx = p.context();
    if (!is_projection(p)) return std::nullopt;
    const double mx = p.max_abs();
    if (mx <= 1e-9) return std::nullopt;
    ElementSet supp(ctx->group()->order());
    for (int g = 0; g < ctx->group()->order(); ++g)
        if (std::abs(p[g]) > 1e-6 * mx) supp.insert(g);
    if (!supp.contains(0)) return std::nullopt;
    for (const auto& k : ctx->interval()) {
        if (!(k.members == supp)) continue;
        BoxElement b = element_bK(ctx, k);
        if (distance(b, p) > 1e-7) return std::nullopt;
        // e1 <= b = b^2 = b* = contragredient(b), b*b proportional to b
        BoxElement one = e1(ctx);
        if (distance(mul(b, one), one) > 1e-9) return std::nullopt;
        if (distance(contragredient(b), b) > 1e-9) return std::nullopt;
        BoxElement bb = coproduct(b, b);
        const cplx lam = ctx->delta() * trace(b);
        if (distance(bb, lam * b) > 1e-9) return std::nullopt;
        return k;
    }
    return std::nullopt;
}

Biprojection generate_biprojection(const BoxElement& x) {
    const auto& ctx = x.context();
    if (!is_positive(x)) throw NotPositive("generate_biprojection needs a positive element");
    if (x.max_abs() <= 1e-12) throw NotPositive("generate_biprojection of zero");
    // R(sum_{k<=n+1} a^{*k}) = R(a) v R(a * sum_{k<=n} a^{*k}), and the range of a
    // coproduct of positives depends only on the ranges of the factors.
    BoxElement p0 = range_projection(x);
    BoxElement p = p0;
    int rank = projection_rank(p);
    for (int it = 0; it <= ctx->dim() + 1; ++it) {
        BoxElement c = coproduct(p0, p);
        BoxElement y = (1.0 / p0.max_abs()) * p0 + (1.0 / std::max(c.max_abs(), 1e-300)) * c;
        BoxElement q = range_projection(y);
        const int qr = projection_rank(q);
        p = q;
        if (qr == rank) break;
        rank = qr;
    }
    auto k = is_biprojection(p);
    if (!k) throw BiprojectionCheckFailed("stabilised range projection is not a biprojection");
    return {element_bK(ctx, *k), *k};
}

Biprojection generate_biprojection(const std::vector<BoxElement>& xs) {
    if (xs.empty()) throw NotPositive("empty generating set");
    BoxElement s = BoxElement::zero(xs.front().context());
    for (const auto& x : xs) s += (1.0 / std::max(x.max_abs(), 1e-300)) * x;
    return generate_biprojection(s);
}

bool is_normal_biprojection(const ContextPtr& ctx, const Subgroup& k) {
    return is_normal_intermediate(ctx->bottom(), k, ctx->top());
}

NormalityCheck normality_crosscheck(const ContextPtr& ctx, const Subgroup& k) {
    BoxElement b = element_bK(ctx, k);
    return {is_normal_biprojection(ctx, k), is_central(b), is_central(fourier(b))};
}

FiniteLattice biprojection_lattice(const ContextPtr& ctx, std::vector<Subgroup>* nodes) {
    FiniteLattice l = from_subgroups(ctx->bottom(), ctx->top(), nodes);
    return ctx->side() == Side::primal ? l.reverse() : l;
}

// -------------------------------------------------------------------- tables

CVector expand_in_basis(const BoxElement& x, const std::vector<BoxElement>& basis) {
    const int n = static_cast<int>(basis.size());
    if (n != x.context()->dim()) throw BasisNotSpanning("basis size differs from the algebra dimension");
    CMatrix m(n, n);
    CVector r(n);
    for (int j = 0; j < n; ++j) {
        r[j] = inner(x, basis[j]);
        for (int k = 0; k < n; ++k) m(j, k) = inner(basis[k], basis[j]);
    }
    CMatrix mi;
    try {
        mi = inverse(m);
    } catch (const std::runtime_error&) {
        throw BasisNotSpanning("basis is linearly dependent");
    }
    CVector c = mi * r;
    BoxElement back = BoxElement::zero(x.context());
    for (int k = 0; k < n; ++k) back += c[k] * basis[k];
    if (distance(back, x) > 1e-8 * std::max(1.0, x.max_abs())) throw BasisNotSpanning("element not in the span");
    return c;
}

CoproductTable coproduct_table(const std::vector<BoxElement>& basis, const std::vector<std::string>& labels,
                               double scale) {
    CoproductTable t;
    t.labels = labels;
    t.scale = scale;
    for (const auto& a : basis) {
        std::vector<CVector> row;
        for (const auto& b : basis) {
            CVector c = expand_in_basis(coproduct(a, b), basis);
            for (auto& v : c) v *= scale;
            row.push_back(std::move(c));
        }
        t.entries.push_back(std::move(row));
    }
    return t;
}

// -------------------------------------------------------------- compressions

ContextPtr compress_lower(const ContextPtr& ctx, const Subgroup& k) {
    if (!ctx->bottom().subset_of(k) || !k.subset_of(ctx->top())) throw NotNested("expected H <= K <= T");
    return BoxContext::make(ctx->group(), k, ctx->bottom(), ctx->side(), ctx->seed());
}

ContextPtr compress_upper(const ContextPtr& ctx, const Subgroup& k) {
    if (!ctx->bottom().subset_of(k) || !k.subset_of(ctx->top())) throw NotNested("expected H <= K <= T");
    return BoxContext::make(ctx->group(), ctx->top(), k, ctx->side(), ctx->seed());
}

ContextPtr planar_lower(const ContextPtr& ctx, const Subgroup& k) {
    return ctx->side() == Side::primal ? compress_upper(ctx, k) : compress_lower(ctx, k);
}

ContextPtr planar_upper(const ContextPtr& ctx, const Subgroup& k) {
    return ctx->side() == Side::primal ? compress_lower(ctx, k) : compress_upper(ctx, k);
}

BoxElement embed(const BoxElement& x, const ContextPtr& ctx) {
    const auto& src = *x.context();
    if (src.group() != ctx->group() || src.side() != ctx->side()) throw ContextMismatch("embedding across groups or sides");
    if (!src.top().subset_of(ctx->top()) || !ctx->bottom().subset_of(src.bottom()))
        throw ContextMismatch("source context is not a compression of the target");
    return BoxElement(ctx, x.coeffs());
}

// ------------------------------------------------------------------- random

BoxElement random_element(const ContextPtr& ctx, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    CVector c(ctx->dim());
    for (auto& v : c) v = cplx(nd(rng), nd(rng));
    return from_gns_coords(ctx, c);
}

BoxElement random_self_adjoint(const ContextPtr& ctx, std::mt19937_64& rng) {
    BoxElement x = random_element(ctx, rng);
    return 0.5 * (x + star(x));
}

BoxElement random_positive(const ContextPtr& ctx, std::mt19937_64& rng) {
    BoxElement x = random_element(ctx, rng);
    return mul(star(x), x);
}

BoxElement random_projection(const ContextPtr& ctx, std::mt19937_64& rng) {
    BoxElement s = random_self_adjoint(ctx, rng);
    std::vector<CMatrix> proj;
    for (auto& b : to_blocks(s)) {
        auto e = hermitian_eigen(b);
        const int n = b.rows();
        CMatrix p(n, n);
        for (int k = 0; k < n; ++k) {
            if (e.values[k] <= 0) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) p(i, j) += e.vectors(i, k) * std::conj(e.vectors(j, k));
        }
        proj.push_back(std::move(p));
    }
    return from_blocks(ctx, proj);
}

BoxElement random_minimal_projection(const ContextPtr& ctx, std::mt19937_64& rng, int block) {
    const auto& r = ctx->realization();
    const int nb = static_cast<int>(r.block_dims.size());
    if (block < 0) block = static_cast<int>(std::uniform_int_distribution<int>(0, nb - 1)(rng));
    std::normal_distribution<double> nd;
    std::vector<CMatrix> blocks;
    for (int i = 0; i < nb; ++i) {
        const int mi = r.block_dims[i];
        CMatrix p(mi, mi);
        if (i == block) {
            CVector xi(mi);
            for (auto& v : xi) v = cplx(nd(rng), nd(rng));
            const double nx = norm(xi);
            for (auto& v : xi) v /= nx;
            for (int a = 0; a < mi; ++a)
                for (int b = 0; b < mi; ++b) p(a, b) = xi[a] * std::conj(xi[b]);
        }
        blocks.push_back(std::move(p));
    }
    return from_blocks(ctx, blocks);
}

BoxElement random_minimal_under(const BoxElement& central, std::mt19937_64& rng) {
    const auto& ctx = central.context();
    auto blocks = to_blocks(central);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].max_abs() > 0.5) return random_minimal_projection(ctx, rng, static_cast<int>(i));
    throw NotPositive("central element has empty support");
}

// ------------------------------------------------------------ pinned S3 basis

std::vector<BoxElement> s3_matrix_unit_basis(const ContextPtr& ctx) {
    const auto& g = *ctx->group();
    if (ctx->side() != Side::primal || !ctx->bottom().is_trivial() || g.order() != 6)
        throw ContextMismatch("the pinned basis lives in the primal algebra of S3 with trivial H");
    const cplx z = std::polar(1.0, 2 * std::numbers::pi / 3), zb = std::conj(z);
    const std::vector<std::string> names{"()", "(1,2,3)", "(1,3,2)", "(1,2)", "(2,3)", "(1,3)"};
    // rows: e1, e2, e11, e12, e21, e22; one column per group element above
    const std::vector<std::vector<cplx>> lam{
        {1, 1, 1, 0, 0, 1},  {1, 1, z, 0, 0, zb},  {1, 1, zb, 0, 0, z},
        {1, -1, 0, 1, 1, 0}, {1, -1, 0, zb, z, 0}, {1, -1, 0, z, zb, 0},
    };
    CMatrix m(6, 6);
    std::vector<int> idx;
    for (int j = 0; j < 6; ++j) {
        int gi = g.index_of(parse_permutation(names[j], g.degree()));
        if (gi < 0) throw ContextMismatch("group is not S3 on three points");
        idx.push_back(gi);
        for (int a = 0; a < 6; ++a) m(a, j) = lam[j][a];
    }
    CMatrix mu = inverse(m);  // mu(g, alpha)
    std::vector<BoxElement> basis;
    for (int a = 0; a < 6; ++a) {
        CVector c(6);
        for (int j = 0; j < 6; ++j) c[idx[j]] = mu(j, a);
        basis.emplace_back(ctx, c);
    }
    return basis;
}

}  // namespace biprox
