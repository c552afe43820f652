#include "biprox/fusionring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "biprox/errors.hpp"

namespace biprox {

namespace {

std::string at(int i, int j, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

FusionRing make_fusion_ring(std::vector<std::vector<std::vector<long long>>> n) {
    FusionRing r;
    r.rank = static_cast<int>(n.size());
    r.N = std::move(n);
    r.dual.assign(r.rank, -1);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < r.rank; ++j)
            if (r.N[i][j][0] == 1) {
                if (r.dual[i] >= 0) throw AxiomViolation("element " + std::to_string(i) + " has two duals");
                r.dual[i] = j;
            }
    return r;
}

FusionRing parse_fusion_ring(std::istream& in) {
    std::vector<long long> values;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                values.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("bad integer '" + tok + "' in fusion ring");
            }
        }
    }
    int r = 0;
    while (static_cast<std::size_t>(r) * r * r < values.size()) ++r;
    if (r == 0 || static_cast<std::size_t>(r) * r * r != values.size())
        throw ParseError("fusion ring needs r^3 integers, got " + std::to_string(values.size()));
    std::vector<std::vector<std::vector<long long>>> n(r, std::vector<std::vector<long long>>(r, std::vector<long long>(r)));
    std::size_t pos = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                if (values[pos] < 0) throw ParseError("negative multiplicity at " + at(i, j, k));
                n[i][j][k] = values[pos++];
            }
    return make_fusion_ring(std::move(n));
}

FusionRing load_fusion_ring(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_fusion_ring(in);
}

void verify_axioms(const FusionRing& ring) {
    const int r = ring.rank;
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            const long long d = j == k;
            if (ring(0, j, k) != d || ring(j, 0, k) != d) throw AxiomViolation("unit fails at " + at(0, j, k));
        }
    for (int i = 0; i < r; ++i)
        if (ring.dual[i] < 0) throw AxiomViolation("element " + std::to_string(i) + " has no dual");
    for (int i = 0; i < r; ++i)
        if (ring.dual[ring.dual[i]] != i) throw AxiomViolation("duality is not an involution at " + std::to_string(i));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                if (ring(i, j, k) != ring(ring.dual[i], k, j))
                    throw AxiomViolation("Frobenius reciprocity fails at " + at(i, j, k));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l) {
                    long long lhs = 0, rhs = 0;
                    for (int m = 0; m < r; ++m) {
                        lhs += ring(i, j, m) * ring(m, k, l);
                        rhs += ring(j, k, m) * ring(i, m, l);
                    }
                    if (lhs != rhs)
                        throw AxiomViolation("associativity fails at " + at(i, j, k) + " -> " + std::to_string(l));
                }
}

std::vector<double> fp_dimensions(const FusionRing& ring) {
    const int r = ring.rank;
    // Perron vector of I + sum_i M_i, with (M_i)_{jk} = N_ij^k; it is a common eigenvector of all M_i.
    std::vector<double> v(r, 1.0), w(r);
    for (int iter = 0; iter < 100000; ++iter) {
        for (int j = 0; j < r; ++j) {
            double s = v[j];
            for (int i = 0; i < r; ++i)
                for (int k = 0; k < r; ++k) s += static_cast<double>(ring(i, j, k)) * v[k];
            w[j] = s;
        }
        const double scale = w[0];
        double change = 0;
        for (int j = 0; j < r; ++j) {
            w[j] /= scale;
            change = std::max(change, std::abs(w[j] - v[j]));
        }
        v.swap(w);
        if (change < 1e-12) break;
    }
    double total = 0;
    for (double x : v) total += x;
    std::vector<double> d(r);
    for (int i = 0; i < r; ++i) {
        double s = 0;
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) s += static_cast<double>(ring(i, j, k)) * v[k];
        d[i] = s / total;
    }
    return d;
}

std::vector<std::vector<int>> find_subrings(const FusionRing& ring) {
    const int r = ring.rank;
    auto close = [&](std::vector<char> in) {
        bool grew = true;
        while (grew) {
            grew = false;
            for (int i = 0; i < r; ++i) {
                if (!in[i]) continue;
                if (!in[ring.dual[i]]) in[ring.dual[i]] = grew = true;
                for (int j = 0; j < r; ++j) {
                    if (!in[j]) continue;
                    for (int k = 0; k < r; ++k)
                        if (ring(i, j, k) > 0 && !in[k]) in[k] = grew = true;
                }
            }
        }
        return in;
    };
    std::set<std::vector<char>> found;
    std::vector<std::vector<char>> work;
    std::vector<char> unit(r, 0);
    unit[0] = 1;
    unit = close(unit);
    found.insert(unit);
    work.push_back(unit);
    while (!work.empty()) {
        auto s = work.back();
        work.pop_back();
        for (int x = 0; x < r; ++x) {
            if (s[x]) continue;
            auto t = s;
            t[x] = 1;
            t = close(t);
            if (found.insert(t).second) work.push_back(t);
        }
    }
    std::vector<std::vector<int>> out;
    for (const auto& s : found) {
        std::vector<int> idx;
        for (int i = 0; i < r; ++i)
            if (s[i]) idx.push_back(i);
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

FusionRing group_ring(const GroupPtr& g) {
    const int n = g->order();
    std::vector<std::vector<std::vector<long long>>> t(n, std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j][g->mul(i, j)] = 1;
    return make_fusion_ring(std::move(t));
}

ContextFusion fusion_from_context(const ContextPtr& ctx) {
    if (!ctx->bottom().is_trivial()) throw NotTrivialH("fusion rules need a trivial bottom subgroup");
    ContextPtr primal = ctx->side() == Side::primal ? ctx : ctx->other_side();
    const auto elems = primal->top().elements();
    const double order = elems.size();

    auto central = minimal_central_projections(primal);
    const int r = static_cast<int>(central.size());

    // characters chi_i(g) = conj(p_i[g]) |G| / n_i with n_i^2 = |G| tr(p_i)
    std::vector<std::vector<cplx>> chi(r);
    std::vector<double> dims(r);
    for (int i = 0; i < r; ++i) {
        dims[i] = std::sqrt(order * std::real(trace(central[i])));
        for (int g : elems) chi[i].push_back(std::conj(central[i][g]) * order / dims[i]);
    }
    int trivial = -1;
    for (int i = 0; i < r && trivial < 0; ++i) {
        bool all_one = true;
        for (const auto& c : chi[i]) all_one = all_one && std::abs(c - 1.0) < 1e-8;
        if (all_one) trivial = i;
    }
    if (trivial < 0) throw NumericRankAmbiguous("no trivial block among the central projections");
    std::vector<int> order_idx{trivial};
    for (int i = 0; i < r; ++i)
        if (i != trivial) order_idx.push_back(i);

    ContextFusion out;
    std::vector<std::vector<std::vector<long long>>> n(r, std::vector<std::vector<long long>>(r, std::vector<long long>(r)));
    out.pattern.assign(r, std::vector<std::vector<char>>(r, std::vector<char>(r, 0)));
    for (int a = 0; a < r; ++a) out.block_dims.push_back(static_cast<int>(std::lround(dims[order_idx[a]])));

    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            const int i = order_idx[a], j = order_idx[b];
            BoxElement cp = coproduct(central[i], central[j]);
            for (int c = 0; c < r; ++c) {
                const int k = order_idx[c];
                cplx s = 0;
                for (std::size_t g = 0; g < elems.size(); ++g) s += chi[i][g] * chi[j][g] * std::conj(chi[k][g]);
                s /= order;
                const double rounded = std::round(std::real(s));
                if (std::abs(s - rounded) > 1e-6) throw NumericRankAmbiguous("non-integral multiplicity " + at(a, b, c));
                n[a][b][c] = static_cast<long long>(rounded);
                out.pattern[a][b][c] = mul(cp, central[k]).max_abs() > 1e-8 * cp.max_abs();
            }
        }
    out.ring = make_fusion_ring(std::move(n));
    out.patterns_agree = true;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c)
                if ((out.ring(a, b, c) > 0) != static_cast<bool>(out.pattern[a][b][c])) out.patterns_agree = false;
    return out;
}

}  // namespace biprox
