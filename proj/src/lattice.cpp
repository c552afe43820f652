#include "biprox/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace biprox {

namespace {

int find_bottom(const std::vector<std::vector<char>>& leq) {
    const int n = static_cast<int>(leq.size());
    for (int a = 0; a < n; ++a) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) ok = leq[a][b];
        if (ok) return a;
    }
    throw std::invalid_argument("order has no bottom element");
}

int find_top(const std::vector<std::vector<char>>& leq) {
    const int n = static_cast<int>(leq.size());
    for (int a = 0; a < n; ++a) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) ok = leq[b][a];
        if (ok) return a;
    }
    throw std::invalid_argument("order has no top element");
}

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> l(n);
    for (int i = 0; i < n; ++i) l[i] = std::to_string(i);
    return l;
}

}  // namespace

FiniteLattice FiniteLattice::from_tables(std::vector<std::vector<char>> leq, std::vector<std::vector<int>> meet,
                                         std::vector<std::vector<int>> join, std::vector<std::string> labels) {
    FiniteLattice l;
    l.n_ = static_cast<int>(leq.size());
    if (l.n_ == 0) throw std::invalid_argument("empty lattice");
    l.leq_ = std::move(leq);
    l.meet_ = std::move(meet);
    l.join_ = std::move(join);
    l.bottom_ = find_bottom(l.leq_);
    l.top_ = find_top(l.leq_);
    l.labels_ = labels.empty() ? default_labels(l.n_) : std::move(labels);
    return l;
}

FiniteLattice FiniteLattice::from_order(std::vector<std::vector<char>> leq, std::vector<std::string> labels) {
    const int n = static_cast<int>(leq.size());
    if (n == 0) throw std::invalid_argument("empty lattice");
    for (int a = 0; a < n; ++a) {
        if (!leq[a][a]) throw std::invalid_argument("order is not reflexive");
        for (int b = 0; b < n; ++b) {
            if (a != b && leq[a][b] && leq[b][a]) throw std::invalid_argument("order is not antisymmetric");
            for (int c = 0; c < n; ++c)
                if (leq[a][b] && leq[b][c] && !leq[a][c]) throw std::invalid_argument("order is not transitive");
        }
    }
    std::vector<int> down(n, 0), up(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            down[a] += leq[b][a];
            up[a] += leq[a][b];
        }
    std::vector<std::vector<int>> meet(n, std::vector<int>(n)), join(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // the infimum is the common lower bound with the largest down-set
            int m = -1, j = -1;
            for (int c = 0; c < n; ++c) {
                if (leq[c][a] && leq[c][b] && (m < 0 || down[c] > down[m])) m = c;
                if (leq[a][c] && leq[b][c] && (j < 0 || up[c] > up[j])) j = c;
            }
            if (m < 0 || j < 0) throw std::invalid_argument("order is not a lattice");
            for (int c = 0; c < n; ++c) {
                if (leq[c][a] && leq[c][b] && !leq[c][m]) throw std::invalid_argument("order is not a lattice");
                if (leq[a][c] && leq[b][c] && !leq[j][c]) throw std::invalid_argument("order is not a lattice");
            }
            meet[a][b] = m;
            join[a][b] = j;
        }
    return from_tables(std::move(leq), std::move(meet), std::move(join), std::move(labels));
}

bool FiniteLattice::covers(int a, int b) const {
    if (a == b || !leq_[a][b]) return false;
    for (int c = 0; c < n_; ++c)
        if (c != a && c != b && leq_[a][c] && leq_[c][b]) return false;
    return true;
}

std::vector<int> FiniteLattice::atoms() const {
    std::vector<int> out;
    for (int a = 0; a < n_; ++a)
        if (covers(bottom_, a)) out.push_back(a);
    return out;
}

std::vector<int> FiniteLattice::coatoms() const {
    std::vector<int> out;
    for (int a = 0; a < n_; ++a)
        if (covers(a, top_)) out.push_back(a);
    return out;
}

FiniteLattice FiniteLattice::reverse() const {
    FiniteLattice r = *this;
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) r.leq_[a][b] = leq_[b][a];
    std::swap(r.meet_, r.join_);
    std::swap(r.bottom_, r.top_);
    return r;
}

FiniteLattice FiniteLattice::interval(int a, int b, std::vector<int>* index_map) const {
    std::vector<int> idx;
    for (int c = 0; c < n_; ++c)
        if (leq_[a][c] && leq_[c][b]) idx.push_back(c);
    std::vector<int> back(n_, -1);
    for (std::size_t i = 0; i < idx.size(); ++i) back[idx[i]] = static_cast<int>(i);
    const int m = static_cast<int>(idx.size());
    std::vector<std::vector<char>> leq(m, std::vector<char>(m));
    std::vector<std::vector<int>> meet(m, std::vector<int>(m)), join(m, std::vector<int>(m));
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        labels[i] = labels_[idx[i]];
        for (int j = 0; j < m; ++j) {
            leq[i][j] = leq_[idx[i]][idx[j]];
            meet[i][j] = back[meet_[idx[i]][idx[j]]];
            join[i][j] = back[join_[idx[i]][idx[j]]];
        }
    }
    if (index_map) *index_map = idx;
    return from_tables(std::move(leq), std::move(meet), std::move(join), std::move(labels));
}

FiniteLattice from_subgroups(const Subgroup& bottom, const Subgroup& top, std::vector<Subgroup>* nodes) {
    auto subs = interval_subgroups(bottom, top);
    const int n = static_cast<int>(subs.size());
    std::unordered_map<ElementSet, int, ElementSetHash> index;
    for (int i = 0; i < n; ++i) index.emplace(subs[i].members, i);
    std::vector<std::vector<char>> leq(n, std::vector<char>(n));
    std::vector<std::vector<int>> meet_t(n, std::vector<int>(n)), join_t(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = subgroup_label(subs[i]);
        for (int j = 0; j < n; ++j) leq[i][j] = subs[i].subset_of(subs[j]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int m = index.at(meet(subs[i], subs[j]).members);
            int k;
            if (leq[i][j]) k = j;
            else if (leq[j][i]) k = i;
            else k = index.at(join(subs[i], subs[j]).members);
            meet_t[i][j] = meet_t[j][i] = m;
            join_t[i][j] = join_t[j][i] = k;
        }
    if (nodes) *nodes = subs;
    return FiniteLattice::from_tables(std::move(leq), std::move(meet_t), std::move(join_t), std::move(labels));
}

FiniteLattice from_subgroups(const GroupPtr& g, const Subgroup& h, std::vector<Subgroup>* nodes) {
    return from_subgroups(h, whole_group(g), nodes);
}

SublatticeWitness find_m3_or_n5(const FiniteLattice& l, bool only_n5) {
    const int n = l.size();
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            if (x == z || l.leq(x, z) || l.leq(z, x)) continue;
            const int a = l.meet(x, z), b = l.join(x, z);
            for (int y = 0; y < n; ++y) {
                if (y == x || y == z || y == a || y == b) continue;
                if (!l.leq(a, y) || !l.leq(y, b)) continue;
                if (l.meet(y, z) != a || l.join(y, z) != b) continue;
                if (!only_n5 && x < z && l.meet(x, y) == a && l.join(x, y) == b)
                    return {SublatticeWitness::Kind::M3, {a, x, y, z, b}};
                if (l.leq(x, y)) return {SublatticeWitness::Kind::N5, {a, x, y, z, b}};
            }
        }
    return {};
}

bool is_distributive(const FiniteLattice& l, SublatticeWitness* witness) {
    auto w = find_m3_or_n5(l);
    if (witness) *witness = w;
    return w.kind == SublatticeWitness::Kind::none;
}

bool is_distributive_identity(const FiniteLattice& l) {
    const int n = l.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), l.join(a, c))) return false;
    return true;
}

bool is_modular(const FiniteLattice& l) { return find_m3_or_n5(l, true).kind == SublatticeWitness::Kind::none; }

bool is_modular_identity(const FiniteLattice& l) {
    const int n = l.size();
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            if (!l.leq(a, c)) continue;
            for (int b = 0; b < n; ++b)
                if (l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c)) return false;
        }
    return true;
}

std::optional<int> boolean_rank(const FiniteLattice& l) {
    if (l.size() == 1) return 0;
    auto at = l.atoms();
    const int r = static_cast<int>(at.size());
    if (r >= 30 || l.size() != (1 << r)) return std::nullopt;
    if (!is_distributive(l)) return std::nullopt;
    for (int a = 0; a < l.size(); ++a) {
        bool has = false;
        for (int c = 0; c < l.size() && !has; ++c) has = l.meet(a, c) == l.bottom() && l.join(a, c) == l.top();
        if (!has) return std::nullopt;
    }
    std::vector<int> img(1 << r);
    std::vector<char> hit(l.size(), 0);
    for (int s = 0; s < (1 << r); ++s) {
        int j = l.bottom();
        for (int i = 0; i < r; ++i)
            if (s >> i & 1) j = l.join(j, at[i]);
        if (hit[j]) return std::nullopt;
        hit[j] = 1;
        img[s] = j;
    }
    for (int s = 0; s < (1 << r); ++s)
        for (int t = 0; t < (1 << r); ++t)
            if (((s & t) == s) != l.leq(img[s], img[t])) return std::nullopt;
    return r;
}

FiniteLattice top_interval(const FiniteLattice& l, std::vector<int>* index_map) {
    int b = l.top();
    auto co = l.coatoms();
    if (!co.empty()) {
        b = co.front();
        for (int c : co) b = l.meet(b, c);
    }
    return l.interval(b, l.top(), index_map);
}

FiniteLattice bottom_interval(const FiniteLattice& l, std::vector<int>* index_map) {
    int b = l.bottom();
    auto at = l.atoms();
    if (!at.empty()) {
        b = at.front();
        for (int c : at) b = l.join(b, c);
    }
    return l.interval(l.bottom(), b, index_map);
}

int complement(const FiniteLattice& l, int b) {
    if (!boolean_rank(l)) throw NotBoolean("complement requires a boolean lattice");
    for (int c = 0; c < l.size(); ++c)
        if (l.meet(b, c) == l.bottom() && l.join(b, c) == l.top()) return c;
    throw NotBoolean("no complement found");
}

int height(const FiniteLattice& l) {
    const int n = l.size();
    std::vector<int> order(n), down(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) down[a] += l.leq(b, a);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return down[a] < down[b]; });
    std::vector<int> best(n, 0);
    for (int a : order)
        for (int b = 0; b < n; ++b)
            if (l.covers(b, a)) best[a] = std::max(best[a], best[b] + 1);
    return best[l.top()];
}

FiniteLattice direct_product(const FiniteLattice& a, const FiniteLattice& b) {
    const int na = a.size(), nb = b.size(), n = na * nb;
    std::vector<std::vector<char>> leq(n, std::vector<char>(n));
    std::vector<std::vector<int>> meet(n, std::vector<int>(n)), join(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        const int i1 = i / nb, i2 = i % nb;
        labels[i] = "(" + a.label(i1) + "," + b.label(i2) + ")";
        for (int j = 0; j < n; ++j) {
            const int j1 = j / nb, j2 = j % nb;
            leq[i][j] = a.leq(i1, j1) && b.leq(i2, j2);
            meet[i][j] = a.meet(i1, j1) * nb + b.meet(i2, j2);
            join[i][j] = a.join(i1, j1) * nb + b.join(i2, j2);
        }
    }
    return FiniteLattice::from_tables(std::move(leq), std::move(meet), std::move(join), std::move(labels));
}

FiniteLattice concatenate(const FiniteLattice& a, const FiniteLattice& b) {
    // elements: all of a, then b without its bottom (identified with top(a))
    const int na = a.size(), nb = b.size(), n = na + nb - 1;
    std::vector<int> bpos(nb);
    int k = na;
    for (int j = 0; j < nb; ++j) bpos[j] = (j == b.bottom()) ? a.top() : k++;
    std::vector<int> origin(n), side(n);
    for (int i = 0; i < na; ++i) origin[i] = i, side[i] = 0;
    for (int j = 0; j < nb; ++j)
        if (j != b.bottom()) origin[bpos[j]] = j, side[bpos[j]] = 1;
    std::vector<std::vector<char>> leq(n, std::vector<char>(n));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = side[i] ? "b:" + b.label(origin[i]) : "a:" + a.label(origin[i]);
        for (int j = 0; j < n; ++j) {
            if (side[i] == 0 && side[j] == 0) leq[i][j] = a.leq(origin[i], origin[j]);
            else if (side[i] == 1 && side[j] == 1) leq[i][j] = b.leq(origin[i], origin[j]);
            else if (side[i] == 0) leq[i][j] = 1;
            else leq[i][j] = 0;
        }
    }
    return FiniteLattice::from_order(std::move(leq), std::move(labels));
}

FiniteLattice chain_lattice(int length) {
    const int n = length + 1;
    std::vector<std::vector<char>> leq(n, std::vector<char>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) leq[i][j] = i <= j;
    return FiniteLattice::from_order(std::move(leq));
}

FiniteLattice boolean_lattice(int rank) {
    const int n = 1 << rank;
    std::vector<std::vector<char>> leq(n, std::vector<char>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) leq[i][j] = (i & j) == i;
    return FiniteLattice::from_order(std::move(leq));
}

FiniteLattice diamond_lattice() {
    std::vector<std::vector<char>> leq(5, std::vector<char>(5, 0));
    for (int i = 0; i < 5; ++i) leq[i][i] = 1, leq[0][i] = 1, leq[i][4] = 1;
    return FiniteLattice::from_order(std::move(leq));
}

FiniteLattice pentagon_lattice() {
    // 0 < x=1 < y=2 < 4, 0 < z=3 < 4
    std::vector<std::vector<char>> leq(5, std::vector<char>(5, 0));
    for (int i = 0; i < 5; ++i) leq[i][i] = 1, leq[0][i] = 1, leq[i][4] = 1;
    leq[1][2] = 1;
    return FiniteLattice::from_order(std::move(leq));
}

std::string to_dot(const FiniteLattice& l, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
    for (int a = 0; a < l.size(); ++a) os << "  n" << a << " [label=\"" << l.label(a) << "\"];\n";
    for (int a = 0; a < l.size(); ++a)
        for (int b = 0; b < l.size(); ++b)
            if (l.covers(a, b)) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace biprox
