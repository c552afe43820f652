#include "biprox/permgroup.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace biprox {

// ---------------------------------------------------------------- Permutation

Permutation Permutation::identity(int degree) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<int> im(images.size());
    for (int i = 0; i < degree(); ++i) im[images[i]] = i;
    return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (images[i] != i) return false;
    return true;
}

int Permutation::order() const {
    std::vector<char> seen(images.size(), 0);
    long long l = 1;
    for (int i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = images[j]) {
            seen[j] = 1;
            ++len;
        }
        l = std::lcm(l, static_cast<long long>(len));
    }
    return static_cast<int>(l);
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DegreeMismatch("cannot compose permutations of different degree");
    std::vector<int> im(a.images.size());
    for (int i = 0; i < a.degree(); ++i) im[i] = a.images[b.images[i]];
    return Permutation(std::move(im));
}

std::string to_cycles(const Permutation& p) {
    std::ostringstream os;
    std::vector<char> seen(p.images.size(), 0);
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[i] || p.images[i] == i) continue;
        os << '(';
        bool first = true;
        for (int j = i; !seen[j]; j = p.images[j]) {
            seen[j] = 1;
            if (!first) os << ',';
            os << j + 1;
            first = false;
        }
        os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

namespace {

std::vector<std::vector<int>> parse_cycles(const std::string& text, int& max_point) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("expected '(' in \"" + text + "\"");
        ++i;
        std::vector<int> cyc;
        for (;;) {
            skip();
            if (i >= text.size()) throw ParseError("unterminated cycle in \"" + text + "\"");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (text[i] == ',') {
                ++i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in \"" + text + "\"");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > 100000) throw ParseError("point out of range");
                ++i;
            }
            if (v < 1) throw ParseError("points are 1-based");
            cyc.push_back(v - 1);
            max_point = std::max(max_point, v);
        }
        std::vector<int> sorted = cyc;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError("repeated point in cycle of \"" + text + "\"");
        cycles.push_back(std::move(cyc));
        skip();
    }
    return cycles;
}

Permutation from_cycles(const std::vector<std::vector<int>>& cycles, int degree) {
    Permutation p = Permutation::identity(degree);
    // later cycles act first, matching the composition convention
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        Permutation c = Permutation::identity(degree);
        const auto& cyc = *it;
        for (std::size_t k = 0; k < cyc.size(); ++k) c.images[cyc[k]] = cyc[(k + 1) % cyc.size()];
        p = c * p;
    }
    return p;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::vector<Permutation> parse_generators(const std::string& text, int degree) {
    std::vector<std::vector<std::vector<int>>> parsed;
    int max_point = 0;
    for (const auto& part : split(text, ';')) {
        if (blank(part)) continue;
        parsed.push_back(parse_cycles(part, max_point));
    }
    if (degree == 0) degree = std::max(max_point, 1);
    if (max_point > degree) throw ParseError("point exceeds degree " + std::to_string(degree));
    std::vector<Permutation> gens;
    for (const auto& c : parsed) gens.push_back(from_cycles(c, degree));
    return gens;
}

Permutation parse_permutation(const std::string& text, int degree) {
    int max_point = 0;
    auto cycles = parse_cycles(text, max_point);
    if (degree == 0) degree = std::max(max_point, 1);
    if (max_point > degree) throw ParseError("point exceeds degree " + std::to_string(degree));
    return from_cycles(cycles, degree);
}

// ----------------------------------------------------------------- ElementSet

int ElementSet::count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool ElementSet::subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
    ElementSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
}

std::vector<int> ElementSet::indices() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto bits = words_[w];
        while (bits) {
            int b = std::countr_zero(bits);
            out.push_back(static_cast<int>(w * 64 + b));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t ElementSet::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool operator<(const ElementSet& a, const ElementSet& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
        if (a.words_[i] == b.words_[i]) continue;
        // lowest differing member decides: the set containing it comes first
        auto diff = a.words_[i] ^ b.words_[i];
        auto bit = diff & (~diff + 1);
        return (a.words_[i] & bit) != 0;
    }
    return false;
}

bool operator<(const Subgroup& a, const Subgroup& b) {
    int oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.members < b.members;
}

// ---------------------------------------------------------------- FiniteGroup

namespace {
struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 0;
        for (int x : v) h = h * 1000003u + static_cast<std::size_t>(x);
        return h;
    }
};
}  // namespace

GroupPtr FiniteGroup::closure(const std::vector<Permutation>& generators, int max_order, int degree,
                              std::string name) {
    if (!generators.empty()) {
        if (degree == 0) degree = generators.front().degree();
        for (const auto& g : generators)
            if (g.degree() != degree) throw DegreeMismatch("generators disagree on degree");
    }
    if (degree == 0) degree = 1;

    std::unordered_set<std::vector<int>, VecHash> seen;
    std::vector<Permutation> elems;
    Permutation e = Permutation::identity(degree);
    seen.insert(e.images);
    elems.push_back(e);
    for (std::size_t q = 0; q < elems.size(); ++q) {
        for (const auto& s : generators) {
            Permutation y = s * elems[q];
            if (seen.insert(y.images).second) {
                elems.push_back(std::move(y));
                if (static_cast<int>(elems.size()) > max_order)
                    throw OrderCapExceeded("group order exceeds cap " + std::to_string(max_order));
            }
        }
    }
    std::sort(elems.begin(), elems.end());

    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->name_ = std::move(name);
    g->degree_ = degree;
    g->elements_ = std::move(elems);
    const int n = g->order();
    std::unordered_map<std::vector<int>, int, VecHash> index;
    for (int i = 0; i < n; ++i) index.emplace(g->elements_[i].images, i);
    g->cayley_.assign(static_cast<std::size_t>(n) * n, 0);
    std::vector<int> buf(degree);
    for (int i = 0; i < n; ++i) {
        const auto& a = g->elements_[i].images;
        for (int j = 0; j < n; ++j) {
            const auto& b = g->elements_[j].images;
            for (int k = 0; k < degree; ++k) buf[k] = a[b[k]];
            g->cayley_[static_cast<std::size_t>(i) * n + j] = index.at(buf);
        }
    }
    g->inverse_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g->mul(i, j) == 0) {
                g->inverse_[i] = j;
                break;
            }
    g->orders_.assign(n, 1);
    for (int i = 1; i < n; ++i) {
        int x = i, k = 1;
        while (x != 0) {
            x = g->mul(x, i);
            ++k;
        }
        g->orders_[i] = k;
    }
    for (const auto& s : generators) {
        int idx = index.at(s.images);
        if (idx != 0 && std::find(g->generators_.begin(), g->generators_.end(), idx) == g->generators_.end())
            g->generators_.push_back(idx);
    }
    return g;
}

int FiniteGroup::index_of(const Permutation& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || !(*it == p)) return -1;
    return static_cast<int>(it - elements_.begin());
}

bool FiniteGroup::is_abelian() const {
    for (int a : generators_)
        for (int b : generators_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

// ------------------------------------------------------------------ Subgroups

Subgroup trivial_subgroup(const GroupPtr& g) {
    ElementSet s(g->order());
    s.insert(0);
    return {g, s};
}

Subgroup whole_group(const GroupPtr& g) {
    ElementSet s(g->order());
    for (int i = 0; i < g->order(); ++i) s.insert(i);
    return {g, s};
}

namespace {

// Extends a closed set `members` (listed in `list`) by new generators.
void extend_closure(const FiniteGroup& g, ElementSet& members, std::vector<int>& list,
                    const std::vector<int>& gens, std::size_t restart_from) {
    for (std::size_t q = restart_from; q < list.size(); ++q) {
        for (int s : gens) {
            int y = g.mul(list[q], s);
            if (!members.contains(y)) {
                members.insert(y);
                list.push_back(y);
            }
        }
    }
}

struct Closure {
    ElementSet members;
    std::vector<int> list;
    std::vector<int> gens;
};

Closure closure_of(const GroupPtr& g, const std::vector<int>& seed) {
    Closure c{ElementSet(g->order()), {0}, {}};
    c.members.insert(0);
    for (int s : seed) {
        if (s < 0 || s >= g->order()) throw ParseError("element index out of range");
        if (c.members.contains(s)) continue;
        c.gens.push_back(s);
        extend_closure(*g, c.members, c.list, c.gens, 0);
    }
    return c;
}

}  // namespace

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& seed) {
    return {g, closure_of(g, seed).members};
}

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<Permutation>& seed) {
    std::vector<int> idx;
    for (const auto& p : seed) {
        Permutation q = p;
        if (q.degree() < g->degree()) {
            auto im = q.images;
            for (int i = q.degree(); i < g->degree(); ++i) im.push_back(i);
            q = Permutation(im);
        }
        int i = g->index_of(q);
        if (i < 0) throw ParseError("permutation " + to_cycles(p) + " is not in the group");
        idx.push_back(i);
    }
    return subgroup_generated(g, idx);
}

std::vector<int> generating_set(const Subgroup& s) {
    return closure_of(s.parent, s.elements()).gens;
}

std::string subgroup_label(const Subgroup& s) {
    auto gens = generating_set(s);
    if (gens.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) out += "; ";
        out += to_cycles(s.parent->element(gens[i]));
    }
    return out;
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
    auto seed = generating_set(a);
    for (int x : generating_set(b)) seed.push_back(x);
    return subgroup_generated(a.parent, seed);
}

Subgroup meet(const Subgroup& a, const Subgroup& b) { return {a.parent, a.members & b.members}; }

Subgroup conjugate(const Subgroup& h, int g) {
    ElementSet s(h.parent->order());
    for (int x : h.elements()) s.insert(h.parent->conj(g, x));
    return {h.parent, s};
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g, int count_cap) {
    struct Node {
        Subgroup s;
        std::vector<int> gens;
    };
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<Node> found;
    std::vector<std::pair<ElementSet, int>> cyclic;  // members, generator
    for (int x = 0; x < g->order(); ++x) {
        Closure c = closure_of(g, {x});
        if (seen.insert(c.members).second) {
            found.push_back({{g, c.members}, c.gens});
            if (x != 0) cyclic.push_back({c.members, x});
        }
    }
    for (std::size_t q = 0; q < found.size(); ++q) {
        for (const auto& [cm, cg] : cyclic) {
            if (cm.subset_of(found[q].s.members)) continue;
            Closure c{found[q].s.members, found[q].s.elements(), found[q].gens};
            c.gens.push_back(cg);
            extend_closure(*g, c.members, c.list, c.gens, 0);
            if (seen.insert(c.members).second) {
                found.push_back({{g, c.members}, c.gens});
                if (static_cast<int>(found.size()) > count_cap)
                    throw SubgroupCapExceeded("more than " + std::to_string(count_cap) + " subgroups");
            }
        }
    }
    std::vector<Subgroup> out;
    out.reserve(found.size());
    for (auto& n : found) out.push_back(std::move(n.s));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subgroup> interval_subgroups(const Subgroup& bottom, const Subgroup& top, int count_cap) {
    if (!bottom.subset_of(top)) throw NotNested("bottom is not contained in top");
    const auto& g = bottom.parent;
    struct Node {
        Subgroup s;
        std::vector<int> gens;
    };
    std::unordered_set<ElementSet, ElementSetHash> seen{bottom.members};
    std::vector<Node> found{{bottom, generating_set(bottom)}};
    const auto top_elems = top.elements();
    for (std::size_t q = 0; q < found.size(); ++q) {
        const Subgroup cur = found[q].s;
        const std::vector<int> cur_list = cur.elements();
        ElementSet covered = cur.members;
        for (int x : top_elems) {
            if (covered.contains(x)) continue;
            for (int y : cur_list) covered.insert(g->mul(x, y));  // the coset x*cur
            Closure c{cur.members, cur_list, found[q].gens};
            c.gens.push_back(x);
            extend_closure(*g, c.members, c.list, c.gens, 0);
            if (seen.insert(c.members).second) {
                found.push_back({{g, c.members}, c.gens});
                if (static_cast<int>(found.size()) > count_cap)
                    throw SubgroupCapExceeded("more than " + std::to_string(count_cap) + " subgroups");
            }
        }
    }
    std::vector<Subgroup> out;
    for (auto& n : found) out.push_back(std::move(n.s));
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup core_in(const Subgroup& top, const Subgroup& h) {
    ElementSet m = h.members;
    for (int t : top.elements()) m = m & conjugate(h, t).members;
    return {h.parent, m};
}

Subgroup core(const Subgroup& h) { return core_in(whole_group(h.parent), h); }

bool is_normal_in(const Subgroup& n, const Subgroup& top) {
    const auto& g = n.parent;
    for (int t : generating_set(top))
        for (int x : generating_set(n))
            if (!n.contains(g->conj(t, x))) return false;
    return true;
}

bool is_normal_intermediate(const Subgroup& h, const Subgroup& k, const Subgroup& top) {
    if (!h.subset_of(k) || !k.subset_of(top)) throw NotNested("expected H <= K <= G");
    const auto& g = h.parent;
    const auto hl = h.elements();
    const auto kl = k.elements();
    ElementSet done(g->order());
    for (int x : top.elements()) {
        if (done.contains(x)) continue;
        ElementSet hxk(g->order()), kxh(g->order());
        for (int a : hl)
            for (int b : kl) {
                hxk.insert(g->mul(g->mul(a, x), b));
                kxh.insert(g->mul(g->mul(b, x), a));
            }
        if (!(hxk == kxh)) return false;
        for (int y : hxk.indices()) done.insert(y);
    }
    return true;
}

bool is_normal_intermediate(const Subgroup& h, const Subgroup& k) {
    return is_normal_intermediate(h, k, whole_group(h.parent));
}

std::vector<Subgroup> minimal_overgroups(const Subgroup& h, const Subgroup& top) {
    if (!h.subset_of(top)) throw NotNested("H is not contained in G");
    const auto& g = h.parent;
    const auto hl = h.elements();
    auto hgens = generating_set(h);
    std::vector<Subgroup> cands;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    ElementSet covered = h.members;
    for (int x : top.elements()) {
        if (covered.contains(x)) continue;
        for (int y : hl) covered.insert(g->mul(x, y));
        auto seed = hgens;
        seed.push_back(x);
        Subgroup s = subgroup_generated(g, seed);
        if (seen.insert(s.members).second) cands.push_back(s);
    }
    std::vector<Subgroup> out;
    for (const auto& c : cands) {
        bool minimal = true;
        for (const auto& d : cands)
            if (!(d == c) && d.subset_of(c)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subgroup> maximal_subgroups_over(const Subgroup& h, const Subgroup& top) {
    auto all = interval_subgroups(h, top);
    std::vector<Subgroup> out;
    for (const auto& k : all) {
        if (k == top) continue;
        bool maximal = true;
        for (const auto& l : all)
            if (!(l == top) && !(l == k) && k.subset_of(l)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(k);
    }
    return out;
}

std::vector<Subgroup> conjugacy_class_representatives(const std::vector<Subgroup>& subgroups,
                                                      const Subgroup& top) {
    std::vector<Subgroup> sorted = subgroups;
    std::sort(sorted.begin(), sorted.end());
    std::unordered_set<ElementSet, ElementSetHash> done;
    std::vector<Subgroup> reps;
    const auto tl = top.elements();
    for (const auto& s : sorted) {
        if (done.count(s.members)) continue;
        reps.push_back(s);  // smallest member of its class, since we scan in order
        for (int t : tl) done.insert(conjugate(s, t).members);
    }
    return reps;
}

Subgroup center(const GroupPtr& g) {
    ElementSet s(g->order());
    for (int x = 0; x < g->order(); ++x) {
        bool central = true;
        for (int y : g->generators())
            if (g->mul(x, y) != g->mul(y, x)) {
                central = false;
                break;
            }
        if (central) s.insert(x);
    }
    return {g, s};
}

Subgroup derived_subgroup(const GroupPtr& g) {
    std::vector<int> comms;
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b) comms.push_back(g->mul(g->mul(a, b), g->mul(g->inv(a), g->inv(b))));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return subgroup_generated(g, comms);
}

std::vector<int> element_order_multiset(const Subgroup& s) {
    std::vector<int> out;
    for (int x : s.elements()) out.push_back(s.parent->element_order(x));
    std::sort(out.begin(), out.end());
    return out;
}

Quotient quotient(const GroupPtr& g, const Subgroup& n, int max_order) {
    const int q = g->order() / n.order();
    if (q > max_order) throw QuotientOrderCapExceeded("quotient order " + std::to_string(q) + " exceeds cap");
    std::vector<int> coset(g->order(), -1);
    std::vector<int> rep;
    const auto nl = n.elements();
    for (int x = 0; x < g->order(); ++x) {
        if (coset[x] >= 0) continue;
        int id = static_cast<int>(rep.size());
        rep.push_back(x);
        for (int y : nl) coset[g->mul(x, y)] = id;
    }
    auto action = [&](int x) {
        std::vector<int> im(q);
        for (int c = 0; c < q; ++c) im[c] = coset[g->mul(x, rep[c])];
        return Permutation(std::move(im));
    };
    std::vector<Permutation> gens;
    for (int x : g->generators()) gens.push_back(action(x));
    if (gens.empty() && g->order() > 1) {
        for (int x : generating_set(whole_group(g))) gens.push_back(action(x));
    }
    Quotient out;
    out.group = FiniteGroup::closure(gens, max_order, q, g->name() + "/N");
    out.image.resize(g->order());
    for (int x = 0; x < g->order(); ++x) out.image[x] = out.group->index_of(action(x));
    return out;
}

}  // namespace biprox
