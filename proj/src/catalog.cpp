#include "biprox/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace biprox {

namespace {

Permutation cycle_perm(int degree, const std::vector<int>& cyc) {
    Permutation p = Permutation::identity(degree);
    for (std::size_t k = 0; k < cyc.size(); ++k) p.images[cyc[k]] = cyc[(k + 1) % cyc.size()];
    return p;
}

std::vector<Permutation> cyclic_gens(int n) {
    if (n == 1) return {};
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = i;
    return {cycle_perm(n, c)};
}

std::vector<Permutation> dihedral_gens(int n) {
    if (n == 2) return {cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})};
    std::vector<int> c(n), r(n);
    for (int i = 0; i < n; ++i) {
        c[i] = i;
        r[i] = (n - i) % n;
    }
    return {cycle_perm(n, c), Permutation(r)};
}

// Regular representation of <a, x | a^{2n}, x^2 = a^n, x a x^-1 = a^-1>;
// the point k + 2n*j stands for a^k x^j.
std::vector<Permutation> dicyclic_gens(int n) {
    const int m = 2 * n, deg = 2 * m;
    std::vector<int> a(deg), x(deg);
    for (int k = 0; k < m; ++k) {
        a[k] = (k + 1) % m;
        a[k + m] = (k + 1) % m + m;
        x[k] = (m - k) % m + m;
        x[k + m] = ((n - k) % m + m) % m;
    }
    return {Permutation(a), Permutation(x)};
}

std::vector<Permutation> symmetric_gens(int n) {
    if (n <= 1) return {};
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = i;
    return {cycle_perm(n, {0, 1}), cycle_perm(n, c)};
}

std::vector<Permutation> alternating_gens(int n) {
    std::vector<Permutation> g;
    for (int i = 2; i < n; ++i) g.push_back(cycle_perm(n, {0, 1, i}));
    return g;
}

std::vector<Permutation> elementary2_gens(int k) {
    std::vector<Permutation> g;
    for (int i = 0; i < k; ++i) g.push_back(cycle_perm(2 * k, {2 * i, 2 * i + 1}));
    return g;
}

// SL(2,3) acting on the 8 nonzero vectors of F_3^2.
std::vector<Permutation> sl23_gens() {
    std::vector<std::pair<int, int>> vecs;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a || b) vecs.push_back({a, b});
    auto act = [&](int m00, int m01, int m10, int m11) {
        std::vector<int> im(8);
        for (int i = 0; i < 8; ++i) {
            auto [a, b] = vecs[i];
            std::pair<int, int> w{(m00 * a + m01 * b) % 3, (m10 * a + m11 * b) % 3};
            im[i] = static_cast<int>(std::find(vecs.begin(), vecs.end(), w) - vecs.begin());
        }
        return Permutation(im);
    };
    return {act(1, 1, 0, 1), act(1, 0, 1, 1)};
}

struct Entry {
    int order;
    std::vector<Permutation> gens;
};

const std::map<std::string, Entry>& catalog() {
    static const std::map<std::string, Entry> cat = [] {
        std::map<std::string, Entry> c;
        for (int n = 1; n <= 48; ++n) c["Z" + std::to_string(n)] = {n, cyclic_gens(n)};
        for (int n = 2; n <= 24; ++n) c["D" + std::to_string(n)] = {2 * n, dihedral_gens(n)};
        for (int n = 3; n <= 12; ++n) c["Dic" + std::to_string(n)] = {4 * n, dicyclic_gens(n)};
        c["Q8"] = {8, dicyclic_gens(2)};
        for (int n = 3; n <= 5; ++n) c["S" + std::to_string(n)] = {n == 3 ? 6 : n == 4 ? 24 : 120, symmetric_gens(n)};
        c["A4"] = {12, alternating_gens(4)};
        c["A5"] = {60, alternating_gens(5)};
        c["SL23"] = {24, sl23_gens()};
        for (int k = 2; k <= 4; ++k) c["Z2^" + std::to_string(k)] = {1 << k, elementary2_gens(k)};
        return c;
    }();
    return cat;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> catalog_names(int max_order) {
    std::vector<std::pair<int, std::string>> v;
    for (const auto& [name, e] : catalog())
        if (e.order <= max_order) v.push_back({e.order, name});
    std::sort(v.begin(), v.end());
    std::vector<std::string> out;
    for (auto& p : v) out.push_back(p.second);
    return out;
}

GroupPtr parse_group_spec(const std::string& spec_in, int max_order) {
    const std::string spec = trim(spec_in);
    if (spec.rfind("perm:", 0) == 0) {
        auto gens = parse_generators(spec.substr(5));
        return FiniteGroup::closure(gens, max_order, 0, spec);
    }
    if (spec.rfind("file:", 0) == 0) {
        std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open generator file " + path);
        std::string line, text;
        int degree = 0;
        while (std::getline(in, line)) {
            line = trim(line.substr(0, line.find('#')));
            if (line.empty()) continue;
            if (line.rfind("degree", 0) == 0) {
                degree = std::stoi(line.substr(6));
                continue;
            }
            text += line + ";";
        }
        auto gens = parse_generators(text, degree);
        std::string name = path.substr(path.find_last_of('/') + 1);
        return FiniteGroup::closure(gens, max_order, 0, name);
    }
    std::string key = spec;
    if (key.size() > 1 && key[0] == 'C' && std::isdigit(static_cast<unsigned char>(key[1]))) key[0] = 'Z';
    if (key == "SL(2,3)") key = "SL23";
    auto it = catalog().find(key);
    if (it == catalog().end()) throw ParseError("unknown group \"" + spec + "\"");
    if (it->second.order > max_order)
        throw OrderCapExceeded(key + " has order " + std::to_string(it->second.order) + " above the cap");
    int degree = it->second.gens.empty() ? 1 : 0;
    return FiniteGroup::closure(it->second.gens, max_order, degree, key);
}

Subgroup parse_subgroup_spec(const GroupPtr& g, const std::string& spec_in) {
    std::string spec = trim(spec_in);
    if (spec.empty() || spec == "trivial" || spec == "1") return trivial_subgroup(g);
    if (spec == "whole" || spec == "G") return whole_group(g);
    if (spec.rfind("perm:", 0) == 0) spec = spec.substr(5);
    auto gens = parse_generators(spec, g->degree());
    return subgroup_generated(g, gens);
}

}  // namespace biprox
