#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "biprox/errors.hpp"

namespace biprox {

// Permutation of {0..n-1}; product is composition, (a*b)(i) = a(b(i)).
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> im) : images(std::move(im)) {}
    static Permutation identity(int degree);

    int degree() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i]; }
    Permutation inverse() const;
    bool is_identity() const;
    int order() const;

    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images <=> b.images; }
};

// 1-based cycle notation, "()" for the identity.
std::string to_cycles(const Permutation& p);

// Parses "(1,2)(3,4); (1,2,3,4)". Points are 1-based; commas or blanks separate
// points inside a cycle. A degree of 0 means "largest moved point".
std::vector<Permutation> parse_generators(const std::string& text, int degree = 0);
Permutation parse_permutation(const std::string& text, int degree = 0);

// Fixed-size bitset over element indices.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int universe() const { return n_; }
    bool contains(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void insert(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    int count() const;
    bool subset_of(const ElementSet& o) const;
    ElementSet operator&(const ElementSet& o) const;
    std::vector<int> indices() const;
    std::size_t hash() const;

    friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.words_ == b.words_; }
    // Orders by the increasing list of members, lexicographically.
    friend bool operator<(const ElementSet& a, const ElementSet& b);

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

constexpr int kDefaultOrderCap = 400;
constexpr int kDefaultSubgroupCap = 20000;

class FiniteGroup {
public:
    static GroupPtr closure(const std::vector<Permutation>& generators, int max_order = kDefaultOrderCap,
                            int degree = 0, std::string name = "");

    const std::string& name() const { return name_; }
    int order() const { return static_cast<int>(elements_.size()); }
    int degree() const { return degree_; }
    int identity() const { return 0; }
    const Permutation& element(int i) const { return elements_[i]; }
    const std::vector<Permutation>& elements() const { return elements_; }
    int mul(int i, int j) const { return cayley_[static_cast<std::size_t>(i) * elements_.size() + j]; }
    int inv(int i) const { return inverse_[i]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    int index_of(const Permutation& p) const;  // -1 if absent
    int element_order(int i) const { return orders_[i]; }
    const std::vector<int>& generators() const { return generators_; }  // element indices
    bool is_abelian() const;

private:
    std::string name_;
    int degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<int> cayley_;
    std::vector<int> inverse_;
    std::vector<int> orders_;
    std::vector<int> generators_;
};

struct Subgroup {
    GroupPtr parent;
    ElementSet members;

    int order() const { return members.count(); }
    bool contains(int g) const { return members.contains(g); }
    std::vector<int> elements() const { return members.indices(); }
    bool subset_of(const Subgroup& o) const { return members.subset_of(o.members); }
    bool is_trivial() const { return order() == 1; }

    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members == b.members; }
    // (order, bitset) ordering
    friend bool operator<(const Subgroup& a, const Subgroup& b);
};

struct SubgroupHash {
    std::size_t operator()(const Subgroup& s) const { return s.members.hash(); }
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_group(const GroupPtr& g);
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& seed);
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<Permutation>& seed);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup meet(const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const Subgroup& h, int g);  // g H g^-1

// Greedy canonical generating set: smallest elements not yet in the closure.
std::vector<int> generating_set(const Subgroup& s);
std::string subgroup_label(const Subgroup& s);  // generators in cycle notation, or "1"

std::vector<Subgroup> all_subgroups(const GroupPtr& g, int count_cap = kDefaultSubgroupCap);
// Subgroups K with bottom <= K <= top, sorted by (order, bitset).
std::vector<Subgroup> interval_subgroups(const Subgroup& bottom, const Subgroup& top,
                                         int count_cap = kDefaultSubgroupCap);

Subgroup core(const Subgroup& h);                          // core in the whole parent group
Subgroup core_in(const Subgroup& top, const Subgroup& h);  // core in top
bool is_normal_in(const Subgroup& n, const Subgroup& top);
bool is_normal_intermediate(const Subgroup& h, const Subgroup& k, const Subgroup& top);
bool is_normal_intermediate(const Subgroup& h, const Subgroup& k);

std::vector<Subgroup> minimal_overgroups(const Subgroup& h, const Subgroup& top);
std::vector<Subgroup> maximal_subgroups_over(const Subgroup& h, const Subgroup& top);

// One representative (the smallest in (order, bitset)) per conjugacy class under top.
std::vector<Subgroup> conjugacy_class_representatives(const std::vector<Subgroup>& subgroups,
                                                      const Subgroup& top);

Subgroup center(const GroupPtr& g);
Subgroup derived_subgroup(const GroupPtr& g);
std::vector<int> element_order_multiset(const Subgroup& s);  // sorted

struct Quotient {
    GroupPtr group;
    std::vector<int> image;  // parent element index -> quotient element index
};
// G/N realised on the left cosets of N.
Quotient quotient(const GroupPtr& g, const Subgroup& n, int max_order);

}  // namespace biprox
