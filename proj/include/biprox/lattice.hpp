#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "biprox/permgroup.hpp"

namespace biprox {

class FiniteLattice {
public:
    FiniteLattice() = default;
    // Builds meet/join from a partial order; throws std::invalid_argument if leq is not a lattice order.
    static FiniteLattice from_order(std::vector<std::vector<char>> leq, std::vector<std::string> labels = {});
    // Takes meet/join tables as given (callers vouch for them).
    static FiniteLattice from_tables(std::vector<std::vector<char>> leq, std::vector<std::vector<int>> meet,
                                     std::vector<std::vector<int>> join, std::vector<std::string> labels = {});

    int size() const { return n_; }
    bool leq(int a, int b) const { return leq_[a][b]; }
    int meet(int a, int b) const { return meet_[a][b]; }
    int join(int a, int b) const { return join_[a][b]; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }
    const std::string& label(int a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool covers(int a, int b) const;  // a < b with nothing strictly between
    std::vector<int> atoms() const;
    std::vector<int> coatoms() const;
    FiniteLattice reverse() const;
    // Sublattice on the elements of [a, b], with the index map back to this lattice.
    FiniteLattice interval(int a, int b, std::vector<int>* index_map = nullptr) const;

private:
    int n_ = 0;
    std::vector<std::vector<char>> leq_;
    std::vector<std::vector<int>> meet_, join_;
    int bottom_ = 0, top_ = 0;
    std::vector<std::string> labels_;
};

// Interval [H, G] of subgroups; meet is intersection, join the generated subgroup.
// `nodes` receives the subgroups in lattice order.
FiniteLattice from_subgroups(const Subgroup& bottom, const Subgroup& top, std::vector<Subgroup>* nodes = nullptr);
FiniteLattice from_subgroups(const GroupPtr& g, const Subgroup& h, std::vector<Subgroup>* nodes = nullptr);

struct SublatticeWitness {
    enum class Kind { none, M3, N5 } kind = Kind::none;
    std::array<int, 5> elements{};  // bottom, x, y, z, top (N5: x < y)
};

SublatticeWitness find_m3_or_n5(const FiniteLattice& l, bool only_n5 = false);
bool is_distributive(const FiniteLattice& l, SublatticeWitness* witness = nullptr);
bool is_distributive_identity(const FiniteLattice& l);  // a v (b ^ c) = (a v b) ^ (a v c) over all triples
bool is_modular(const FiniteLattice& l);
bool is_modular_identity(const FiniteLattice& l);
std::optional<int> boolean_rank(const FiniteLattice& l);

FiniteLattice top_interval(const FiniteLattice& l, std::vector<int>* index_map = nullptr);
FiniteLattice bottom_interval(const FiniteLattice& l, std::vector<int>* index_map = nullptr);
int complement(const FiniteLattice& l, int b);
int height(const FiniteLattice& l);
FiniteLattice direct_product(const FiniteLattice& a, const FiniteLattice& b);
FiniteLattice concatenate(const FiniteLattice& a, const FiniteLattice& b);

FiniteLattice chain_lattice(int length);    // length+1 elements
FiniteLattice boolean_lattice(int rank);
FiniteLattice diamond_lattice();            // M3
FiniteLattice pentagon_lattice();           // N5

std::string to_dot(const FiniteLattice& l, const std::string& name = "lattice");

}  // namespace biprox
