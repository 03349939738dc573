#pragma once

// Labelled rooted trees and functional digraphs on {0..n}, stored as
// successor arrays. Vertex 0 is the root and has no outgoing edge.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "treecodex/error.hpp"

namespace treecodex {

using Code = std::vector<int>;   // CodeVector: length n-1 over 0..n
using Cycle = std::vector<int>;  // v, succ(v), ... ; closes back to v

class FunctionalDigraph {
public:
    FunctionalDigraph() = default;
    // succ holds succ(1), ..., succ(n); every entry must lie in 0..n.
    explicit FunctionalDigraph(const std::vector<int>& succ);

    int n() const noexcept { return static_cast<int>(s_.size()) - 1; }
    int succ(int v) const { return s_[static_cast<std::size_t>(v)]; }
    // Index 0 is a placeholder; entries 1..n are the successors.
    const std::vector<int>& table() const noexcept { return s_; }
    std::vector<int> successors() const { return {s_.begin() + 1, s_.end()}; }

    friend bool operator==(const FunctionalDigraph&, const FunctionalDigraph&) = default;

protected:
    struct Trusted {};
    FunctionalDigraph(Trusted, std::vector<int> table) : s_(std::move(table)) {}

    std::vector<int> s_{0};
};

class RootedTree : public FunctionalDigraph {
public:
    RootedTree() = default;
    // Throws CycleFound unless every vertex reaches 0.
    explicit RootedTree(const std::vector<int>& succ);

    // Takes a full table (index 0 unused) already known to be a tree.
    static RootedTree from_table(std::vector<int> table);

    friend bool operator==(const RootedTree&, const RootedTree&) = default;

private:
    RootedTree(Trusted t, std::vector<int> table) : FunctionalDigraph(t, std::move(table)) {}
};

// Deterministic generator: mt19937_64 plus rejection sampling for bounded
// draws, so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    std::uint64_t below(std::uint64_t bound);
    int uniform(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 eng_;
};

RootedTree validate_tree(const FunctionalDigraph& d);
bool is_tree(const FunctionalDigraph& d);

std::vector<int> path(const FunctionalDigraph& d, int x);
std::vector<int> naive_code(const FunctionalDigraph& d);

// Cycles in canonical form: each starts at its smallest vertex, and the list
// is sorted by that vertex.
std::vector<Cycle> cycles_of(const FunctionalDigraph& d);

inline constexpr int kEnumerateBound = 8;
std::uint64_t tree_count(int n);  // (n+1)^(n-1)
void for_each_tree(int n, const std::function<void(const RootedTree&)>& fn,
                   int bound = kEnumerateBound);
std::vector<RootedTree> enumerate_trees(int n, int bound = kEnumerateBound);

// Visits every code of length n-1 over 0..n in lexicographic order.
void for_each_code(int n, const std::function<void(const Code&)>& fn);

RootedTree random_tree(int n, std::uint64_t seed);
RootedTree random_tree(int n, Rng& rng);
Code random_code(int n, Rng& rng);

RootedTree reverse_path(const RootedTree& t);

// Text formats: a tree is "s1 s2 ... sn", a code is "c1,c2,...".
std::string format_tree(const FunctionalDigraph& d);
std::vector<int> parse_int_list(std::string_view text, char sep);
FunctionalDigraph parse_digraph(std::string_view text);
RootedTree parse_tree(std::string_view text);
std::string format_code(const Code& c);
Code parse_code(std::string_view text);
std::string format_cycle(const Cycle& c);

// Throws InvalidInput unless c has length n-1 and entries in 0..n.
void check_code(const Code& c, int n);

}  // namespace treecodex
