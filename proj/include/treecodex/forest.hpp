#pragma once

// Forests of k rooted trees: roots -1..-k, non-root vertices 1..m.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "treecodex/matrix.hpp"

namespace treecodex {

class RootedForest {
public:
    // succ[v-1] is the successor of v: a vertex in 1..m or a root in -k..-1.
    // Throws InvalidForest unless every vertex reaches a root.
    RootedForest(int k, const std::vector<int>& succ);

    int k() const noexcept { return k_; }
    int m() const noexcept { return static_cast<int>(succ_.size()); }
    int succ(int v) const { return succ_[static_cast<std::size_t>(v - 1)]; }
    const std::vector<int>& successors() const noexcept { return succ_; }

    friend bool operator==(const RootedForest&, const RootedForest&) = default;

private:
    int k_;
    std::vector<int> succ_;
};

// The tree code's leading b0 becomes the root choice; entries has length m-1.
struct ForestCode {
    int k = 1;
    int root = -1;
    std::vector<int> entries;
    friend bool operator==(const ForestCode&, const ForestCode&) = default;
};

enum class ForestCodec { Blob, Happy, Dandelion };

ForestCode forest_encode(const RootedForest& f, ForestCodec codec);
// Throws MalformedCode unless the code has the shape above.
RootedForest forest_decode(const ForestCode& c, ForestCodec codec);

std::uint64_t forest_count(int k, int m);  // k (m+k)^(m-1)
void for_each_forest(int k, int m, const std::function<void(const RootedForest&)>& fn);

// Sum over forests of the product of b_{succ(v)}, with b_{-r} for root -r.
poly::MultiPoly forest_weight_sum(int k, int m);
// The reduced uniform determinant on m vertices with b0 -> b_{-1}+...+b_{-k}.
poly::MultiPoly forest_determinant(int k, int m);

// "k=2; 1 -1 -2" and "-1 | 2,-2".
std::string format_forest(const RootedForest& f);
RootedForest parse_forest(std::string_view text);
std::string format_forest_code(const ForestCode& c);
ForestCode parse_forest_code(std::string_view text, int k);

}  // namespace treecodex
