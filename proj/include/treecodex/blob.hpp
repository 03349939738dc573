#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treecodex/tree.hpp"

namespace treecodex {

Code blob_encode(const RootedTree& t);
RootedTree blob_decode(const Code& code);

// b_j for an edge that is not an ascent, a_ij for an ascent i -> j (j > i).
struct WeightedToken {
    bool ascent = false;
    int i = 0;  // tail, meaningful only for ascents
    int j = 0;  // head

    static WeightedToken b(int j) { return {false, 0, j}; }
    static WeightedToken a(int i, int j) { return {true, i, j}; }
    friend bool operator==(const WeightedToken&, const WeightedToken&) = default;
};
using WeightedCode = std::vector<WeightedToken>;

// Length n, leading b0; slot k (k >= 2) is a_{k-1,j} with j >= k or b_j with j <= k-1.
WeightedCode blob_encode_weighted(const RootedTree& t);
RootedTree blob_decode_weighted(const WeightedCode& tokens);

// Throws MalformedToken unless tokens have the shape above.
void check_weighted(const WeightedCode& tokens);
std::string format_weighted(const WeightedCode& tokens);  // "b0,a1_3,b2"
WeightedCode parse_weighted(std::string_view text);

namespace detail {
// Table-level codec shared with the forest extension. Labels <= 0 are roots.
// Returns the root label the final blob points at.
int blob_encode_table(const std::vector<int>& s, Code& code);
std::vector<int> blob_decode_table(int root, const Code& code);
}  // namespace detail

}  // namespace treecodex
