#pragma once

#include <utility>
#include <vector>

#include "treecodex/tree.hpp"

namespace treecodex {

// Tree surgery: peel succ(1) off the path to 0 and park it on a cycle.
Code happy_encode(const RootedTree& t);
// Permutes the naive code in place of surgery. Throws NotATree.
Code happy_encode_fast(const std::vector<int>& naive);
RootedTree happy_decode(const Code& code);

struct EscherResult {
    Cycle cycle;     // starts at the largest vertex
    int iterations;  // passes through the repeat loop
};
// Runs the swap-and-toggle loop on an active loop at L and an active cycle
// holding some vertex greater than L. Throws PreconditionViolated.
EscherResult escher_insert_trace(int loop_vertex, const Cycle& cycle);

namespace detail {
// Labels <= 0 are roots. Encoders return the root that 1 ends up pointing at.
int happy_encode_table(std::vector<int> s, Code& code);
int happy_encode_fast_table(const std::vector<int>& s, Code& code);
std::vector<int> happy_decode_table(int root, const Code& code);
}  // namespace detail

}  // namespace treecodex
