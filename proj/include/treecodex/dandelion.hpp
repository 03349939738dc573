#pragma once

#include <vector>

#include "treecodex/tree.hpp"

namespace treecodex {

// Weighted-edge surgery: vertices n..2 are re-pointed at 1 in turn.
Code dandelion_encode(const RootedTree& t);
// Cuts the interior of path(1) into cycles at right-to-left maxima.
Code dandelion_encode_fast(const RootedTree& t);
// Cycles of i -> c_{i-1}, largest maximum first, strung between 1 and 0.
RootedTree dandelion_decode(const Code& code);
RootedTree dandelion_decode_surgery(const Code& code);

namespace detail {
int dandelion_encode_table(std::vector<int> s, Code& code);
int dandelion_encode_fast_table(const std::vector<int>& s, Code& code);
std::vector<int> dandelion_decode_table(int root, const Code& code);
std::vector<int> dandelion_decode_surgery_table(int root, const Code& code);
}  // namespace detail

}  // namespace treecodex
