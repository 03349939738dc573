#pragma once

#include "treecodex/tree.hpp"

namespace treecodex {

// Classical code: repeatedly remove the least leaf and record its successor.
Code prufer_encode(const RootedTree& t);
// The tree size is code.size() + 1.
RootedTree prufer_decode(const Code& code);

}  // namespace treecodex
