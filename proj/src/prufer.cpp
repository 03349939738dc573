#include "treecodex/prufer.hpp"

namespace treecodex {

namespace {

// Linear least-leaf scan: ptr only moves forward; a vertex below ptr that
// becomes a leaf is the least leaf at that moment and is taken at once.
struct LeafScan {
    std::vector<int>& pending;  // children (encode) or remaining mentions (decode)
    int ptr = 1;

    int first() {
        while (pending[static_cast<std::size_t>(ptr)] != 0) ++ptr;
        return ptr;
    }
    int after(int p) {
        if (p != 0 && --pending[static_cast<std::size_t>(p)] == 0 && p < ptr) return p;
        ++ptr;
        return first();
    }
};

}  // namespace

Code prufer_encode(const RootedTree& t) {
    const int n = t.n();
    const auto& s = t.table();
    std::vector<int> indeg(s.size() + 1, 0);
    indeg.back() = -1;  // sentinel stops the scan
    for (int v = 1; v <= n; ++v) ++indeg[static_cast<std::size_t>(s[static_cast<std::size_t>(v)])];

    Code code;
    code.reserve(static_cast<std::size_t>(n - 1));
    LeafScan scan{indeg};
    int leaf = scan.first();
    for (int step = 1; step < n; ++step) {
        int p = s[static_cast<std::size_t>(leaf)];
        code.push_back(p);
        leaf = scan.after(p);
    }
    return code;
}

RootedTree prufer_decode(const Code& code) {
    const int n = static_cast<int>(code.size()) + 1;
    check_code(code, n);
    std::vector<int> remaining(static_cast<std::size_t>(n) + 2, 0);
    remaining.back() = -1;
    for (int c : code) ++remaining[static_cast<std::size_t>(c)];

    std::vector<int> s(static_cast<std::size_t>(n) + 1, 0);
    LeafScan scan{remaining};
    int leaf = scan.first();
    for (int c : code) {
        s[static_cast<std::size_t>(leaf)] = c;
        leaf = scan.after(c);
    }
    s[static_cast<std::size_t>(leaf)] = 0;
    return RootedTree::from_table(std::move(s));
}

}  // namespace treecodex
