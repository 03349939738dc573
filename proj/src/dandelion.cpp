#include "treecodex/dandelion.hpp"

#include <algorithm>

namespace treecodex {

namespace detail {

int dandelion_encode_table(std::vector<int> s, Code& code) {
    const int n = static_cast<int>(s.size()) - 1;
    std::vector<int> weight(s.size(), 0);
    std::vector<char> hooked(s.size(), 0);  // re-pointed at 1

    // After re-pointing v at 1, a cycle exists iff the walk from 1 meets v.
    auto closes_cycle = [&](int v) {
        int x = s[1];
        for (int steps = 0; x > 0 && steps <= n; ++steps) {
            if (x == v) return true;
            if (hooked[static_cast<std::size_t>(x)]) return false;
            x = s[static_cast<std::size_t>(x)];
        }
        return false;
    };

    for (int v = n; v >= 2; --v) {
        int m = s[static_cast<std::size_t>(v)];
        int k = s[1];
        hooked[static_cast<std::size_t>(v)] = 1;
        weight[static_cast<std::size_t>(v)] = m;
        if (closes_cycle(v)) {
            s[1] = m;
            weight[static_cast<std::size_t>(v)] = k;
        }
    }
    code.assign(weight.begin() + std::min<std::ptrdiff_t>(2, static_cast<std::ptrdiff_t>(weight.size())),
                weight.end());
    return s[1];
}

int dandelion_encode_fast_table(const std::vector<int>& s, Code& code) {
    std::vector<int> t = s;
    std::vector<int> interior;
    int x = s[1];
    while (x > 0) {
        interior.push_back(x);
        x = s[static_cast<std::size_t>(x)];
    }
    const int root = x;
    // Cut points are right-to-left maxima; each segment ending at a cut
    // becomes one cycle.
    std::vector<char> cut(interior.size(), 0);
    int best = 0;
    for (std::size_t i = interior.size(); i-- > 0;) {
        if (interior[i] > best) {
            best = interior[i];
            cut[i] = 1;
        }
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i < interior.size(); ++i) {
        if (!cut[i]) {
            t[static_cast<std::size_t>(interior[i])] = interior[i + 1];
        } else {
            t[static_cast<std::size_t>(interior[i])] = interior[start];
            start = i + 1;
        }
    }
    t[1] = root;
    code.assign(t.begin() + std::min<std::ptrdiff_t>(2, static_cast<std::ptrdiff_t>(t.size())), t.end());
    return root;
}

std::vector<int> dandelion_decode_table(int root, const Code& code) {
    std::vector<int> s(code.size() + 2, 0);
    s[1] = root;
    std::copy(code.begin(), code.end(), s.begin() + 2);
    const int n = static_cast<int>(s.size()) - 1;

    std::vector<int> mark(s.size(), 0);
    std::vector<char> is_max(s.size(), 0);
    for (int v = 2; v <= n; ++v) {
        if (mark[static_cast<std::size_t>(v)]) continue;
        int x = v;
        while (x > 0 && !mark[static_cast<std::size_t>(x)]) {
            mark[static_cast<std::size_t>(x)] = v;
            x = s[static_cast<std::size_t>(x)];
        }
        if (x > 0 && mark[static_cast<std::size_t>(x)] == v) {
            int best = x;
            for (int y = s[static_cast<std::size_t>(x)]; y != x; y = s[static_cast<std::size_t>(y)])
                best = std::max(best, y);
            is_max[static_cast<std::size_t>(best)] = 1;
        }
    }
    // Largest maximum first; each cycle is read starting after its maximum so
    // that the maximum comes last.
    int tail = 1;
    for (int top = n; top >= 2; --top) {
        if (!is_max[static_cast<std::size_t>(top)]) continue;
        int first = s[static_cast<std::size_t>(top)];
        s[static_cast<std::size_t>(tail)] = first;
        tail = top;
    }
    s[static_cast<std::size_t>(tail)] = root;
    return s;
}

std::vector<int> dandelion_decode_surgery_table(int root, const Code& code) {
    const int n = static_cast<int>(code.size()) + 1;
    std::vector<int> s(static_cast<std::size_t>(n) + 1, 1);
    s[0] = 0;
    s[1] = root;
    std::vector<int> weight(s.size(), 0);
    for (int i = 2; i <= n; ++i) weight[static_cast<std::size_t>(i)] = code[static_cast<std::size_t>(i - 2)];

    // Vertices above i still hang from 1, so walks route through 1.
    auto closes_cycle = [&](int i) {
        int x = s[static_cast<std::size_t>(i)];
        for (int steps = 0; x > 0 && steps <= n + 1; ++steps) {
            if (x == i) return true;
            x = x > i ? 1 : s[static_cast<std::size_t>(x)];
        }
        return false;
    };

    for (int i = 2; i <= n; ++i) {
        int k = weight[static_cast<std::size_t>(i)];
        s[static_cast<std::size_t>(i)] = k;
        if (closes_cycle(i)) {
            int m = s[1];
            s[1] = k;
            s[static_cast<std::size_t>(i)] = m;
        }
    }
    return s;
}

}  // namespace detail

Code dandelion_encode(const RootedTree& t) {
    Code code;
    detail::dandelion_encode_table(t.table(), code);
    return code;
}

Code dandelion_encode_fast(const RootedTree& t) {
    Code code;
    detail::dandelion_encode_fast_table(t.table(), code);
    return code;
}

RootedTree dandelion_decode(const Code& code) {
    check_code(code, static_cast<int>(code.size()) + 1);
    return RootedTree::from_table(detail::dandelion_decode_table(0, code));
}

RootedTree dandelion_decode_surgery(const Code& code) {
    check_code(code, static_cast<int>(code.size()) + 1);
    return RootedTree::from_table(detail::dandelion_decode_surgery_table(0, code));
}

}  // namespace treecodex
