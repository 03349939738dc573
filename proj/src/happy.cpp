#include "treecodex/happy.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace treecodex {

namespace {

std::vector<int> table_of(const std::vector<int>& succ) {
    std::vector<int> s(succ.size() + 1, 0);
    std::copy(succ.begin(), succ.end(), s.begin() + 1);
    return s;
}

Code tail_code(const std::vector<int>& s) { return Code(s.begin() + 2, s.end()); }

}  // namespace

namespace detail {

int happy_encode_table(std::vector<int> s, Code& code) {
    int top = 0;  // J, the largest vertex parked on a cycle so far
    while (s[1] > 0) {
        int j = s[1];
        s[1] = s[static_cast<std::size_t>(j)];
        if (j > top) {
            s[static_cast<std::size_t>(j)] = j;
            top = j;
        } else {
            s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(top)];
            s[static_cast<std::size_t>(top)] = j;
        }
    }
    code = tail_code(s);
    return s[1];
}

// Slots hold labels; lower[k] marks slot k as lower case (on a cycle).
// The rightmost lower-case slot is always the largest cycle vertex, which is
// tracked instead of rescanned.
int happy_encode_fast_table(const std::vector<int>& s, Code& code) {
    const int n = static_cast<int>(s.size()) - 1;
    std::vector<int> p = s;
    std::vector<char> lower(s.size(), 0);
    int rightmost = 0;
    int rounds = 0;
    while (p[1] > 0) {
        if (++rounds > n) throw Error(Errc::NotATree, "position 1 never reaches a root");
        int a = p[1];
        p[1] = p[static_cast<std::size_t>(a)];
        p[static_cast<std::size_t>(a)] = a;
        lower[static_cast<std::size_t>(a)] = 1;
        int k = rightmost > a ? rightmost : a;
#ifndef NDEBUG
        int scan = n;
        while (scan > a && !lower[static_cast<std::size_t>(scan)]) --scan;
        assert(scan == k);
#endif
        std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(k)]);
        rightmost = std::max(rightmost, a);
    }
    code = tail_code(p);
    return p[1];
}

std::vector<int> happy_decode_table(int root, const Code& code) {
    std::vector<int> s(code.size() + 2, 0);
    s[1] = root;
    std::copy(code.begin(), code.end(), s.begin() + 2);
    const int n = static_cast<int>(s.size()) - 1;

    // Cycle maxima in decreasing order; each cycle is drained through its max.
    std::vector<int> mark(s.size(), 0);
    std::vector<char> is_max(s.size(), 0);
    for (int v = 1; v <= n; ++v) {
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
    for (int top = n; top >= 1; --top) {
        if (!is_max[static_cast<std::size_t>(top)]) continue;
        for (;;) {
            int k = s[static_cast<std::size_t>(top)];
            s[static_cast<std::size_t>(top)] = s[static_cast<std::size_t>(k)];
            s[static_cast<std::size_t>(k)] = s[1];
            s[1] = k;
            if (k == top) break;
        }
    }
    return s;
}

}  // namespace detail

Code happy_encode(const RootedTree& t) {
    Code code;
    detail::happy_encode_table(t.table(), code);
    return code;
}

Code happy_encode_fast(const std::vector<int>& naive) {
    const int n = static_cast<int>(naive.size());
    if (n < 1) throw Error(Errc::InvalidInput, "empty naive code");
    for (int x : naive)
        if (x < 0 || x > n) throw Error(Errc::InvalidInput, "naive code entry out of range");
    Code code;
    detail::happy_encode_fast_table(table_of(naive), code);
    return code;
}

RootedTree happy_decode(const Code& code) {
    check_code(code, static_cast<int>(code.size()) + 1);
    return RootedTree::from_table(detail::happy_decode_table(0, code));
}

EscherResult escher_insert_trace(int loop_vertex, const Cycle& cycle) {
    if (cycle.empty()) throw Error(Errc::PreconditionViolated, "empty cycle");
    std::set<int> seen(cycle.begin(), cycle.end());
    if (seen.size() != cycle.size() || seen.count(loop_vertex))
        throw Error(Errc::PreconditionViolated, "cycle vertices must be distinct from each other and L");
    const int top = *seen.rbegin();
    if (top < loop_vertex) throw Error(Errc::PreconditionViolated, "cycle has no vertex above the loop vertex");

    std::map<int, int> succ;
    for (std::size_t i = 0; i < cycle.size(); ++i) succ[cycle[i]] = cycle[(i + 1) % cycle.size()];
    succ[loop_vertex] = loop_vertex;
    std::set<int> active;
    for (const auto& [v, _] : succ) active.insert(v);

    auto toggle_cycle_of = [&](int v) {
        bool on = active.count(v) > 0;
        int x = v;
        do {
            if (on) active.erase(x);
            else active.insert(x);
            x = succ[x];
        } while (x != v);
    };

    int iterations = 0;
    while (!active.empty()) {
        ++iterations;
        if (active.size() < 2) throw Error(Errc::PreconditionViolated, "lone active vertex");
        auto it = active.rbegin();
        int p = *it++;
        int q = *it;
        int m = succ[q];
        succ[q] = succ[p];
        succ[p] = m;
        toggle_cycle_of(top);
    }

    Cycle out{top};
    for (int x = succ[top]; x != top; x = succ[x]) out.push_back(x);
    return {out, iterations};
}

}  // namespace treecodex
