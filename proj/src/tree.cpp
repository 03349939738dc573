#include "treecodex/tree.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "treecodex/dandelion.hpp"

namespace treecodex {

const char* errc_name(Errc e) noexcept {
    switch (e) {
        case Errc::InvalidInput: return "InvalidInput";
        case Errc::CycleFound: return "CycleFound";
        case Errc::NoPathToRoot: return "NoPathToRoot";
        case Errc::BoundExceeded: return "BoundExceeded";
        case Errc::MalformedToken: return "MalformedToken";
        case Errc::MalformedCode: return "MalformedCode";
        case Errc::NotATree: return "NotATree";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::StepBudgetExceeded: return "StepBudgetExceeded";
        case Errc::NotACycle: return "NotACycle";
        case Errc::InvalidForest: return "InvalidForest";
    }
    return "Unknown";
}

FunctionalDigraph::FunctionalDigraph(const std::vector<int>& succ) {
    const int n = static_cast<int>(succ.size());
    if (n < 1) throw Error(Errc::InvalidInput, "a digraph needs at least one non-root vertex");
    s_.assign(succ.size() + 1, 0);
    for (int v = 1; v <= n; ++v) {
        int t = succ[static_cast<std::size_t>(v - 1)];
        if (t < 0 || t > n)
            throw Error(Errc::InvalidInput,
                        "succ(" + std::to_string(v) + ")=" + std::to_string(t) + " out of range 0.." +
                            std::to_string(n));
        s_[static_cast<std::size_t>(v)] = t;
    }
}

RootedTree::RootedTree(const std::vector<int>& succ) : RootedTree(validate_tree(FunctionalDigraph(succ))) {}

RootedTree RootedTree::from_table(std::vector<int> table) { return RootedTree(Trusted{}, std::move(table)); }

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw Error(Errc::InvalidInput, "empty range");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = eng_();
        if (r >= threshold) return r % bound;
    }
}

namespace {

// 0 = unvisited, 1 = on current walk, 2 = reaches the root.
// Returns a vertex on a cycle, or 0 when every vertex reaches the root.
int find_cycle_vertex(const std::vector<int>& s) {
    const int n = static_cast<int>(s.size()) - 1;
    std::vector<char> state(s.size(), 0);
    state[0] = 2;
    for (int v = 1; v <= n; ++v) {
        int x = v;
        while (state[static_cast<std::size_t>(x)] == 0) {
            state[static_cast<std::size_t>(x)] = 1;
            x = s[static_cast<std::size_t>(x)];
        }
        if (state[static_cast<std::size_t>(x)] == 1) return x;
        for (int y = v; state[static_cast<std::size_t>(y)] == 1; y = s[static_cast<std::size_t>(y)])
            state[static_cast<std::size_t>(y)] = 2;
    }
    return 0;
}

Cycle cycle_through(const std::vector<int>& s, int v) {
    Cycle c{v};
    for (int x = s[static_cast<std::size_t>(v)]; x != v; x = s[static_cast<std::size_t>(x)]) c.push_back(x);
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

RootedTree validate_tree(const FunctionalDigraph& d) {
    if (int v = find_cycle_vertex(d.table()))
        throw Error(Errc::CycleFound, "cycle " + format_cycle(cycle_through(d.table(), v)));
    return RootedTree::from_table(d.table());
}

bool is_tree(const FunctionalDigraph& d) { return find_cycle_vertex(d.table()) == 0; }

std::vector<int> path(const FunctionalDigraph& d, int x) {
    if (x < 0 || x > d.n()) throw Error(Errc::InvalidInput, "vertex out of range");
    std::vector<int> p{x};
    while (x != 0) {
        x = d.succ(x);
        p.push_back(x);
        if (static_cast<int>(p.size()) > d.n() + 1)
            throw Error(Errc::NoPathToRoot, "vertex " + std::to_string(p.front()) + " enters a cycle");
    }
    return p;
}

std::vector<int> naive_code(const FunctionalDigraph& d) { return d.successors(); }

std::vector<Cycle> cycles_of(const FunctionalDigraph& d) {
    const auto& s = d.table();
    const int n = d.n();
    std::vector<int> mark(s.size(), 0);  // walk id that first touched the vertex
    std::vector<Cycle> out;
    for (int v = 1; v <= n; ++v) {
        if (mark[static_cast<std::size_t>(v)]) continue;
        int x = v;
        while (x != 0 && !mark[static_cast<std::size_t>(x)]) {
            mark[static_cast<std::size_t>(x)] = v;
            x = s[static_cast<std::size_t>(x)];
        }
        if (x != 0 && mark[static_cast<std::size_t>(x)] == v) out.push_back(cycle_through(s, x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t tree_count(int n) {
    std::uint64_t r = 1;
    for (int i = 1; i < n; ++i) r *= static_cast<std::uint64_t>(n + 1);
    return r;
}

void for_each_code(int n, const std::function<void(const Code&)>& fn) {
    Code c(static_cast<std::size_t>(std::max(n - 1, 0)), 0);
    for (;;) {
        fn(c);
        int k = static_cast<int>(c.size()) - 1;
        while (k >= 0 && c[static_cast<std::size_t>(k)] == n) c[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) return;
        ++c[static_cast<std::size_t>(k)];
    }
}

void for_each_tree(int n, const std::function<void(const RootedTree&)>& fn, int bound) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    if (n > bound)
        throw Error(Errc::BoundExceeded, "enumeration limited to n <= " + std::to_string(bound));
    for_each_code(n, [&](const Code& c) { fn(dandelion_decode(c)); });
}

std::vector<RootedTree> enumerate_trees(int n, int bound) {
    std::vector<RootedTree> out;
    if (n >= 1 && n <= bound) out.reserve(tree_count(n));
    for_each_tree(n, [&](const RootedTree& t) { out.push_back(t); }, bound);
    return out;
}

Code random_code(int n, Rng& rng) {
    Code c(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (auto& x : c) x = rng.uniform(0, n);
    return c;
}

RootedTree random_tree(int n, Rng& rng) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    return dandelion_decode(random_code(n, rng));
}

RootedTree random_tree(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_tree(n, rng);
}

RootedTree reverse_path(const RootedTree& t) {
    std::vector<int> p = path(t, 1);
    std::vector<int> s = t.table();
    // p = (1, x1, ..., xk, 0); rewire so the interior runs xk, ..., x1.
    std::reverse(p.begin() + 1, p.end() - 1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) s[static_cast<std::size_t>(p[i])] = p[i + 1];
    return RootedTree::from_table(std::move(s));
}

std::string format_tree(const FunctionalDigraph& d) {
    std::string out;
    for (int v = 1; v <= d.n(); ++v) {
        if (v > 1) out += ' ';
        out += std::to_string(d.succ(v));
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view text, char sep) {
    std::vector<int> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    };
    skip_ws();
    if (i == text.size()) return out;
    for (;;) {
        skip_ws();
        int value = 0;
        const char* first = text.data() + i;
        const char* last = text.data() + text.size();
        if (first != last && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first)
            throw Error(Errc::InvalidInput, "expected an integer in \"" + std::string(text) + "\"");
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - text.data());
        skip_ws();
        if (i == text.size()) return out;
        if (sep != ' ') {
            if (text[i] != sep)
                throw Error(Errc::InvalidInput, "unexpected character in \"" + std::string(text) + "\"");
            ++i;
        }
    }
}

FunctionalDigraph parse_digraph(std::string_view text) { return FunctionalDigraph(parse_int_list(text, ' ')); }

RootedTree parse_tree(std::string_view text) { return validate_tree(parse_digraph(text)); }

std::string format_code(const Code& c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out;
}

Code parse_code(std::string_view text) { return parse_int_list(text, ','); }

std::string format_cycle(const Cycle& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(c[i]);
    }
    return out + ")";
}

void check_code(const Code& c, int n) {
    if (n < 1 || static_cast<int>(c.size()) != n - 1)
        throw Error(Errc::InvalidInput, "code length " + std::to_string(c.size()) + " does not match n=" +
                                            std::to_string(n));
    for (int x : c)
        if (x < 0 || x > n)
            throw Error(Errc::InvalidInput, "code entry " + std::to_string(x) + " out of range 0.." +
                                                std::to_string(n));
}

}  // namespace treecodex
