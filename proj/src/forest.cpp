#include "treecodex/forest.hpp"

#include "treecodex/blob.hpp"
#include "treecodex/dandelion.hpp"
#include "treecodex/happy.hpp"

namespace treecodex {

namespace {

// Root -r is stored as 1-r so the tree codecs see labels <= 0 as roots.
int to_inner(int x) { return x > 0 ? x : x + 1; }
int to_outer(int x) { return x > 0 ? x : x - 1; }

bool valid_target(int x, int k, int m) { return (x >= -k && x <= -1) || (x >= 1 && x <= m); }

}  // namespace

RootedForest::RootedForest(int k, const std::vector<int>& succ) : k_(k), succ_(succ) {
    const int m = static_cast<int>(succ.size());
    if (k < 1) throw Error(Errc::InvalidForest, "a forest needs at least one root");
    if (m < 1) throw Error(Errc::InvalidForest, "a forest needs at least one non-root vertex");
    for (int x : succ)
        if (!valid_target(x, k, m))
            throw Error(Errc::InvalidForest, "successor " + std::to_string(x) + " out of range");
    std::vector<char> state(static_cast<std::size_t>(m) + 1, 0);  // 1 on walk, 2 reaches a root
    for (int v = 1; v <= m; ++v) {
        int x = v;
        while (x > 0 && state[static_cast<std::size_t>(x)] == 0) {
            state[static_cast<std::size_t>(x)] = 1;
            x = succ[static_cast<std::size_t>(x - 1)];
        }
        if (x > 0 && state[static_cast<std::size_t>(x)] == 1)
            throw Error(Errc::InvalidForest, "vertex " + std::to_string(x) + " lies on a cycle");
        for (int y = v; y > 0 && state[static_cast<std::size_t>(y)] == 1; y = succ[static_cast<std::size_t>(y - 1)])
            state[static_cast<std::size_t>(y)] = 2;
    }
}

ForestCode forest_encode(const RootedForest& f, ForestCodec codec) {
    std::vector<int> s(static_cast<std::size_t>(f.m()) + 1, 0);
    for (int v = 1; v <= f.m(); ++v) s[static_cast<std::size_t>(v)] = to_inner(f.succ(v));
    Code code;
    int root = 0;
    switch (codec) {
        case ForestCodec::Blob: root = detail::blob_encode_table(s, code); break;
        case ForestCodec::Happy: root = detail::happy_encode_table(s, code); break;
        case ForestCodec::Dandelion: root = detail::dandelion_encode_table(s, code); break;
    }
    ForestCode out{f.k(), to_outer(root), {}};
    for (int x : code) out.entries.push_back(to_outer(x));
    return out;
}

RootedForest forest_decode(const ForestCode& c, ForestCodec codec) {
    const int m = static_cast<int>(c.entries.size()) + 1;
    if (c.k < 1) throw Error(Errc::MalformedCode, "k must be positive");
    if (c.root < -c.k || c.root > -1)
        throw Error(Errc::MalformedCode, "root choice " + std::to_string(c.root) + " is not a root");
    Code code;
    for (int x : c.entries) {
        if (!valid_target(x, c.k, m)) throw Error(Errc::MalformedCode, "code entry " + std::to_string(x) + " out of range");
        code.push_back(to_inner(x));
    }
    std::vector<int> s;
    switch (codec) {
        case ForestCodec::Blob: s = detail::blob_decode_table(to_inner(c.root), code); break;
        case ForestCodec::Happy: s = detail::happy_decode_table(to_inner(c.root), code); break;
        case ForestCodec::Dandelion: s = detail::dandelion_decode_table(to_inner(c.root), code); break;
    }
    std::vector<int> succ;
    for (int v = 1; v <= m; ++v) succ.push_back(to_outer(s[static_cast<std::size_t>(v)]));
    return RootedForest(c.k, succ);
}

std::uint64_t forest_count(int k, int m) {
    std::uint64_t r = static_cast<std::uint64_t>(k);
    for (int i = 1; i < m; ++i) r *= static_cast<std::uint64_t>(m + k);
    return r;
}

void for_each_forest(int k, int m, const std::function<void(const RootedForest&)>& fn) {
    if (k < 1 || m < 1) throw Error(Errc::InvalidInput, "k and m must be positive");
    if (k + m - 1 > kEnumerateBound)
        throw Error(Errc::BoundExceeded, "enumeration limited to k+m-1 <= " + std::to_string(kEnumerateBound));
    ForestCode c{k, -1, std::vector<int>(static_cast<std::size_t>(m - 1), -k)};
    auto next = [&](int x) { return x == -1 ? 1 : x + 1; };
    for (;;) {
        fn(forest_decode(c, ForestCodec::Dandelion));
        int i = m - 2;
        while (i >= 0 && c.entries[static_cast<std::size_t>(i)] == m) c.entries[static_cast<std::size_t>(i--)] = -k;
        if (i >= 0) {
            c.entries[static_cast<std::size_t>(i)] = next(c.entries[static_cast<std::size_t>(i)]);
            continue;
        }
        if (c.root == -k) return;
        --c.root;
    }
}

poly::MultiPoly forest_weight_sum(int k, int m) {
    poly::MultiPoly sum;
    for_each_forest(k, m, [&](const RootedForest& f) {
        poly::MultiPoly w = 1;
        for (int v = 1; v <= m; ++v) w = w * poly::MultiPoly(poly::Var::bv(f.succ(v)));
        sum += w;
    });
    return sum;
}

poly::MultiPoly forest_determinant(int k, int m) {
    poly::MultiPoly roots;
    for (int r = 1; r <= k; ++r) roots += poly::MultiPoly(poly::Var::bv(-r));
    return poly::det(poly::laplacian(m, poly::Weighting::UniformB).reduced()).substitute(poly::Var::bv(0), roots);
}

std::string format_forest(const RootedForest& f) {
    std::string out = "k=" + std::to_string(f.k()) + ";";
    for (int x : f.successors()) out += " " + std::to_string(x);
    return out;
}

RootedForest parse_forest(std::string_view text) {
    auto semi = text.find(';');
    auto head = text.substr(0, semi);
    while (!head.empty() && head.front() == ' ') head.remove_prefix(1);
    if (semi == std::string_view::npos || head.substr(0, 2) != "k=")
        throw Error(Errc::InvalidInput, "expected \"k=K; s1 ... sm\"");
    auto k = parse_int_list(head.substr(2), ' ');
    if (k.size() != 1) throw Error(Errc::InvalidInput, "expected a single root count");
    return RootedForest(k[0], parse_int_list(text.substr(semi + 1), ' '));
}

std::string format_forest_code(const ForestCode& c) {
    std::string out = std::to_string(c.root) + " |";
    if (!c.entries.empty()) out += " " + format_code(c.entries);
    return out;
}

ForestCode parse_forest_code(std::string_view text, int k) {
    auto bar = text.find('|');
    if (bar == std::string_view::npos) throw Error(Errc::MalformedCode, "expected \"r | c1,...\"");
    auto root = parse_int_list(text.substr(0, bar), ' ');
    if (root.size() != 1) throw Error(Errc::MalformedCode, "expected a single root choice");
    return {k, root[0], parse_code(text.substr(bar + 1))};
}

}  // namespace treecodex
