#include "treecodex/blob.hpp"

#include <string>

namespace treecodex {

namespace detail {

// The blob is always {v+1..n}, so path(v) meets it exactly when some proper
// ancestor of v in the original tree exceeds v. above[v] caches that maximum.
int blob_encode_table(const std::vector<int>& s, Code& code) {
    const int n = static_cast<int>(s.size()) - 1;
    std::vector<int> above(s.size(), -1);
    std::vector<int> stack;
    for (int v = 1; v <= n; ++v) {
        int x = v;
        while (x > 0 && above[static_cast<std::size_t>(x)] < 0) {
            stack.push_back(x);
            x = s[static_cast<std::size_t>(x)];
        }
        int best = x > 0 ? std::max(x, above[static_cast<std::size_t>(x)]) : 0;
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            above[static_cast<std::size_t>(y)] = best;
            best = std::max(best, y);
        }
    }

    code.assign(static_cast<std::size_t>(n - 1), 0);
    int blob_succ = s[static_cast<std::size_t>(n)];
    for (int v = n - 1; v >= 1; --v) {
        auto& slot = code[static_cast<std::size_t>(v - 1)];
        if (above[static_cast<std::size_t>(v)] > v) {
            slot = s[static_cast<std::size_t>(v)];
        } else {
            slot = blob_succ;
            blob_succ = s[static_cast<std::size_t>(v)];
        }
    }
    return blob_succ;
}

// Vertices 1..i-1 already carry their final edges. A union-find over those
// edges jumps from c to the first undecided vertex (or root) on its path.
std::vector<int> blob_decode_table(int root, const Code& code) {
    const int n = static_cast<int>(code.size()) + 1;
    std::vector<int> s(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> jump(static_cast<std::size_t>(n) + 1);
    for (int v = 0; v <= n; ++v) jump[static_cast<std::size_t>(v)] = v;

    auto find = [&](int x) {
        while (x > 0 && jump[static_cast<std::size_t>(x)] != x) {
            int up = jump[static_cast<std::size_t>(x)];
            if (up > 0) jump[static_cast<std::size_t>(x)] = jump[static_cast<std::size_t>(up)];
            x = up;
        }
        return x;
    };

    int blob_succ = root;
    for (int i = 1; i < n; ++i) {
        int c = code[static_cast<std::size_t>(i - 1)];
        if (c > 0 && find(c) > i) {
            s[static_cast<std::size_t>(i)] = c;
        } else {
            s[static_cast<std::size_t>(i)] = blob_succ;
            blob_succ = c;
        }
        jump[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)];
    }
    s[static_cast<std::size_t>(n)] = blob_succ;
    return s;
}

}  // namespace detail

Code blob_encode(const RootedTree& t) {
    Code code;
    detail::blob_encode_table(t.table(), code);
    return code;
}

RootedTree blob_decode(const Code& code) {
    check_code(code, static_cast<int>(code.size()) + 1);
    return RootedTree::from_table(detail::blob_decode_table(0, code));
}

WeightedCode blob_encode_weighted(const RootedTree& t) {
    Code code = blob_encode(t);
    WeightedCode out{WeightedToken::b(0)};
    for (std::size_t k = 0; k < code.size(); ++k) {
        int tail = static_cast<int>(k) + 1;
        int head = code[k];
        out.push_back(head > tail ? WeightedToken::a(tail, head) : WeightedToken::b(head));
    }
    return out;
}

void check_weighted(const WeightedCode& tokens) {
    const int n = static_cast<int>(tokens.size());
    if (n < 1) throw Error(Errc::MalformedToken, "empty weighted code");
    if (tokens[0].ascent || tokens[0].j != 0) throw Error(Errc::MalformedToken, "first token must be b0");
    for (int k = 2; k <= n; ++k) {
        const auto& tok = tokens[static_cast<std::size_t>(k - 1)];
        bool ok = tok.ascent ? (tok.i == k - 1 && tok.j >= k && tok.j <= n) : (tok.j >= 0 && tok.j <= k - 1);
        if (!ok)
            throw Error(Errc::MalformedToken, "token " + format_weighted({tok}) + " not allowed in position " +
                                                  std::to_string(k));
    }
}

RootedTree blob_decode_weighted(const WeightedCode& tokens) {
    check_weighted(tokens);
    Code code;
    for (std::size_t k = 1; k < tokens.size(); ++k) code.push_back(tokens[k].j);
    return blob_decode(code);
}

std::string format_weighted(const WeightedCode& tokens) {
    std::string out;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (k) out += ',';
        const auto& t = tokens[k];
        out += t.ascent ? "a" + std::to_string(t.i) + "_" + std::to_string(t.j) : "b" + std::to_string(t.j);
    }
    return out;
}

WeightedCode parse_weighted(std::string_view text) {
    WeightedCode out;
    auto bad = [&](std::string_view tok) {
        return Error(Errc::MalformedToken, "cannot read token \"" + std::string(tok) + "\"");
    };
    auto number = [&](std::string_view digits, std::string_view tok) {
        if (digits.empty() || digits.size() > 9) throw bad(tok);
        int v = 0;
        for (char ch : digits) {
            if (ch < '0' || ch > '9') throw bad(tok);
            v = v * 10 + (ch - '0');
        }
        return v;
    };
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(start, end - start);
        if (tok.size() < 2) throw bad(tok);
        if (tok[0] == 'b') {
            out.push_back(WeightedToken::b(number(tok.substr(1), tok)));
        } else if (tok[0] == 'a') {
            std::size_t us = tok.find('_');
            if (us == std::string_view::npos) throw bad(tok);
            out.push_back(WeightedToken::a(number(tok.substr(1, us - 1), tok), number(tok.substr(us + 1), tok)));
        } else {
            throw bad(tok);
        }
        start = end + 1;
    }
    return out;
}

}  // namespace treecodex
