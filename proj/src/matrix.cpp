#include "treecodex/matrix.hpp"

#include <bit>
#include <unordered_map>

namespace treecodex::poly {

std::string var_name(const Var& v) {
    auto idx = [](int k) { return k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k); };
    switch (v.kind) {
        case Var::b: return "b" + idx(v.i);
        case Var::B: return "B" + idx(v.i);
        case Var::lambda: return "L";
        case Var::a: return "a" + std::to_string(v.i) + "_" + std::to_string(v.j);
    }
    return "?";
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [_, e] : f) d += e;
    return d;
}

bool MonomialOrder::operator()(const Monomial& x, const Monomial& y) const {
    std::size_t k = 0;
    for (; k < x.f.size() && k < y.f.size(); ++k) {
        const auto& [vx, ex] = x.f[k];
        const auto& [vy, ey] = y.f[k];
        if (vx != vy) return vx < vy;  // x has a positive exponent where y has none
        if (ex != ey) return ex > ey;
    }
    return k < x.f.size() && k == y.f.size();
}

Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial out;
    out.f.reserve(x.f.size() + y.f.size());
    std::size_t i = 0, j = 0;
    while (i < x.f.size() || j < y.f.size()) {
        if (j == y.f.size() || (i < x.f.size() && x.f[i].first < y.f[j].first)) {
            out.f.push_back(x.f[i++]);
        } else if (i == x.f.size() || y.f[j].first < x.f[i].first) {
            out.f.push_back(y.f[j++]);
        } else {
            out.f.emplace_back(x.f[i].first, x.f[i].second + y.f[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

MultiPoly::MultiPoly(long long c) {
    if (c != 0) terms_.emplace(Monomial{}, Int(c));
}

MultiPoly::MultiPoly(const Var& v, long long c) {
    if (c != 0) terms_.emplace(Monomial{{{v, 1}}}, Int(c));
}

Int MultiPoly::coefficient_sum() const {
    Int s = 0;
    for (const auto& [_, c] : terms_) s += c;
    return s;
}

void MultiPoly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [_, c] : r.terms_) c = -c;
    return r;
}

MultiPoly operator*(const MultiPoly& x, const MultiPoly& y) {
    MultiPoly r;
    for (const auto& [mx, cx] : x.terms_)
        for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw Error(Errc::InvalidInput, "negative exponent");
    MultiPoly r = 1;
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
}

MultiPoly MultiPoly::substitute(const Var& v, const MultiPoly& value) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
        Monomial rest;
        int e = 0;
        for (const auto& fe : m.f) {
            if (fe.first == v) e = fe.second;
            else rest.f.push_back(fe);
        }
        MultiPoly term;
        term.add_term(rest, c);
        r += e ? term * value.pow(e) : term;
    }
    return r;
}

Int MultiPoly::evaluate(const std::map<Var, Int>& point) const {
    Int total = 0;
    for (const auto& [m, c] : terms_) {
        Int t = c;
        for (const auto& [v, e] : m.f) {
            auto it = point.find(v);
            if (it == point.end()) throw Error(Errc::InvalidInput, "unbound variable " + var_name(v));
            t *= boost::multiprecision::pow(it->second, static_cast<unsigned>(e));
        }
        total += t;
    }
    return total;
}

std::vector<Var> MultiPoly::variables() const {
    std::map<Var, int> seen;
    for (const auto& [m, _] : terms_)
        for (const auto& [v, e] : m.f) seen[v] = e;
    std::vector<Var> out;
    for (const auto& [v, _] : seen) out.push_back(v);
    return out;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Int mag = c < 0 ? Int(-c) : c;
        if (first) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        first = false;
        std::string factors;
        for (const auto& [v, e] : m.f) {
            if (!factors.empty()) factors += '*';
            factors += var_name(v);
            if (e > 1) factors += "^" + std::to_string(e);
        }
        if (factors.empty()) out += mag.str();
        else if (mag == 1) out += factors;
        else out += mag.str() + "*" + factors;
    }
    return out;
}

SymMatrix::SymMatrix(int size, int origin)
    : size_(size), origin_(origin), cells_(static_cast<std::size_t>(size * size)) {
    if (size < 0) throw Error(Errc::InvalidInput, "negative matrix size");
}

SymMatrix SymMatrix::reduced() const {
    if (size_ < 1) throw Error(Errc::InvalidInput, "nothing to reduce");
    SymMatrix r(size_ - 1, origin_ + 1);
    for (int i = origin_ + 1; i < origin_ + size_; ++i)
        for (int j = origin_ + 1; j < origin_ + size_; ++j) r.at(i, j) = at(i, j);
    return r;
}

void SymMatrix::row_sub(int r, int s) {
    for (int c = origin_; c < origin_ + size_; ++c) at(r, c) -= at(s, c);
}

void SymMatrix::col_add(int d, int e) {
    for (int r = origin_; r < origin_ + size_; ++r) at(r, d) += at(r, e);
}

bool SymMatrix::upper_triangular() const {
    for (int r = origin_; r < origin_ + size_; ++r)
        for (int c = origin_; c < r; ++c)
            if (!at(r, c).is_zero()) return false;
    return true;
}

MultiPoly edge_weight(int i, int j, Weighting w) {
    if (w == Weighting::Ucsd && j > i) return MultiPoly(Var::av(i, j));
    return MultiPoly(Var::bv(j));
}

SymMatrix laplacian(int n, Weighting w) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    SymMatrix m(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            MultiPoly wt = edge_weight(i, j, w);
            m.at(i, i) += wt;
            m.at(i, j) -= wt;
        }
    }
    return m;
}

MultiPoly det(const SymMatrix& m, int bound) {
    const int size = m.size();
    if (size > bound)
        throw Error(Errc::BoundExceeded, "determinant limited to size " + std::to_string(bound));
    if (size == 0) return 1;
    const int o = m.origin();
    // minor[mask]: determinant of the rows after the first popcount(mask),
    // restricted to the columns outside mask.
    std::unordered_map<std::uint32_t, MultiPoly> memo;
    const std::uint32_t full = (std::uint32_t{1} << size) - 1;
    auto rec = [&](auto& self, std::uint32_t mask) -> MultiPoly {
        if (mask == full) return 1;
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        const int row = std::popcount(mask);
        MultiPoly sum;
        int pos = 0;
        for (int c = 0; c < size; ++c) {
            if (mask & (std::uint32_t{1} << c)) continue;
            const MultiPoly& e = m.at(o + row, o + c);
            if (!e.is_zero()) {
                MultiPoly t = e * self(self, mask | (std::uint32_t{1} << c));
                if (pos % 2) sum -= t;
                else sum += t;
            }
            ++pos;
        }
        memo.emplace(mask, sum);
        return sum;
    };
    return rec(rec, 0);
}

Int det_bareiss(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<std::vector<Int>> evaluate(const SymMatrix& m, const std::map<Var, Int>& point) {
    std::vector<std::vector<Int>> out(static_cast<std::size_t>(m.size()),
                                      std::vector<Int>(static_cast<std::size_t>(m.size())));
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c)
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                m.at(m.origin() + r, m.origin() + c).evaluate(point);
    return out;
}

MultiPoly tree_weight(const RootedTree& t, Weighting w) {
    MultiPoly r = 1;
    for (int v = 1; v <= t.n(); ++v) r = r * edge_weight(v, t.succ(v), w);
    return r;
}

MultiPoly tree_weight_sum(int n, Weighting w, int bound) {
    MultiPoly sum;
    for_each_tree(n, [&](const RootedTree& t) { sum += tree_weight(t, w); }, bound);
    return sum;
}

bool mtt_check(int n, Weighting w) { return det(laplacian(n, w).reduced()) == tree_weight_sum(n, w); }

MultiPoly ucsd_product(int n) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    MultiPoly r(Var::bv(0));
    for (int i = 2; i <= n; ++i) {
        MultiPoly f;
        for (int k = 0; k < i; ++k) f += MultiPoly(Var::bv(k));
        for (int j = i; j <= n; ++j) f += MultiPoly(Var::av(i - 1, j));
        r = r * f;
    }
    return r;
}

SymMatrix reduce_chain(int n, Weighting w) {
    SymMatrix m = laplacian(n, w).reduced();
    for (int r = n; r >= 2; --r) {
        m.row_sub(r, r - 1);
        m.col_add(r - 1, r);
    }
    return m;
}

std::map<Var, Int> random_point(int n, Weighting w, Rng& rng) {
    std::map<Var, Int> point;
    auto draw = [&] { return Int(1 + rng.below((std::uint64_t{1} << 31) - 1)); };
    for (int j = 0; j <= n; ++j) point[Var::bv(j)] = draw();
    if (w == Weighting::Ucsd)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) point[Var::av(i, j)] = draw();
    return point;
}

std::vector<DegreeRow> code_stats(const WeightedCode& tokens) {
    check_weighted(tokens);
    const int n = static_cast<int>(tokens.size());
    std::vector<DegreeRow> rows(static_cast<std::size_t>(n + 1));
    for (const auto& t : tokens) {
        if (t.ascent) {
            ++rows[static_cast<std::size_t>(t.j)].in_ascending;
            ++rows[static_cast<std::size_t>(t.i)].out_ascending;
        } else {
            ++rows[static_cast<std::size_t>(t.j)].in_descending;
        }
    }
    for (int v = 1; v <= n; ++v) {
        auto& r = rows[static_cast<std::size_t>(v)];
        r.out_descending = 1 - r.out_ascending;
    }
    return rows;
}

std::vector<DegreeRow> edge_stats(const RootedTree& t) {
    std::vector<DegreeRow> rows(static_cast<std::size_t>(t.n() + 1));
    for (int v = 1; v <= t.n(); ++v) {
        const int s = t.succ(v);
        if (s > v) {
            ++rows[static_cast<std::size_t>(v)].out_ascending;
            ++rows[static_cast<std::size_t>(s)].in_ascending;
        } else {
            ++rows[static_cast<std::size_t>(v)].out_descending;
            ++rows[static_cast<std::size_t>(s)].in_descending;
        }
    }
    return rows;
}

}  // namespace treecodex::poly
