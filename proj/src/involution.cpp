#include "treecodex/involution.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace treecodex::inv {

TermMatrix::TermMatrix(int lo, int hi) : lo_(lo), hi_(hi), cells_(static_cast<std::size_t>(size() * size())) {}

bool TermMatrix::contains(int r, int c, const Term& t) const {
    const Entry& e = at(r, c);
    return std::find(e.begin(), e.end(), t) != e.end();
}

void TermMatrix::check_distinct() const {
    for (const Entry& e : cells_) {
        std::set<Term> seen(e.begin(), e.end());
        if (seen.size() != e.size()) throw Error(Errc::PreconditionViolated, "entry repeats a signed symbol");
    }
}

TermMatrix mtt_matrix(int n, bool with_lambda) {
    TermMatrix m(with_lambda ? 0 : 1, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i == j) {
                for (int k = 0; k <= n; ++k) m.at(i, i).push_back({1, {SymKind::B, k}});
                m.at(i, i).push_back({-1, {SymKind::b, i}});
            } else {
                m.at(i, j).push_back({-1, {SymKind::b, j}});
            }
        }
    }
    if (with_lambda) {
        m.at(0, 0) = {{1, {SymKind::lambda, 0}}, {-1, {SymKind::b, 0}}};
        for (int j = 1; j <= n; ++j) m.at(0, j) = {{-1, {SymKind::b, j}}};
        for (int i = 1; i <= n; ++i) m.at(i, 0) = {{-1, {SymKind::b, 0}}};
    }
    return m;
}

TermMatrix row_sub(const TermMatrix& x, int r, int s) {
    TermMatrix y = x;
    for (int c = x.lo(); c <= x.hi(); ++c)
        for (const Term& t : x.at(s, c)) y.at(r, c).push_back(t.negated());
    y.check_distinct();
    return y;
}

TermMatrix col_add(const TermMatrix& x, int d, int e) {
    TermMatrix y = x;
    for (int k = x.lo(); k <= x.hi(); ++k)
        for (const Term& t : x.at(k, e)) y.at(k, d).push_back(t);
    y.check_distinct();
    return y;
}

TermMatrix cancel_row(const TermMatrix& y, int r) {
    TermMatrix z = y;
    for (int c = y.lo(); c <= y.hi(); ++c) {
        Entry kept;
        for (const Term& t : y.at(r, c))
            if (!y.contains(r, c, t.negated())) kept.push_back(t);
        z.at(r, c) = kept;
    }
    return z;
}

int permutation_parity(const ArrayElem& a) {
    const std::size_t k = a.cols.size();
    std::vector<char> seen(k, 0);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(a.cols[j] - a.lo)) seen[j] = 1;
    }
    return (k - cycles) % 2 ? -1 : 1;
}

int intrinsic_sign(const Element& e) {
    if (const auto* a = std::get_if<ArrayElem>(&e)) {
        int s = permutation_parity(*a);
        for (const Term& t : a->terms) s *= t.sign;
        return s;
    }
    if (const auto* m = std::get_if<MonoElem>(&e)) return m->sign;
    return 1;
}

namespace {

std::string sym_text(const Sym& s) {
    switch (s.kind) {
        case SymKind::b: return "b" + std::to_string(s.index);
        case SymKind::B: return "B" + std::to_string(s.index);
        case SymKind::lambda: return "L";
    }
    return "?";
}

std::string term_text(const Term& t) { return (t.sign < 0 ? "-" : "+") + sym_text(t.sym); }

int row_of_col(const ArrayElem& a, int c) {
    for (std::size_t i = 0; i < a.cols.size(); ++i)
        if (a.cols[i] == c) return a.lo + static_cast<int>(i);
    throw Error(Errc::PreconditionViolated, "array has no entry in column " + std::to_string(c));
}

std::size_t slot(const ArrayElem& a, int row) { return static_cast<std::size_t>(row - a.lo); }

}  // namespace

std::string render(const Element& e) {
    if (const auto* t = std::get_if<TreeElem>(&e)) {
        std::string out = "tree(";
        const int n = static_cast<int>(t->x.size()) - 1;
        for (int k = 1; k <= n; ++k) {
            if (k > 1) out += ' ';
            if (k == t->m + 1) out += "| ";
            out += std::to_string(t->x[static_cast<std::size_t>(k)]);
        }
        return out + ")";
    }
    if (const auto* a = std::get_if<ArrayElem>(&e)) {
        std::string out;
        for (std::size_t i = 0; i < a->cols.size(); ++i) {
            const int row = a->lo + static_cast<int>(i);
            const Term& t = a->terms[i];
            const bool diag = a->cols[i] == row && !(t.sign < 0 && t.sym.kind == SymKind::b);
            if (i) out += ' ';
            out += "(" + std::to_string(row) + "," + std::to_string(a->cols[i]) + "," + term_text(t) + "," +
                   (diag ? "d" : "o") + ")";
        }
        return out;
    }
    const auto& m = std::get<MonoElem>(e);
    if (m.syms.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.syms.size(); ++i) {
        if (i) out += '*';
        out += sym_text(m.syms[i]);
    }
    return out;
}

std::vector<int> array_graph(const GraphSpec& spec, const ArrayElem& a) {
    const int rows = spec.graph_rows();
    std::vector<int> s(static_cast<std::size_t>(rows) + 1, 0);
    for (int k = 1; k <= rows; ++k) {
        const Term& t = a.terms[slot(a, k)];
        s[static_cast<std::size_t>(k)] = (spec.dandelion && k > spec.m) ? 1 : spec.vertex(t.sym.index);
    }
    return s;
}

ArrayElem tree_to_array(const GraphSpec& spec, const TreeElem& t) {
    ArrayElem a;
    a.lo = spec.lambda_row ? 0 : 1;
    if (spec.lambda_row) {
        a.cols.push_back(0);
        a.terms.push_back({1, {SymKind::lambda, 0}});
    }
    for (int k = 1; k <= spec.n; ++k) {
        a.cols.push_back(k);
        a.terms.push_back({1, {spec.diag_kind, t.x[static_cast<std::size_t>(k)]}});
    }
    return a;
}

ArrayElem toggle_cycle(const GraphSpec& spec, const ArrayElem& a, const Cycle& cycle) {
    const std::vector<int> g = array_graph(spec, a);
    ArrayElem out = a;
    const int rows = spec.graph_rows();
    for (std::size_t l = 0; l < cycle.size(); ++l) {
        const int row = cycle[l];
        const int next = cycle[(l + 1) % cycle.size()];
        if (row < 1 || row > rows || g[static_cast<std::size_t>(row)] != next)
            throw Error(Errc::NotACycle, format_cycle(cycle) + " is not a cycle of the array's digraph");
        const bool weighted = spec.dandelion && row > spec.m;
        Term& t = out.terms[slot(a, row)];
        int& col = out.cols[slot(a, row)];
        if (t.sign > 0) {
            t = {-1, {weighted ? SymKind::B : SymKind::b, t.sym.index}};
            col = next;
        } else {
            t = {1, {spec.diag_kind, t.sym.index}};
            col = row;
        }
    }
    return out;
}

namespace {

Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

bool acyclic_table(const std::vector<int>& s) {
    return cycles_of(FunctionalDigraph(std::vector<int>(s.begin() + 1, s.end()))).empty();
}

std::vector<int> tree_graph(const GraphSpec& spec, const TreeElem& t) {
    const int rows = spec.graph_rows();
    std::vector<int> s(static_cast<std::size_t>(rows) + 1, 0);
    for (int k = 1; k <= rows; ++k)
        s[static_cast<std::size_t>(k)] =
            (spec.dandelion && k > spec.m) ? 1 : spec.vertex(t.x[static_cast<std::size_t>(k)]);
    return s;
}

Involution mtt_involution(std::string name, GraphSpec spec, Side tree_side) {
    return {std::move(name), [spec, tree_side](Side side, const Element& e) -> Step {
                if (const auto* t = std::get_if<TreeElem>(&e)) return {other(tree_side), tree_to_array(spec, *t)};
                const auto& a = std::get<ArrayElem>(e);
                if (side == tree_side) throw Error(Errc::PreconditionViolated, "array on the tree side");
                const std::vector<int> g = array_graph(spec, a);
                std::vector<Cycle> cycles = cycles_of(FunctionalDigraph(std::vector<int>(g.begin() + 1, g.end())));
                if (cycles.empty()) {
                    TreeElem t;
                    t.m = spec.m;
                    t.x.assign(static_cast<std::size_t>(spec.n) + 1, 0);
                    for (int k = 1; k <= spec.n; ++k) {
                        const Term& term = a.terms[slot(a, k)];
                        if (term.sign < 0 || a.cols[slot(a, k)] != k)
                            throw Error(Errc::PreconditionViolated, "acyclic array with an off-diagonal entry");
                        t.x[static_cast<std::size_t>(k)] = term.sym.index;
                    }
                    return {tree_side, t};
                }
                auto top = std::max_element(cycles.begin(), cycles.end(), [](const Cycle& p, const Cycle& q) {
                    return *std::max_element(p.begin(), p.end()) < *std::max_element(q.begin(), q.end());
                });
                return {side, toggle_cycle(spec, a, *top)};
            }};
}

// y = row_sub(x, r, s). Arrays whose row r entry came from the subtracted
// row trade places with a partner by swapping and negating rows r and s.
Involution row_op_involution(std::string name, std::shared_ptr<const TermMatrix> x, int r, int s) {
    return {std::move(name), [x, r, s](Side side, const Element& e) -> Step {
                if (side == Side::Left) return {Side::Right, e};
                ArrayElem a = std::get<ArrayElem>(e);
                const std::size_t ir = slot(a, r), is = slot(a, s);
                if (x->contains(r, a.cols[ir], a.terms[ir])) return {Side::Left, a};
                const int cr = a.cols[ir];
                const Term tr = a.terms[ir];
                a.cols[ir] = a.cols[is];
                a.terms[ir] = a.terms[is].negated();
                a.cols[is] = cr;
                a.terms[is] = tr.negated();
                return {Side::Right, a};
            }};
}

// Left: arrays of y. Right: arrays of cancel_row(y, r).
Involution cancel_involution(std::string name, std::shared_ptr<const TermMatrix> y, int r) {
    return {std::move(name), [y, r](Side side, const Element& e) -> Step {
                if (side == Side::Right) return {Side::Left, e};
                ArrayElem a = std::get<ArrayElem>(e);
                const std::size_t ir = slot(a, r);
                if (y->contains(r, a.cols[ir], a.terms[ir].negated())) {
                    a.terms[ir] = a.terms[ir].negated();
                    return {Side::Left, a};
                }
                return {Side::Right, a};
            }};
}

// y = col_add(x, d, e). Arrays whose column d entry came from column e
// trade places with a partner by swapping columns d and e.
Involution col_op_involution(std::string name, std::shared_ptr<const TermMatrix> x, int d, int e_col) {
    return {std::move(name), [x, d, e_col](Side side, const Element& e) -> Step {
                if (side == Side::Left) return {Side::Right, e};
                ArrayElem a = std::get<ArrayElem>(e);
                const int k = row_of_col(a, d);
                if (x->contains(k, d, a.terms[slot(a, k)])) return {Side::Left, a};
                const int k2 = row_of_col(a, e_col);
                a.cols[slot(a, k)] = e_col;
                a.cols[slot(a, k2)] = d;
                return {Side::Right, a};
            }};
}

Stage tree_stage(std::string id, GraphSpec spec) {
    Stage st;
    st.id = std::move(id);
    st.kind = StageKind::Trees;
    st.spec = spec;
    return st;
}

Stage array_stage(std::string id, std::shared_ptr<const TermMatrix> m, bool lambda_col0 = false) {
    Stage st;
    st.id = std::move(id);
    st.kind = StageKind::Arrays;
    st.matrix = std::move(m);
    st.lambda_col0 = lambda_col0;
    return st;
}

// All monomials of length len over the given kinds, in lexicographic order.
void for_each_word(int len, int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> w(static_cast<std::size_t>(len), 0);
    for (;;) {
        fn(w);
        int k = len - 1;
        while (k >= 0 && w[static_cast<std::size_t>(k)] == n) w[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) return;
        ++w[static_cast<std::size_t>(k)];
    }
}

bool all_kind(const std::vector<Sym>& syms, std::size_t from, SymKind kind, int n) {
    for (std::size_t i = from; i < syms.size(); ++i)
        if (syms[i].kind != kind || syms[i].index < 0 || syms[i].index > n) return false;
    return true;
}

// Monomials b0 x2..xn, the tail drawn from `kind`.
Stage code_stage(std::string id, int n, bool lead_b0, SymKind kind) {
    Stage st;
    st.id = std::move(id);
    st.kind = StageKind::Monos;
    const int len = lead_b0 ? n : n - 1;
    st.mono_member = [=](const MonoElem& m) {
        if (m.sign != 1 || static_cast<int>(m.syms.size()) != len) return false;
        if (lead_b0 && !(m.syms[0] == Sym{SymKind::b, 0})) return false;
        return all_kind(m.syms, lead_b0 ? 1 : 0, kind, n);
    };
    st.mono_all = [=](const std::function<void(const Element&)>& fn) {
        for_each_word(n - 1, n, [&](const std::vector<int>& w) {
            MonoElem m;
            if (lead_b0) m.syms.push_back({SymKind::b, 0});
            for (int j : w) m.syms.push_back({kind, j});
            fn(m);
        });
    };
    return st;
}

MonoElem code_mono(const Code& c, bool lead_b0, SymKind kind) {
    MonoElem m;
    if (lead_b0) m.syms.push_back({SymKind::b, 0});
    for (int j : c) m.syms.push_back({kind, j});
    return m;
}

Code mono_code(const Element& e, bool lead_b0) {
    const auto& m = std::get<MonoElem>(e);
    Code c;
    for (std::size_t i = lead_b0 ? 1 : 0; i < m.syms.size(); ++i) c.push_back(m.syms[i].index);
    return c;
}

std::string primed(const std::string& base, int i, bool prime) {
    return base + std::to_string(i) + (prime ? "'" : "");
}

}  // namespace

bool Stage::contains(const Element& e) const {
    switch (kind) {
        case StageKind::Trees: {
            const auto* t = std::get_if<TreeElem>(&e);
            if (!t || t->m != spec.m || static_cast<int>(t->x.size()) != spec.n + 1) return false;
            for (int k = 1; k <= spec.n; ++k)
                if (t->x[static_cast<std::size_t>(k)] < 0 || t->x[static_cast<std::size_t>(k)] > spec.n) return false;
            return acyclic_table(tree_graph(spec, *t));
        }
        case StageKind::Arrays: {
            const auto* a = std::get_if<ArrayElem>(&e);
            if (!a || a->lo != matrix->lo() || static_cast<int>(a->cols.size()) != matrix->size() ||
                a->terms.size() != a->cols.size())
                return false;
            std::vector<char> used(static_cast<std::size_t>(matrix->size()), 0);
            for (std::size_t i = 0; i < a->cols.size(); ++i) {
                const int row = a->lo + static_cast<int>(i);
                const int c = a->cols[i];
                if (c < matrix->lo() || c > matrix->hi() || used[static_cast<std::size_t>(c - a->lo)]) return false;
                used[static_cast<std::size_t>(c - a->lo)] = 1;
                if (!matrix->contains(row, c, a->terms[i])) return false;
                if (lambda_col0 && c == 0 && a->terms[i].sym.kind != SymKind::lambda) return false;
            }
            return true;
        }
        case StageKind::Monos: {
            const auto* m = std::get_if<MonoElem>(&e);
            return m && mono_member(*m);
        }
    }
    return false;
}

void Stage::for_each(const std::function<void(const Element&)>& fn) const {
    switch (kind) {
        case StageKind::Trees: {
            TreeElem t;
            t.m = spec.m;
            for_each_word(spec.n, spec.n, [&](const std::vector<int>& w) {
                t.x.assign(1, 0);
                t.x.insert(t.x.end(), w.begin(), w.end());
                if (contains(t)) fn(t);
            });
            return;
        }
        case StageKind::Arrays: {
            ArrayElem a;
            a.lo = matrix->lo();
            a.cols.assign(static_cast<std::size_t>(matrix->size()), 0);
            a.terms.assign(a.cols.size(), Term{});
            std::vector<char> used(a.cols.size(), 0);
            std::function<void(int)> rec = [&](int row) {
                if (row > matrix->hi()) {
                    fn(a);
                    return;
                }
                for (int c = matrix->lo(); c <= matrix->hi(); ++c) {
                    if (used[static_cast<std::size_t>(c - a.lo)]) continue;
                    used[static_cast<std::size_t>(c - a.lo)] = 1;
                    a.cols[slot(a, row)] = c;
                    for (const Term& t : matrix->at(row, c)) {
                        if (lambda_col0 && c == 0 && t.sym.kind != SymKind::lambda) continue;
                        a.terms[slot(a, row)] = t;
                        rec(row + 1);
                    }
                    used[static_cast<std::size_t>(c - a.lo)] = 0;
                }
            };
            rec(matrix->lo());
            return;
        }
        case StageKind::Monos: mono_all(fn); return;
    }
}

Pipeline happy_pipeline(int n) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    Pipeline p;
    p.name = "happy";
    p.n = n;
    const GraphSpec spec{n, n, n, false, SymKind::B, true};
    auto prev = std::make_shared<const TermMatrix>(mtt_matrix(n, true));
    p.stages.push_back(tree_stage("A0", spec));
    p.stages.push_back(array_stage("A0'", prev, true));
    p.invs.push_back(mtt_involution("phi0", spec, Side::Left));

    for (int i = 1; i <= n; ++i) {
        // phi'_{i-1} pairs M'_{i-1} with M_i, where row n-i+1 loses row 0.
        const int r = n - i + 1;
        auto mi = std::make_shared<const TermMatrix>(row_sub(*prev, r, 0));
        p.stages.push_back(array_stage(primed("A", i, false), mi, true));
        p.invs.push_back(row_op_involution(primed("phi", i - 1, true), prev, r, 0));
        auto mi2 = std::make_shared<const TermMatrix>(cancel_row(*mi, r));
        p.stages.push_back(array_stage(primed("A", i, true), mi2, true));
        p.invs.push_back(cancel_involution(primed("phi", i, false), mi, r));
        prev = mi2;
    }

    // A_{n+1}: the signed monomials of the lambda coefficient, read by column.
    Stage last;
    last.id = primed("A", n + 1, false);
    last.kind = StageKind::Monos;
    last.mono_member = [n](const MonoElem& m) {
        if (static_cast<int>(m.syms.size()) != n) return false;
        int lower = 0;
        for (int k = 1; k <= n; ++k) {
            const Sym& s = m.syms[static_cast<std::size_t>(k - 1)];
            if (s.index < 0 || s.index > n) return false;
            if (s.kind == SymKind::b) {
                if (s.index != k) return false;
                ++lower;
            } else if (s.kind != SymKind::B) {
                return false;
            }
        }
        return lower <= 1 && m.sign == (lower ? -1 : 1);
    };
    last.mono_all = [n](const std::function<void(const Element&)>& fn) {
        for_each_word(n, n, [&](const std::vector<int>& w) {
            MonoElem m;
            for (int j : w) m.syms.push_back({SymKind::B, j});
            fn(m);
        });
        for (int j = 1; j <= n; ++j) {
            for_each_word(n - 1, n, [&](const std::vector<int>& w) {
                MonoElem m;
                m.sign = -1;
                for (int k = 1, at = 0; k <= n; ++k)
                    m.syms.push_back(k == j ? Sym{SymKind::b, j} : Sym{SymKind::B, w[static_cast<std::size_t>(at++)]});
                fn(m);
            });
        }
    };
    p.stages.push_back(last);
    p.invs.push_back({primed("phi", n, true), [n](Side side, const Element& e) -> Step {
                          if (side == Side::Left) {
                              const auto& a = std::get<ArrayElem>(e);
                              MonoElem m;
                              m.sign = intrinsic_sign(a);
                              for (int c = 1; c <= n; ++c) m.syms.push_back(a.terms[slot(a, row_of_col(a, c))].sym);
                              return {Side::Right, m};
                          }
                          const auto& m = std::get<MonoElem>(e);
                          ArrayElem a;
                          a.lo = 0;
                          a.cols.assign(static_cast<std::size_t>(n) + 1, 0);
                          a.terms.assign(a.cols.size(), Term{1, {SymKind::lambda, 0}});
                          for (int c = 1; c <= n; ++c) {
                              const Sym& s = m.syms[static_cast<std::size_t>(c - 1)];
                              if (s.kind == SymKind::b) {
                                  a.cols[0] = c;
                                  a.terms[0] = {-1, s};
                                  a.cols[static_cast<std::size_t>(c)] = 0;
                                  a.terms[static_cast<std::size_t>(c)] = {-1, {SymKind::lambda, 0}};
                              } else {
                                  a.cols[static_cast<std::size_t>(c)] = c;
                                  a.terms[static_cast<std::size_t>(c)] = {1, s};
                              }
                          }
                          return {Side::Left, a};
                      }});

    p.stages.push_back(code_stage(primed("A", n + 1, true), n, true, SymKind::B));
    p.invs.push_back({primed("phi", n + 1, false), [](Side side, const Element& e) -> Step {
                          MonoElem m = std::get<MonoElem>(e);
                          if (side == Side::Right) {
                              m.syms[0] = {SymKind::B, 0};
                              return {Side::Left, m};
                          }
                          if (m.sign > 0) {
                              const int j1 = m.syms[0].index;
                              if (j1 == 0) {
                                  m.syms[0] = {SymKind::b, 0};
                                  return {Side::Right, m};
                              }
                              const auto at = static_cast<std::size_t>(j1 - 1);
                              m.syms[0] = m.syms[at];
                              m.syms[at] = {SymKind::b, j1};
                              m.sign = -1;
                              return {Side::Left, m};
                          }
                          for (std::size_t k = 0; k < m.syms.size(); ++k) {
                              if (m.syms[k].kind != SymKind::b) continue;
                              const Sym up{SymKind::B, m.syms[k].index};
                              m.syms[k] = m.syms[0];
                              m.syms[0] = up;
                              m.sign = 1;
                              return {Side::Left, m};
                          }
                          throw Error(Errc::PreconditionViolated, "negative monomial without a lower-case factor");
                      }});
    return p;
}

Pipeline blob_pipeline(int n) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    Pipeline p;
    p.name = "blob";
    p.n = n;
    const GraphSpec spec0{n, n, n, false, SymKind::B, false};
    auto prev = std::make_shared<const TermMatrix>(mtt_matrix(n, false));
    p.stages.push_back(tree_stage("G0", spec0));
    p.stages.push_back(array_stage("G0'", prev));
    p.invs.push_back(mtt_involution("mu0'", spec0, Side::Left));

    if (n == 1) {
        // C'_0 = [B0 + B1 - b1] is already final: B0 is the code, B1 and -b1 cancel.
        p.stages.push_back(code_stage("S1", 1, true, SymKind::b));
        p.invs.push_back({"rho1", [](Side side, const Element& e) -> Step {
                              const ArrayElem diag{1, {1}, {{1, {SymKind::B, 0}}}};
                              if (side == Side::Right) return {Side::Left, diag};
                              ArrayElem a = std::get<ArrayElem>(e);
                              if (a == diag) return {Side::Right, MonoElem{1, {{SymKind::b, 0}}}};
                              a.terms[0] = a.terms[0].sign > 0 ? Term{-1, {SymKind::b, 1}} : Term{1, {SymKind::B, 1}};
                              return {Side::Left, a};
                          }});
        return p;
    }

    for (int i = 1; i <= n - 1; ++i) {
        const int r = n - i + 1;
        const int s = n - i;
        auto ri = std::make_shared<const TermMatrix>(row_sub(*prev, r, s));
        p.stages.push_back(array_stage(primed("S", i, false), ri));
        p.invs.push_back(row_op_involution(primed("rho", i, false), prev, r, s));

        auto ri2 = std::make_shared<const TermMatrix>(cancel_row(*ri, r));
        p.stages.push_back(array_stage(primed("S", i, true), ri2));
        p.invs.push_back(cancel_involution(primed("rho", i, true), ri, r));

        auto ci = std::make_shared<const TermMatrix>(col_add(*ri2, s, r));
        p.stages.push_back(array_stage(primed("T", i, false), ci));
        p.invs.push_back(col_op_involution(primed("kappa", i, false), ri2, s, r));

        GraphSpec spec{n, n - i, n - i, false, SymKind::B, false};
        std::shared_ptr<const TermMatrix> ci2;
        if (i < n - 1) {
            ci2 = std::make_shared<const TermMatrix>(cancel_row(*ci, r));
            p.invs.push_back(cancel_involution(primed("kappa", i, true), ci, r));
        } else {
            // Setting B_j = b_j leaves b0 in the corner and sum b_j below it.
            TermMatrix last = *ci;
            last.at(1, 1) = {{1, {SymKind::b, 0}}};
            last.at(2, 1).clear();
            for (int k = 2; k <= n; ++k) {
                last.at(k, k).clear();
                for (int j = 0; j <= n; ++j) last.at(k, k).push_back({1, {SymKind::b, j}});
            }
            ci2 = std::make_shared<const TermMatrix>(last);
            spec.diag_kind = SymKind::b;
            p.invs.push_back({primed("kappa", i, true), [](Side side, const Element& e) -> Step {
                                  ArrayElem a = std::get<ArrayElem>(e);
                                  auto recase = [&](SymKind from, SymKind to) {
                                      for (Term& t : a.terms)
                                          if (t.sym.kind == from) t.sym.kind = to;
                                  };
                                  if (side == Side::Right) {
                                      recase(SymKind::b, SymKind::B);
                                      return {Side::Left, a};
                                  }
                                  const int k = row_of_col(a, 1);
                                  Term& t = a.terms[slot(a, k)];
                                  if (k == 1 && t == Term{1, {SymKind::B, 0}}) {
                                      recase(SymKind::B, SymKind::b);
                                      return {Side::Right, a};
                                  }
                                  if (k == 1)
                                      t = t.sym.kind == SymKind::B ? Term{-1, {SymKind::b, t.sym.index}}
                                                                   : Term{1, {SymKind::B, t.sym.index}};
                                  else
                                      t = t.negated();
                                  return {Side::Left, a};
                              }});
        }
        p.stages.push_back(array_stage(primed("T", i, true), ci2));
        p.stages.push_back(tree_stage(primed("G", i, false), spec));
        p.invs.push_back(mtt_involution(primed("mu", i, false), spec, Side::Right));
        p.stages.push_back(array_stage(primed("G", i, true), ci2));
        p.invs.push_back(mtt_involution(primed("mu", i, true), spec, Side::Left));
        prev = ci2;
    }

    p.stages.push_back(code_stage(primed("S", n, false), n, true, SymKind::b));
    p.invs.push_back({primed("rho", n, false), [n](Side side, const Element& e) -> Step {
                          if (side == Side::Left) {
                              const auto& a = std::get<ArrayElem>(e);
                              MonoElem m;
                              for (const Term& t : a.terms) m.syms.push_back(t.sym);
                              return {Side::Right, m};
                          }
                          const auto& m = std::get<MonoElem>(e);
                          ArrayElem a;
                          a.lo = 1;
                          for (int k = 1; k <= n; ++k) {
                              a.cols.push_back(k);
                              a.terms.push_back({1, m.syms[static_cast<std::size_t>(k - 1)]});
                          }
                          return {Side::Left, a};
                      }});
    return p;
}

Pipeline dandelion_pipeline(int n) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    Pipeline p;
    p.name = "dandelion";
    p.n = n;
    const GraphSpec spec0{n, n, n, false, SymKind::B, false};
    p.stages.push_back(tree_stage("F0", spec0));

    // The tree of the final stage reads off the weights into 1 as the code.
    auto hat = [n](std::string name) {
        return Involution{std::move(name), [n](Side side, const Element& e) -> Step {
                              if (side == Side::Left) {
                                  const auto& t = std::get<TreeElem>(e);
                                  MonoElem m;
                                  for (int k = 2; k <= n; ++k) m.syms.push_back({SymKind::B, t.x[static_cast<std::size_t>(k)]});
                                  return {Side::Right, m};
                              }
                              const auto& m = std::get<MonoElem>(e);
                              TreeElem t;
                              t.m = 1;
                              t.x.assign(static_cast<std::size_t>(n) + 1, 0);
                              for (int k = 2; k <= n; ++k) t.x[static_cast<std::size_t>(k)] = m.syms[static_cast<std::size_t>(k - 2)].index;
                              return {Side::Left, t};
                          }};
    };

    if (n == 1) {
        p.stages.push_back(code_stage("F0'", 1, false, SymKind::B));
        p.invs.push_back(hat("mu0^"));
        return p;
    }

    auto prev = std::make_shared<const TermMatrix>(mtt_matrix(n, false));
    p.stages.push_back(array_stage("F0'", prev));
    p.invs.push_back(mtt_involution("mu0'", spec0, Side::Left));

    for (int i = 1; i <= n - 1; ++i) {
        const int r = n - i + 1;
        auto ni = std::make_shared<const TermMatrix>(row_sub(*prev, r, 1));
        p.stages.push_back(array_stage(primed("D", i, false), ni));
        p.invs.push_back(row_op_involution(primed("xi", i, false), prev, r, 1));

        auto ni2 = std::make_shared<const TermMatrix>(cancel_row(*ni, r));
        p.stages.push_back(array_stage(primed("D", i, true), ni2));
        p.invs.push_back(cancel_involution(primed("xi", i, true), ni, r));

        const GraphSpec spec{n, n - i, n, true, SymKind::B, false};
        p.stages.push_back(tree_stage(primed("F", i, false), spec));
        p.invs.push_back(mtt_involution(primed("mu", i, false), spec, Side::Right));
        if (i < n - 1) {
            p.stages.push_back(array_stage(primed("F", i, true), ni2));
            p.invs.push_back(mtt_involution(primed("mu", i, true), spec, Side::Left));
        } else {
            p.stages.push_back(code_stage(primed("F", i, true), n, false, SymKind::B));
            p.invs.push_back(hat(primed("mu", i, false) + "^"));
        }
        prev = ni2;
    }
    return p;
}

std::uint64_t default_budget(int n) {
    if (const char* env = std::getenv("TREECODEX_STEP_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(Errc::InvalidInput, std::string("bad TREECODEX_STEP_BUDGET \"") + env + "\"");
        }
    }
    std::uint64_t b = 1;
    for (int k = 0; k < n && b < (std::uint64_t{1} << 60); ++k) b *= 8;
    return b;
}

Element garsia_milne_walk(const Pipeline& p, const Element& x, const WalkOptions& opt, bool from_last) {
    const int k = static_cast<int>(p.invs.size());
    const std::uint64_t budget = opt.budget ? opt.budget : default_budget(p.n);
    int pos = from_last ? k - 1 : 0;
    Side side = from_last ? Side::Right : Side::Left;
    const auto& start = p.stages[static_cast<std::size_t>(from_last ? k : 0)];
    if (!start.contains(x)) throw Error(Errc::InvalidInput, "start element is not in stage " + start.id);

    auto shown_sign = [](Side s, const Element& e) { return s == Side::Left ? intrinsic_sign(e) : -intrinsic_sign(e); };
    auto emit = [&](const Stage& st, int sign, const Element& e) {
        if (opt.trace) opt.trace->push_back({st.id, sign, render(e)});
    };
    emit(start, shown_sign(side, x), x);

    Element cur = x;
    std::uint64_t steps = 0;
    for (;;) {
        if (++steps > budget)
            throw Error(Errc::StepBudgetExceeded, "walk exceeded " + std::to_string(budget) + " steps");
        const Involution& beta = p.invs[static_cast<std::size_t>(pos)];
        Step st = beta.apply(side, cur);
        const Stage& where = p.stages[static_cast<std::size_t>(st.side == Side::Left ? pos : pos + 1)];
        const int sign = shown_sign(st.side, st.elem);
        if (opt.validate) {
            if (!where.contains(st.elem))
                throw Error(Errc::PreconditionViolated, beta.name + " left stage " + where.id + ": " + render(st.elem));
            if (sign != -shown_sign(side, cur))
                throw Error(Errc::PreconditionViolated, beta.name + " did not reverse the sign");
        }
        emit(where, sign, st.elem);
        cur = std::move(st.elem);
        if (!from_last && st.side == Side::Right && pos + 1 == k) return cur;
        if (from_last && st.side == Side::Left && pos == 0) return cur;
        emit(where, -sign, cur);  // the negative identity on the middle set
        if (st.side == Side::Right) {
            if (++pos >= k) throw Error(Errc::PreconditionViolated, "walk ran past the last stage");
            side = Side::Left;
        } else {
            if (--pos < 0) throw Error(Errc::PreconditionViolated, "walk ran past the first stage");
            side = Side::Right;
        }
    }
}

std::string format_trace_line(std::size_t k, const TraceLine& line) {
    return "STEP " + std::to_string(k) + " | stage=" + line.stage + " | sign=" + (line.sign < 0 ? "-" : "+") +
           " | " + line.element;
}

namespace {

void check_pipeline_size(int n) {
    if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    if (n > kPipelineBound)
        throw Error(Errc::BoundExceeded, "matrix method limited to n <= " + std::to_string(kPipelineBound));
}

Element walk_tree(const Pipeline& p, const RootedTree& t, std::vector<TraceLine>* trace) {
    WalkOptions opt;
    opt.trace = trace;
    return garsia_milne_walk(p, TreeElem{t.table(), t.n()}, opt);
}

RootedTree walk_code(const Pipeline& p, const MonoElem& m) {
    Element e = garsia_milne_walk(p, m, {}, true);
    return RootedTree::from_table(std::get<TreeElem>(e).x);
}

}  // namespace

Code happy_encode_matrix(const RootedTree& t, std::vector<TraceLine>* trace) {
    check_pipeline_size(t.n());
    return mono_code(walk_tree(happy_pipeline(t.n()), t, trace), true);
}

Code blob_encode_matrix(const RootedTree& t, std::vector<TraceLine>* trace) {
    check_pipeline_size(t.n());
    return mono_code(walk_tree(blob_pipeline(t.n()), t, trace), true);
}

Code dandelion_encode_matrix(const RootedTree& t, std::vector<TraceLine>* trace) {
    check_pipeline_size(t.n());
    return mono_code(walk_tree(dandelion_pipeline(t.n()), t, trace), false);
}

RootedTree happy_decode_matrix(const Code& c, int n) {
    check_pipeline_size(n);
    check_code(c, n);
    return walk_code(happy_pipeline(n), code_mono(c, true, SymKind::B));
}

RootedTree blob_decode_matrix(const Code& c, int n) {
    check_pipeline_size(n);
    check_code(c, n);
    return walk_code(blob_pipeline(n), code_mono(c, true, SymKind::b));
}

RootedTree dandelion_decode_matrix(const Code& c, int n) {
    check_pipeline_size(n);
    check_code(c, n);
    return walk_code(dandelion_pipeline(n), code_mono(c, false, SymKind::B));
}

}  // namespace treecodex::inv
