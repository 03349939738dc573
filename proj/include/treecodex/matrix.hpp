#pragma once

// Exact multivariate polynomials over the edge weights, symbolic Laplacians
// and determinants.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treecodex/blob.hpp"
#include "treecodex/tree.hpp"

namespace treecodex::poly {

using Int = boost::multiprecision::cpp_int;

// Variables order as b_j (by j), then B_j, then lambda, then a_ij.
struct Var {
    enum Kind : std::uint8_t { b, B, lambda, a } kind = b;
    int i = 0;  // index of b/B, tail of a
    int j = 0;  // head of a
    friend auto operator<=>(const Var&, const Var&) = default;

    static Var bv(int j) { return {b, j, 0}; }
    static Var Bv(int j) { return {B, j, 0}; }
    static Var lam() { return {lambda, 0, 0}; }
    static Var av(int i, int j) { return {a, i, j}; }
};

std::string var_name(const Var& v);  // b0, b(-1), B2, L, a1_3

// Sparse exponent vector, sorted by variable, no zero exponents.
struct Monomial {
    std::vector<std::pair<Var, int>> f;
    int degree() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Descending lexicographic order on exponent vectors: b0^2 before b0*b1.
struct MonomialOrder {
    bool operator()(const Monomial& x, const Monomial& y) const;
};

Monomial operator*(const Monomial& x, const Monomial& y);

class MultiPoly {
public:
    MultiPoly() = default;
    MultiPoly(long long c);  // NOLINT: constants convert implicitly
    explicit MultiPoly(const Var& v, long long c = 1);

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t num_terms() const noexcept { return terms_.size(); }
    // Sum of coefficients, i.e. terms counted with multiplicity.
    Int coefficient_sum() const;
    const std::map<Monomial, Int, MonomialOrder>& terms() const noexcept { return terms_; }

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator-() const;
    friend MultiPoly operator+(MultiPoly x, const MultiPoly& y) { return x += y; }
    friend MultiPoly operator-(MultiPoly x, const MultiPoly& y) { return x -= y; }
    friend MultiPoly operator*(const MultiPoly& x, const MultiPoly& y);
    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

    void add_term(const Monomial& m, const Int& c);
    MultiPoly pow(int e) const;
    MultiPoly substitute(const Var& v, const MultiPoly& value) const;
    // Every variable must be bound; throws InvalidInput otherwise.
    Int evaluate(const std::map<Var, Int>& point) const;
    std::vector<Var> variables() const;

    std::string str() const;

private:
    std::map<Monomial, Int, MonomialOrder> terms_;
};

// Square grid of polynomials; rows and columns run origin..origin+size-1.
class SymMatrix {
public:
    SymMatrix(int size, int origin);

    int size() const noexcept { return size_; }
    int origin() const noexcept { return origin_; }
    MultiPoly& at(int r, int c) { return cells_[idx(r, c)]; }
    const MultiPoly& at(int r, int c) const { return cells_[idx(r, c)]; }

    SymMatrix reduced() const;  // drop the first row and column
    void row_sub(int r, int s);  // row r -= row s
    void col_add(int d, int e);  // col d += col e
    bool upper_triangular() const;

private:
    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>((r - origin_) * size_ + (c - origin_));
    }
    int size_;
    int origin_;
    std::vector<MultiPoly> cells_;
};

enum class Weighting { UniformB, Ucsd };

// W(i -> j): b_j, or under ucsd a_ij for an ascent j > i.
MultiPoly edge_weight(int i, int j, Weighting w);

// Full matrix on 0..n with zero row sums; the root row is zero.
SymMatrix laplacian(int n, Weighting w);

inline constexpr int kDetBound = 9;
MultiPoly det(const SymMatrix& m, int bound = kDetBound);

// Fraction-free elimination over the integers.
Int det_bareiss(std::vector<std::vector<Int>> m);
std::vector<std::vector<Int>> evaluate(const SymMatrix& m, const std::map<Var, Int>& point);

MultiPoly tree_weight(const RootedTree& t, Weighting w);
MultiPoly tree_weight_sum(int n, Weighting w, int bound = kEnumerateBound);
bool mtt_check(int n, Weighting w);

// b0 * prod_{i=2..n} (sum_{k<i} b_k + sum_{j>=i} a_{i-1,j}).
MultiPoly ucsd_product(int n);
// Reduced Laplacian after row k -= row k-1 and col k-1 += col k for
// k = n..2; upper triangular with the product formula on its diagonal.
SymMatrix reduce_chain(int n, Weighting w);

// Every variable of laplacian(n, w) bound to a value in [1, 2^31).
std::map<Var, Int> random_point(int n, Weighting w, Rng& rng);

struct DegreeRow {
    int in_ascending = 0;
    int in_descending = 0;
    int out_ascending = 0;
    int out_descending = 0;
    friend bool operator==(const DegreeRow&, const DegreeRow&) = default;
};

// Row v describes vertex v, for v in 0..n.
std::vector<DegreeRow> code_stats(const WeightedCode& tokens);
// The same table read directly off a tree.
std::vector<DegreeRow> edge_stats(const RootedTree& t);

}  // namespace treecodex::poly
