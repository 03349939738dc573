#pragma once

// Matrix sets, sign-reversing involutions and the Garsia-Milne walk that
// turns a chain of them into a bijection between trees and codes.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "treecodex/tree.hpp"

namespace treecodex::inv {

enum class SymKind : std::uint8_t { b, B, lambda };

struct Sym {
    SymKind kind = SymKind::b;
    int index = 0;
    friend auto operator<=>(const Sym&, const Sym&) = default;
};

struct Term {
    int sign = 1;
    Sym sym;
    Term negated() const { return {-sign, sym}; }
    friend auto operator<=>(const Term&, const Term&) = default;
};

using Entry = std::vector<Term>;  // formal sum, nothing cancelled

// Square matrix of formal sums with rows and columns lo..hi.
class TermMatrix {
public:
    TermMatrix(int lo, int hi);

    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return hi_; }
    int size() const noexcept { return hi_ - lo_ + 1; }
    Entry& at(int r, int c) { return cells_[idx(r, c)]; }
    const Entry& at(int r, int c) const { return cells_[idx(r, c)]; }
    bool contains(int r, int c, const Term& t) const;
    // Throws PreconditionViolated if an entry repeats a signed symbol.
    void check_distinct() const;

private:
    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>((r - lo_) * size() + (c - lo_));
    }
    int lo_;
    int hi_;
    std::vector<Entry> cells_;
};

// Reduced Matrix Tree Theorem matrix: B_0..B_n on the diagonal, a_ij = b_j.
// With lambda, row and column 0 are kept and (0,0) becomes lambda - b0.
TermMatrix mtt_matrix(int n, bool with_lambda);
TermMatrix row_sub(const TermMatrix& x, int r, int s);  // row r -= row s
TermMatrix col_add(const TermMatrix& x, int d, int e);  // col d += col e
TermMatrix cancel_row(const TermMatrix& y, int r);

// Tree-like element. x[k] is the label read from row k; index 0 is unused.
// Rows above m hold the partial code (or edge weights into 1).
struct TreeElem {
    std::vector<int> x;
    int m = 0;
    friend bool operator==(const TreeElem&, const TreeElem&) = default;
};

// One cell per row: cols[r - lo] is the column used by row r.
struct ArrayElem {
    int lo = 1;
    std::vector<int> cols;
    std::vector<Term> terms;
    friend bool operator==(const ArrayElem&, const ArrayElem&) = default;
};

struct MonoElem {
    int sign = 1;
    std::vector<Sym> syms;
    friend bool operator==(const MonoElem&, const MonoElem&) = default;
};

using Element = std::variant<TreeElem, ArrayElem, MonoElem>;

int permutation_parity(const ArrayElem& a);
int intrinsic_sign(const Element& e);
std::string render(const Element& e);

// How rows of an array are read as edges.
struct GraphSpec {
    int n = 0;
    int m = 0;                     // rows 1..m are ordinary vertices
    int blob = 0;                  // labels >= blob all mean the blob vertex
    bool dandelion = false;        // rows m+1..n are edges into 1 weighted B_j
    SymKind diag_kind = SymKind::B;
    bool lambda_row = false;       // row 0 carries lambda at (0,0)

    int vertex(int j) const { return j == 0 ? 0 : (j >= blob ? blob : j); }
    int graph_rows() const { return dandelion ? n : m; }
};

enum class Side { Left, Right };

struct Step {
    Side side;
    Element elem;
};

enum class StageKind { Trees, Arrays, Monos };

struct Stage {
    std::string id;
    StageKind kind = StageKind::Arrays;
    std::shared_ptr<const TermMatrix> matrix;  // Arrays
    bool lambda_col0 = false;                  // Arrays: column 0 must hold lambda
    GraphSpec spec;                            // Trees
    std::function<bool(const MonoElem&)> mono_member;                    // Monos
    std::function<void(const std::function<void(const Element&)>&)> mono_all;  // Monos

    bool contains(const Element& e) const;
    // Enumerates every element; meant for n <= 3 or so.
    void for_each(const std::function<void(const Element&)>& fn) const;
};

// beta_p acts on stages[p] - stages[p+1].
struct Involution {
    std::string name;
    std::function<Step(Side, const Element&)> apply;
};

struct Pipeline {
    std::string name;
    int n = 0;
    std::vector<Stage> stages;
    std::vector<Involution> invs;
};

Pipeline happy_pipeline(int n);
Pipeline blob_pipeline(int n);
Pipeline dandelion_pipeline(int n);

inline constexpr int kPipelineBound = 8;

struct TraceLine {
    std::string stage;
    int sign;
    std::string element;
};

struct WalkOptions {
    std::uint64_t budget = 0;  // 0: 8^n, or TREECODEX_STEP_BUDGET when set
    bool validate = false;     // check stage membership after every step
    std::vector<TraceLine>* trace = nullptr;
};

std::uint64_t default_budget(int n);

// Forward walk from a positive element of the first stage to the last stage,
// or backward when `from_last` is set.
Element garsia_milne_walk(const Pipeline& p, const Element& x, const WalkOptions& opt = {},
                          bool from_last = false);

std::string format_trace_line(std::size_t k, const TraceLine& line);

// The toggle used by every Matrix Tree Theorem involution.
ArrayElem toggle_cycle(const GraphSpec& spec, const ArrayElem& a, const Cycle& cycle);
ArrayElem tree_to_array(const GraphSpec& spec, const TreeElem& t);
// Successor table (index 0 unused) of the graph read from rows 1..graph_rows.
std::vector<int> array_graph(const GraphSpec& spec, const ArrayElem& a);

// Codecs built on the walks.
Code happy_encode_matrix(const RootedTree& t, std::vector<TraceLine>* trace = nullptr);
Code blob_encode_matrix(const RootedTree& t, std::vector<TraceLine>* trace = nullptr);
Code dandelion_encode_matrix(const RootedTree& t, std::vector<TraceLine>* trace = nullptr);
RootedTree happy_decode_matrix(const Code& c, int n);
RootedTree blob_decode_matrix(const Code& c, int n);
RootedTree dandelion_decode_matrix(const Code& c, int n);

}  // namespace treecodex::inv
