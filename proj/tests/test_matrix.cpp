#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "treecodex/blob.hpp"
#include "treecodex/matrix.hpp"

using namespace treecodex;
using namespace treecodex::poly;

namespace {

MultiPoly b(int j) { return MultiPoly(Var::bv(j)); }
MultiPoly a(int i, int j) { return MultiPoly(Var::av(i, j)); }

MultiPoly sum_b(int n) {
    MultiPoly s;
    for (int j = 0; j <= n; ++j) s += b(j);
    return s;
}

// Leibniz expansion over all permutations.
MultiPoly leibniz(const SymMatrix& m) {
    std::vector<int> p(static_cast<std::size_t>(m.size()));
    std::iota(p.begin(), p.end(), 0);
    MultiPoly total;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
        MultiPoly t = inv % 2 ? -1 : 1;
        for (int r = 0; r < m.size(); ++r) t = t * m.at(m.origin() + r, m.origin() + p[static_cast<std::size_t>(r)]);
        total += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

MultiPoly oracle_tree_sum(int n, bool ucsd) {
    MultiPoly s;
    for (const auto& t : oracle::brute_trees(n)) {
        MultiPoly w = 1;
        for (int v = 1; v <= n; ++v) w = w * (ucsd && t[v] > v ? a(v, t[v]) : b(t[v]));
        s += w;
    }
    return s;
}

}  // namespace

TEST(Poly, Rendering) {
    EXPECT_EQ((b(0) * b(0) + b(0) * b(1) + b(0) * b(2)).str(), "b0^2 + b0*b1 + b0*b2");
    EXPECT_EQ((b(2) + b(0) * 3).str(), "3*b0 + b2");
    EXPECT_EQ((b(1) - b(1)).str(), "0");
    EXPECT_EQ((MultiPoly(5) - a(1, 3) * 2).str(), "-2*a1_3 + 5");
    EXPECT_EQ((MultiPoly(Var::lam()) + MultiPoly(Var::Bv(2)) + b(-1)).str(), "b(-1) + B2 + L");
}

TEST(Poly, Arithmetic) {
    MultiPoly x = b(0) + b(1);
    EXPECT_EQ(x.pow(2), b(0) * b(0) + b(0) * b(1) * 2 + b(1) * b(1));
    EXPECT_EQ(x.pow(3).coefficient_sum(), 8);
    EXPECT_EQ(x.substitute(Var::bv(0), b(-1) + b(-2)), b(-1) + b(-2) + b(1));
    std::map<Var, Int> pt{{Var::bv(0), 2}, {Var::bv(1), 5}};
    EXPECT_EQ(x.pow(2).evaluate(pt), 49);
    EXPECT_THROW(a(1, 2).evaluate(pt), Error);
}

TEST(Matrix, UniformLaplacianN3) {
    SymMatrix full = laplacian(3, Weighting::UniformB);
    for (int r = 0; r <= 3; ++r) {
        MultiPoly s;
        for (int c = 0; c <= 3; ++c) s += full.at(r, c);
        EXPECT_TRUE(s.is_zero());
    }
    SymMatrix m = full.reduced();
    EXPECT_EQ(m.origin(), 1);
    EXPECT_EQ(m.at(1, 1), b(0) + b(2) + b(3));
    EXPECT_EQ(m.at(1, 2), -b(2));
    EXPECT_EQ(m.at(1, 3), -b(3));
    EXPECT_EQ(m.at(2, 1), -b(1));
    EXPECT_EQ(m.at(2, 2), b(0) + b(1) + b(3));
    EXPECT_EQ(m.at(3, 1), -b(1));
    EXPECT_EQ(m.at(3, 2), -b(2));
    EXPECT_EQ(m.at(3, 3), b(0) + b(1) + b(2));
}

TEST(Matrix, RowSumsVanish) {
    for (auto w : {Weighting::UniformB, Weighting::Ucsd}) {
        for (int n = 1; n <= 6; ++n) {
            SymMatrix m = laplacian(n, w);
            for (int r = 0; r <= n; ++r) {
                MultiPoly s;
                for (int c = 0; c <= n; ++c) s += m.at(r, c);
                EXPECT_TRUE(s.is_zero()) << n << " row " << r;
            }
        }
    }
}

TEST(Matrix, UcsdLaplacianN4) {
    SymMatrix m = laplacian(4, Weighting::Ucsd).reduced();
    EXPECT_EQ(m.at(1, 1), b(0) + a(1, 2) + a(1, 3) + a(1, 4));
    EXPECT_EQ(m.at(1, 2), -a(1, 2));
    EXPECT_EQ(m.at(1, 4), -a(1, 4));
    EXPECT_EQ(m.at(2, 1), -b(1));
    EXPECT_EQ(m.at(2, 2), b(0) + b(1) + a(2, 3) + a(2, 4));
    EXPECT_EQ(m.at(3, 3), b(0) + b(1) + b(2) + a(3, 4));
    EXPECT_EQ(m.at(3, 4), -a(3, 4));
    EXPECT_EQ(m.at(4, 3), -b(3));
    EXPECT_EQ(m.at(4, 4), b(0) + b(1) + b(2) + b(3));
}

TEST(Matrix, UniformChainEndsUpperTriangular) {
    SymMatrix m = reduce_chain(3, Weighting::UniformB);
    EXPECT_TRUE(m.upper_triangular());
    EXPECT_EQ(m.at(1, 1), b(0));
    EXPECT_EQ(m.at(1, 2), -b(2) - b(3));
    EXPECT_EQ(m.at(1, 3), -b(3));
    EXPECT_EQ(m.at(2, 2), sum_b(3));
    EXPECT_EQ(m.at(2, 3), MultiPoly());
    EXPECT_EQ(m.at(3, 3), sum_b(3));
    EXPECT_EQ(det(m), b(0) * sum_b(3).pow(2));
}

TEST(Matrix, UcsdChain) {
    for (int n = 1; n <= 5; ++n) {
        SymMatrix m = reduce_chain(n, Weighting::Ucsd);
        EXPECT_TRUE(m.upper_triangular());
        EXPECT_EQ(m.at(1, 1), b(0));
        for (int i = 2; i <= n; ++i) {
            MultiPoly d;
            for (int k = 0; k < i; ++k) d += b(k);
            for (int k = i; k <= n; ++k) d += a(i - 1, k);
            EXPECT_EQ(m.at(i, i), d);
        }
        EXPECT_EQ(det(m), ucsd_product(n));
    }
    // After the first step at n = 4, row 4 is (0, 0, 0, b0+b1+b2+b3+a34).
    SymMatrix u = laplacian(4, Weighting::Ucsd).reduced();
    u.row_sub(4, 3);
    u.col_add(3, 4);
    EXPECT_TRUE(u.at(4, 1).is_zero());
    EXPECT_TRUE(u.at(4, 3).is_zero());
    EXPECT_EQ(u.at(4, 4), b(0) + b(1) + b(2) + b(3) + a(3, 4));
    EXPECT_EQ(u.at(1, 3), -a(1, 3) - a(1, 4));
    EXPECT_EQ(u.at(3, 3), b(0) + b(1) + b(2));
}

TEST(Matrix, SmallDeterminants) {
    SymMatrix id(3, 1);
    for (int i = 1; i <= 3; ++i) id.at(i, i) = 1;
    EXPECT_EQ(det(id), MultiPoly(1));
    EXPECT_EQ(det(laplacian(2, Weighting::UniformB).reduced()).str(), "b0^2 + b0*b1 + b0*b2");
    EXPECT_EQ(det(laplacian(1, Weighting::Ucsd).reduced()), b(0));
    EXPECT_THROW(det(SymMatrix(10, 0)), Error);
}

TEST(Matrix, CofactorMatchesLeibniz) {
    for (int n = 1; n <= 4; ++n)
        for (auto w : {Weighting::UniformB, Weighting::Ucsd}) {
            SymMatrix m = laplacian(n, w);
            m.at(0, 0) = MultiPoly(Var::lam());
            EXPECT_EQ(det(m), leibniz(m));
        }
}

TEST(Matrix, DeterminantClosedForm) {
    for (int n = 1; n <= 6; ++n) {
        MultiPoly d = det(laplacian(n, Weighting::UniformB).reduced());
        EXPECT_EQ(d, b(0) * sum_b(n).pow(n - 1)) << n;
        EXPECT_EQ(d.coefficient_sum(), Int(tree_count(n))) << n;
    }
}

TEST(Matrix, TreeWeightSums) {
    EXPECT_EQ(tree_weight_sum(1, Weighting::UniformB), b(0));
    EXPECT_EQ(tree_weight_sum(1, Weighting::Ucsd), b(0));
    EXPECT_EQ(tree_weight_sum(2, Weighting::UniformB).str(), "b0^2 + b0*b1 + b0*b2");
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(tree_weight_sum(n, Weighting::UniformB), oracle_tree_sum(n, false));
        EXPECT_EQ(tree_weight_sum(n, Weighting::Ucsd), oracle_tree_sum(n, true));
    }
    EXPECT_EQ(tree_weight_sum(4, Weighting::Ucsd), det(laplacian(4, Weighting::Ucsd).reduced()));
}

TEST(Matrix, MatrixTreeTheorem) {
    for (int n = 1; n <= 6; ++n) {
        EXPECT_TRUE(mtt_check(n, Weighting::UniformB)) << n;
        EXPECT_TRUE(mtt_check(n, Weighting::Ucsd)) << n;
    }
}

TEST(Matrix, UcsdProduct) {
    EXPECT_EQ(ucsd_product(1), b(0));
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(ucsd_product(n), tree_weight_sum(n, Weighting::Ucsd)) << n;
}

TEST(Matrix, UcsdRandomPointsN6) {
    Rng rng(2024);
    const MultiPoly prod = ucsd_product(6);
    const SymMatrix lap = laplacian(6, Weighting::Ucsd).reduced();
    const auto trees = enumerate_trees(6);
    for (int trial = 0; trial < 20; ++trial) {
        auto pt = random_point(6, Weighting::Ucsd, rng);
        Int sum = 0;
        for (const auto& t : trees) sum += tree_weight(t, Weighting::Ucsd).evaluate(pt);
        EXPECT_EQ(prod.evaluate(pt), sum);
        EXPECT_EQ(det_bareiss(evaluate(lap, pt)), sum);
    }
}

TEST(Matrix, BareissMatchesCofactor) {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int size = rng.uniform(1, 6);
        SymMatrix m(size, 0);
        std::vector<std::vector<Int>> v(static_cast<std::size_t>(size), std::vector<Int>(static_cast<std::size_t>(size)));
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                int x = rng.uniform(-3, 3);
                if (rng.uniform(0, 3) == 0) x = 0;
                m.at(r, c) = x;
                v[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = x;
            }
        MultiPoly d = det(m);
        Int expect = d.is_zero() ? Int(0) : d.terms().begin()->second;
        EXPECT_EQ(det_bareiss(v), expect);
    }
}

TEST(Stats, AscentDescentTable) {
    auto rows = code_stats(parse_weighted("b0,a1_3,b2,b0,a4_5"));
    ASSERT_EQ(rows.size(), 6u);
    const std::vector<DegreeRow> expect{
        {0, 2, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 0, 1, 0}, {1, 0, 0, 1},
    };
    EXPECT_EQ(rows, expect);
}

TEST(Stats, SingleVertex) {
    auto rows = code_stats(parse_weighted("b0"));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], (DegreeRow{0, 1, 0, 0}));
    EXPECT_EQ(rows[1], (DegreeRow{0, 0, 0, 1}));
    EXPECT_THROW(code_stats(parse_weighted("b1")), Error);
}

TEST(Stats, MatchesDirectScan) {
    Rng rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = rng.uniform(1, 50);
        RootedTree t = random_tree(n, rng);
        std::vector<DegreeRow> direct(static_cast<std::size_t>(n + 1));
        for (int v = 1; v <= n; ++v) {
            auto& out = direct[static_cast<std::size_t>(v)];
            auto& in = direct[static_cast<std::size_t>(t.succ(v))];
            if (t.succ(v) > v) ++out.out_ascending, ++in.in_ascending;
            else ++out.out_descending, ++in.in_descending;
        }
        EXPECT_EQ(code_stats(blob_encode_weighted(t)), direct);
        EXPECT_EQ(edge_stats(t), direct);
    }
}
