#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "treecodex/blob.hpp"
#include "treecodex/dandelion.hpp"
#include "treecodex/happy.hpp"
#include "treecodex/involution.hpp"

using namespace treecodex;
using namespace treecodex::inv;

namespace {

Sym B(int j) { return {SymKind::B, j}; }
Sym b(int j) { return {SymKind::b, j}; }

ArrayElem diag(std::vector<Term> terms) {
    ArrayElem a;
    a.lo = 1;
    for (std::size_t k = 0; k < terms.size(); ++k) a.cols.push_back(static_cast<int>(k) + 1);
    a.terms = std::move(terms);
    return a;
}

std::size_t stage_index(const Pipeline& p, const std::string& id) {
    for (std::size_t i = 0; i < p.stages.size(); ++i)
        if (p.stages[i].id == id) return i;
    ADD_FAILURE() << "no stage " << id;
    return 0;
}

const Involution& involution(const Pipeline& p, const std::string& name) {
    for (const auto& inv : p.invs)
        if (inv.name == name) return inv;
    throw std::runtime_error("no involution " + name);
}

std::vector<Pipeline> all_pipelines(int n) { return {happy_pipeline(n), blob_pipeline(n), dandelion_pipeline(n)}; }

}  // namespace

TEST(Involution, ToggleFirstExample) {
    // Cycle (1 3 4) with the edge 2 -> 4 held fixed.
    GraphSpec spec{4, 4, 4, false, SymKind::B, false};
    ArrayElem on = diag({{1, B(3)}, {1, B(4)}, {1, B(4)}, {1, B(1)}});
    ArrayElem off = toggle_cycle(spec, on, {1, 3, 4});
    EXPECT_EQ(render(off), "(1,3,-b3,o) (2,2,+B4,d) (3,4,-b4,o) (4,1,-b1,o)");
    EXPECT_EQ(intrinsic_sign(on), 1);
    EXPECT_EQ(intrinsic_sign(off), -1);
    EXPECT_EQ(toggle_cycle(spec, off, {1, 3, 4}), on);
}

TEST(Involution, ToggleLoop) {
    GraphSpec spec{3, 3, 3, false, SymKind::B, false};
    ArrayElem on = diag({{1, B(0)}, {1, B(0)}, {1, B(3)}});
    ArrayElem off = toggle_cycle(spec, on, {3});
    EXPECT_EQ(render(off), "(1,1,+B0,d) (2,2,+B0,d) (3,3,-b3,o)");
    EXPECT_EQ(intrinsic_sign(off), -1);
    EXPECT_EQ(toggle_cycle(spec, off, {3}), on);
}

TEST(Involution, ToggleRejectsNonCycle) {
    GraphSpec spec{3, 3, 3, false, SymKind::B, false};
    ArrayElem a = diag({{1, B(2)}, {1, B(0)}, {1, B(3)}});
    try {
        toggle_cycle(spec, a, {1, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotACycle);
    }
}

TEST(Involution, MttPairsTwoCycleArrays) {
    Pipeline p = blob_pipeline(2);
    const Involution& mu = p.invs[0];
    ArrayElem on = diag({{1, B(2)}, {1, B(1)}});
    Step s = mu.apply(Side::Right, on);
    EXPECT_EQ(s.side, Side::Right);
    EXPECT_EQ(render(s.elem), "(1,2,-b2,o) (2,1,-b1,o)");
    EXPECT_EQ(mu.apply(Side::Right, s.elem).elem, Element(on));
}

TEST(Involution, MttTreeToDiagonal) {
    Pipeline p = happy_pipeline(2);
    Step s = p.invs[0].apply(Side::Left, TreeElem{{0, 2, 0}, 2});
    EXPECT_EQ(s.side, Side::Right);
    EXPECT_EQ(render(s.elem), "(0,0,+L,d) (1,1,+B2,d) (2,2,+B0,d)");
}

TEST(Involution, StageCounts) {
    for (int n = 1; n <= 6; ++n) {
        Pipeline h = happy_pipeline(n);
        EXPECT_EQ(h.stages.size(), static_cast<std::size_t>(2 * n + 4));
        EXPECT_EQ(h.invs.size() + 1, h.stages.size());
        Pipeline bl = blob_pipeline(n);
        EXPECT_EQ(bl.invs.size() + 1, bl.stages.size());
        EXPECT_EQ(bl.stages.back().id, "S" + std::to_string(n));
        Pipeline d = dandelion_pipeline(n);
        EXPECT_EQ(d.invs.size() + 1, d.stages.size());
        EXPECT_EQ(d.stages.back().id, "F" + std::to_string(n - 1) + "'");
    }
}

TEST(Involution, HappyFinalSwapExamples) {
    Pipeline p = happy_pipeline(6);
    const Involution& phi = involution(p, "phi7");
    MonoElem x{1, {B(3), B(4), B(6), B(0), B(2), B(0)}};
    Step s = phi.apply(Side::Left, x);
    EXPECT_EQ(s.side, Side::Left);
    EXPECT_EQ(std::get<MonoElem>(s.elem), (MonoElem{-1, {B(6), B(4), b(3), B(0), B(2), B(0)}}));
    EXPECT_EQ(phi.apply(Side::Left, s.elem).elem, Element(x));

    Step z = phi.apply(Side::Left, MonoElem{1, {B(0), B(1), B(6), B(2), B(4), B(2)}});
    EXPECT_EQ(z.side, Side::Right);
    EXPECT_EQ(std::get<MonoElem>(z.elem), (MonoElem{1, {b(0), B(1), B(6), B(2), B(4), B(2)}}));

    Step w = phi.apply(Side::Left, MonoElem{-1, {B(4), B(3), B(0), B(3), b(5), B(1)}});
    EXPECT_EQ(std::get<MonoElem>(w.elem), (MonoElem{1, {B(5), B(3), B(0), B(3), B(4), B(1)}}));
}

TEST(Involution, HappyLastArrayStage) {
    Pipeline p = happy_pipeline(2);
    const Involution& phi = involution(p, "phi2'");
    ArrayElem a;
    a.lo = 0;
    a.cols = {1, 0, 2};
    a.terms = {{-1, b(1)}, {-1, {SymKind::lambda, 0}}, {1, B(0)}};
    Step s = phi.apply(Side::Left, a);
    EXPECT_EQ(std::get<MonoElem>(s.elem), (MonoElem{-1, {b(1), B(0)}}));
    EXPECT_EQ(phi.apply(Side::Right, s.elem).elem, Element(a));
}

TEST(Involution, BlobFinalMonomial) {
    Pipeline p = blob_pipeline(3);
    const Involution& rho = involution(p, "rho3");
    Step s = rho.apply(Side::Left, diag({{1, b(0)}, {1, b(3)}, {1, b(0)}}));
    EXPECT_EQ(s.side, Side::Right);
    EXPECT_EQ(render(s.elem), "b0*b3*b0");
    EXPECT_EQ(-intrinsic_sign(s.elem), -1);
}

TEST(Involution, BlobLastCancellationLowersCase) {
    Pipeline p = blob_pipeline(3);
    const Involution& kappa = involution(p, "kappa2'");
    Step s = kappa.apply(Side::Left, diag({{1, B(0)}, {1, B(3)}, {1, B(1)}}));
    EXPECT_EQ(s.side, Side::Right);
    EXPECT_EQ(render(s.elem), "(1,1,+b0,d) (2,2,+b3,d) (3,3,+b1,d)");
    Step t = kappa.apply(Side::Left, diag({{1, B(3)}, {1, B(0)}, {1, B(2)}}));
    EXPECT_EQ(t.side, Side::Left);
    EXPECT_EQ(render(t.elem), "(1,1,-b3,o) (2,2,+B0,d) (3,3,+B2,d)");
}

TEST(Involution, AxiomsExhaustive) {
    for (int n = 1; n <= 3; ++n) {
        for (const Pipeline& p : all_pipelines(n)) {
            std::vector<std::set<std::string>> members(p.stages.size());
            for (std::size_t i = 0; i < p.stages.size(); ++i)
                p.stages[i].for_each([&](const Element& e) {
                    ASSERT_TRUE(p.stages[i].contains(e)) << p.stages[i].id;
                    members[i].insert(render(e) + "#" + std::to_string(intrinsic_sign(e)));
                });
            for (std::size_t k = 0; k < p.invs.size(); ++k) {
                const Involution& beta = p.invs[k];
                for (Side side : {Side::Left, Side::Right}) {
                    const Stage& st = p.stages[side == Side::Left ? k : k + 1];
                    st.for_each([&](const Element& x) {
                        Step y = beta.apply(side, x);
                        const Stage& to = p.stages[y.side == Side::Left ? k : k + 1];
                        ASSERT_TRUE(to.contains(y.elem)) << p.name << " " << beta.name << " " << render(y.elem);
                        int sx = side == Side::Left ? intrinsic_sign(x) : -intrinsic_sign(x);
                        int sy = y.side == Side::Left ? intrinsic_sign(y.elem) : -intrinsic_sign(y.elem);
                        ASSERT_EQ(sx, -sy) << p.name << " " << beta.name << " " << render(x);
                        Step back = beta.apply(y.side, y.elem);
                        ASSERT_EQ(back.side, side) << p.name << " " << beta.name;
                        ASSERT_EQ(back.elem, x) << p.name << " " << beta.name << " " << render(x);
                    });
                }
            }
            EXPECT_EQ(members.front().size(), tree_count(n));
            EXPECT_EQ(members.back().size(), tree_count(n));
        }
    }
}

TEST(Involution, TerminalStagesArePositive) {
    for (int n = 1; n <= 3; ++n)
        for (const Pipeline& p : all_pipelines(n))
            for (const Stage* st : {&p.stages.front(), &p.stages.back()})
                st->for_each([&](const Element& e) { ASSERT_EQ(intrinsic_sign(e), 1) << p.name << " " << st->id; });
}

TEST(Involution, HappyWalkExample) {
    std::vector<TraceLine> trace;
    EXPECT_EQ(happy_encode_matrix(RootedTree({2, 0}), &trace), (Code{2}));
    ASSERT_EQ(trace.size(), 42u);
    EXPECT_EQ(format_trace_line(1, trace[1]), "STEP 1 | stage=A0' | sign=- | (0,0,+L,d) (1,1,+B2,d) (2,2,+B0,d)");
    EXPECT_EQ(format_trace_line(13, trace[13]), "STEP 13 | stage=A3 | sign=- | B0*b2");
    EXPECT_EQ(format_trace_line(15, trace[15]), "STEP 15 | stage=A2' | sign=- | (0,2,-b2,o) (1,1,+B0,d) (2,0,-L,o)");
    EXPECT_EQ(format_trace_line(29, trace[29]), "STEP 29 | stage=A0' | sign=- | (0,0,+L,d) (1,1,+B0,d) (2,2,+B2,d)");
    EXPECT_EQ(format_trace_line(41, trace.back()), "STEP 41 | stage=A3' | sign=- | b0*B2");
}

TEST(Involution, BlobWalkExample) {
    std::vector<TraceLine> trace;
    EXPECT_EQ(blob_encode_matrix(RootedTree({3, 1, 0}), &trace), (Code{3, 1}));
    bool saw = false;
    for (const auto& line : trace) saw |= line.stage == "G1" && line.element == "tree(3 0 | 1)";
    EXPECT_TRUE(saw);
    EXPECT_EQ(trace.back().element, "b0*b3*b1");
    EXPECT_EQ(blob_encode_matrix(RootedTree({3, 3, 0, 0})), (Code{3, 3, 0}));
}

TEST(Involution, DandelionWalkExample) {
    std::vector<TraceLine> trace;
    EXPECT_EQ(dandelion_encode_matrix(RootedTree({3, 0, 4, 2}), &trace), (Code{2, 4, 3}));
    EXPECT_EQ(trace.back().element, "B2*B4*B3");
    for (const auto& line : trace)
        if (line.stage == "F3") EXPECT_EQ(line.element.rfind("tree(0 |", 0), 0u) << line.element;
}

TEST(Involution, EquivalenceExhaustive) {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& t : enumerate_trees(n)) {
            ASSERT_EQ(happy_encode_matrix(t), happy_encode(t)) << format_tree(t);
            ASSERT_EQ(blob_encode_matrix(t), blob_encode(t)) << format_tree(t);
            ASSERT_EQ(dandelion_encode_matrix(t), dandelion_encode(t)) << format_tree(t);
        }
    }
}

TEST(Involution, EquivalenceRandomFive) {
    Rng rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        RootedTree t = random_tree(5, rng);
        ASSERT_EQ(happy_encode_matrix(t), happy_encode(t)) << format_tree(t);
        ASSERT_EQ(blob_encode_matrix(t), blob_encode(t)) << format_tree(t);
        ASSERT_EQ(dandelion_encode_matrix(t), dandelion_encode(t)) << format_tree(t);
    }
}

TEST(Involution, BackwardWalksDecode) {
    for (int n = 1; n <= 4; ++n) {
        for_each_code(n, [&](const Code& c) {
            ASSERT_EQ(happy_decode_matrix(c, n), happy_decode(c));
            ASSERT_EQ(blob_decode_matrix(c, n), blob_decode(c));
            ASSERT_EQ(dandelion_decode_matrix(c, n), dandelion_decode(c));
        });
    }
}

TEST(Involution, WalksStayInsideStages) {
    WalkOptions opt;
    opt.validate = true;
    for (int n = 1; n <= 3; ++n) {
        for (const Pipeline& p : all_pipelines(n)) {
            for (const auto& t : enumerate_trees(n)) {
                Element out = garsia_milne_walk(p, TreeElem{t.table(), n}, opt);
                ASSERT_TRUE(p.stages.back().contains(out));
            }
        }
    }
}

TEST(Involution, WalksFitTheBudgetAtFive) {
    const std::uint64_t budget = default_budget(5);
    for (const Pipeline& p : all_pipelines(5)) {
        for_each_tree(5, [&](const RootedTree& t) {
            std::vector<TraceLine> trace;
            WalkOptions opt;
            opt.trace = &trace;
            garsia_milne_walk(p, TreeElem{t.table(), 5}, opt);
            ASSERT_LE(trace.size(), budget);
        });
    }
}

TEST(Involution, StepBudget) {
    WalkOptions opt;
    opt.budget = 3;
    try {
        garsia_milne_walk(happy_pipeline(2), TreeElem{{0, 2, 0}, 2}, opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::StepBudgetExceeded);
    }
    setenv("TREECODEX_STEP_BUDGET", "5", 1);
    EXPECT_EQ(default_budget(4), 5u);
    unsetenv("TREECODEX_STEP_BUDGET");
    EXPECT_EQ(default_budget(2), 64u);
}

TEST(Involution, SizeCap) {
    try {
        happy_encode_matrix(random_tree(9, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BoundExceeded);
    }
}
