#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

namespace {

struct Out {
    int rc;
    std::string out;
    std::string err;
};

Out run(std::vector<std::string> args) {
    args.insert(args.begin(), "treecodex");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = treecodex::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EncodePrufer) {
    auto r = run({"encode", "--codec", "prufer", "--tree", "6 4 2 0 4 2 4"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out, "6,2,4,2,4,4\n");
}

TEST(Cli, CompareTable) {
    auto r = run({"compare", "--tree", "6 4 2 0 4 2 4"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out,
              "blob      6,4,2,4,2,4\n"
              "happy     6,2,2,4,4,4\n"
              "dandelion 4,2,2,4,6,4\n"
              "prufer    6,2,4,2,4,4\n");
}

TEST(Cli, EmptyCode) {
    EXPECT_EQ(run({"decode", "--codec", "dandelion", "--code", "", "--n", "1"}).out, "0\n");
    EXPECT_EQ(run({"decode", "--codec", "dandelion", "--code", ""}).rc, 2);
}

TEST(Cli, EncodeDecodeIdentity) {
    for (const char* codec : {"prufer", "blob", "happy", "dandelion"}) {
        for (const char* method : {"surgery", "fast", "matrix"}) {
            if (std::string(codec) == "prufer" && std::string(method) == "matrix") continue;
            auto rand = run({"random", "--n", "7", "--seed", "11", "--count", "5"});
            std::istringstream lines(rand.out);
            for (std::string tree; std::getline(lines, tree);) {
                auto e = run({"encode", "--codec", codec, "--method", method, "--tree", tree});
                ASSERT_EQ(e.rc, 0) << e.err;
                auto d = run({"decode", "--codec", codec, "--method", method, "--code", e.out.substr(0, e.out.size() - 1)});
                ASSERT_EQ(d.rc, 0) << d.err;
                EXPECT_EQ(d.out, tree + "\n");
            }
        }
    }
}

TEST(Cli, Deterministic) {
    auto a = run({"random", "--n", "30", "--seed", "4", "--count", "3", "--codec", "blob"});
    auto b = run({"random", "--n", "30", "--seed", "4", "--count", "3", "--codec", "blob"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).rc, 2);
    EXPECT_EQ(run({"encode", "--codec", "nope", "--tree", "0"}).rc, 2);
    EXPECT_EQ(run({"encode", "--codec", "blob", "--tree", "0", "--file", "x"}).rc, 2);
    EXPECT_EQ(run({"encode", "--codec", "prufer", "--method", "matrix", "--tree", "0"}).rc, 2);
    EXPECT_EQ(run({"verify", "--max-n", "7"}).rc, 2);
    EXPECT_EQ(run({"verify", "--checks", "bogus"}).rc, 2);
    auto cyc = run({"encode", "--codec", "blob", "--tree", "2 1"});
    EXPECT_EQ(cyc.rc, 1);
    EXPECT_NE(cyc.err.find("CycleFound"), std::string::npos);
    auto big = run({"encode", "--codec", "happy", "--method", "matrix", "--tree", "0 0 0 0 0 0 0 0 0"});
    EXPECT_EQ(big.rc, 1);
    EXPECT_NE(big.err.find("BoundExceeded"), std::string::npos);
    EXPECT_EQ(run({"decode", "--codec", "blob", "--code", "9"}).rc, 1);
    EXPECT_EQ(run({"--help"}).rc, 0);
}

TEST(Cli, Verify) {
    auto r = run({"verify", "--checks", "roundtrip,mtt", "--max-n", "3"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out.rfind("PASS roundtrip n<=3 ", 0), 0u);
    EXPECT_NE(r.out.find("\nPASS mtt n<=3 "), std::string::npos);
    auto s = run({"verify", "--checks", "mtt", "--max-n", "2", "--show"});
    EXPECT_NE(s.out.find("det uniform-b n=2 = b0^2 + b0*b1 + b0*b2"), std::string::npos);
}

TEST(Cli, StatsAndForests) {
    auto r = run({"stats", "--code", "b0,a1_3,b2,b0,a4_5"});
    EXPECT_EQ(r.out,
              "vertex I_A I_D O_A O_D\n0 0 2 0 0\n1 0 0 1 0\n2 0 1 0 1\n3 1 0 0 1\n4 0 0 1 0\n5 1 0 0 1\n");
    EXPECT_EQ(run({"stats", "--code", "b1"}).rc, 1);
    auto f = run({"encode", "--codec", "blob", "--forest", "k=2; 3 -1 -2"});
    ASSERT_EQ(f.rc, 0);
    auto g = run({"decode", "--codec", "blob", "--k", "2", "--code", f.out.substr(0, f.out.size() - 1)});
    EXPECT_EQ(g.out, "k=2; 3 -1 -2\n");
}

TEST(Cli, Trace) {
    auto r = run({"trace", "--codec", "happy", "--tree", "4 3 0 2"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out.rfind("STEP 0 | stage=", 0), 0u);
    EXPECT_NE(r.out.find("\nCODE "), std::string::npos);
}
