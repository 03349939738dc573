#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <set>

#include "treecodex/codec.hpp"
#include "treecodex/forest.hpp"
#include "treecodex/happy.hpp"
#include "treecodex/dandelion.hpp"
#include "treecodex/matrix.hpp"

namespace treecodex::cli {

namespace {

constexpr std::size_t kMaxNotes = 5;

struct Ctx {
    CheckResult& r;
    void fail(const std::string& what) {
        r.pass = false;
        if (r.notes.size() < kMaxNotes) r.notes.push_back("counterexample " + what);
    }
};

std::string q(const std::string& s) { return "\"" + s + "\""; }

void roundtrip(Ctx c, int max_n) {
    for (int n = 1; n <= max_n; ++n)
        for (Codec k : kAllCodecs) {
            for_each_tree(n, [&](const RootedTree& t) {
                Code code = encode(t, k);
                if (decode(code, k) != t) c.fail(std::string(codec_name(k)) + " tree=" + q(format_tree(t)));
            });
            for_each_code(n, [&](const Code& code) {
                if (encode(decode(code, k), k) != code)
                    c.fail(std::string(codec_name(k)) + " code=" + q(format_code(code)));
            });
        }
}

void bijectivity(Ctx c, int max_n) {
    for (int n = 1; n <= max_n; ++n)
        for (Codec k : kAllCodecs) {
            std::set<std::vector<int>> seen;
            for_each_code(n, [&](const Code& code) {
                RootedTree t = decode(code, k);
                if (!is_tree(t)) c.fail(std::string(codec_name(k)) + " code=" + q(format_code(code)));
                seen.insert(t.successors());
            });
            if (seen.size() != tree_count(n))
                c.fail(std::string(codec_name(k)) + " n=" + std::to_string(n) + " distinct=" +
                       std::to_string(seen.size()));
        }
}

void equivalence(Ctx c, int max_n) {
    for (int n = 1; n <= max_n; ++n)
        for (Codec k : {Codec::Blob, Codec::Happy, Codec::Dandelion})
            for_each_tree(n, [&](const RootedTree& t) {
                if (encode(t, k, Method::Matrix) != encode(t, k, Method::Surgery))
                    c.fail(std::string(codec_name(k)) + " tree=" + q(format_tree(t)));
            });
}

void fast(Ctx c, int max_n) {
    for (int n = 1; n <= max_n; ++n) {
        for_each_tree(n, [&](const RootedTree& t) {
            if (happy_encode_fast(t.successors()) != happy_encode(t)) c.fail("happy tree=" + q(format_tree(t)));
            if (dandelion_encode_fast(t) != dandelion_encode(t)) c.fail("dandelion tree=" + q(format_tree(t)));
        });
        for_each_code(n, [&](const Code& code) {
            if (dandelion_decode(code) != dandelion_decode_surgery(code))
                c.fail("dandelion code=" + q(format_code(code)));
        });
    }
}

void mtt(Ctx c, int max_n, bool show) {
    for (int n = 1; n <= max_n; ++n)
        for (auto w : {poly::Weighting::UniformB, poly::Weighting::Ucsd}) {
            const char* wn = w == poly::Weighting::UniformB ? "uniform-b" : "ucsd";
            poly::MultiPoly d = poly::det(poly::laplacian(n, w).reduced());
            if (d != poly::tree_weight_sum(n, w)) c.fail(std::string(wn) + " n=" + std::to_string(n));
            if (w == poly::Weighting::UniformB) {
                poly::MultiPoly sum;
                for (int j = 0; j <= n; ++j) sum += poly::MultiPoly(poly::Var::bv(j));
                if (d != poly::MultiPoly(poly::Var::bv(0)) * sum.pow(n - 1) ||
                    d.coefficient_sum() != poly::Int(tree_count(n)))
                    c.fail("closed form n=" + std::to_string(n));
            }
            if (show) c.r.notes.push_back("det " + std::string(wn) + " n=" + std::to_string(n) + " = " + d.str());
        }
}

void ucsd(Ctx c, int max_n, bool show) {
    for (int n = 1; n <= max_n; ++n) {
        poly::MultiPoly p = poly::ucsd_product(n);
        if (p != poly::tree_weight_sum(n, poly::Weighting::Ucsd)) c.fail("n=" + std::to_string(n));
        if (show) c.r.notes.push_back("ucsd n=" + std::to_string(n) + " = " + p.str());
    }
}

void reversal(Ctx c, int max_n) {
    for (int n = 1; n <= max_n; ++n)
        for_each_tree(n, [&](const RootedTree& t) {
            if (happy_encode(reverse_path(t)) != dandelion_encode(t)) c.fail("tree=" + q(format_tree(t)));
        });
}

void forest(Ctx c, int max_n) {
    const ForestCodec codecs[] = {ForestCodec::Blob, ForestCodec::Happy, ForestCodec::Dandelion};
    for (int n = 1; n <= max_n; ++n)
        for (int k = 1; k <= n; ++k) {
            const int m = n - k + 1;
            for (auto codec : codecs) {
                std::set<std::vector<int>> seen;
                for_each_forest(k, m, [&](const RootedForest& f) {
                    ForestCode code = forest_encode(f, ForestCodec::Dandelion);
                    RootedForest g = forest_decode(code, codec);
                    seen.insert(g.successors());
                    if (forest_encode(g, codec) != code) c.fail("code=" + q(format_forest_code(code)));
                });
                if (seen.size() != forest_count(k, m))
                    c.fail("k=" + std::to_string(k) + " m=" + std::to_string(m) + " distinct=" +
                           std::to_string(seen.size()));
            }
            if (forest_determinant(k, m) != forest_weight_sum(k, m))
                c.fail("determinant k=" + std::to_string(k) + " m=" + std::to_string(m));
        }
}

}  // namespace

std::vector<CheckResult> verify_suite(int max_n, const std::vector<std::string>& checks, bool show) {
    std::vector<CheckResult> out;
    for (const auto& name : checks) {
        CheckResult r{name, "n<=" + std::to_string(max_n), true, 0, {}};
        Ctx c{r};
        auto start = std::chrono::steady_clock::now();
        try {
            if (name == "roundtrip") roundtrip(c, max_n);
            else if (name == "bijectivity") bijectivity(c, max_n);
            else if (name == "equivalence") equivalence(c, max_n);
            else if (name == "fast") fast(c, max_n);
            else if (name == "mtt") mtt(c, max_n, show);
            else if (name == "ucsd") ucsd(c, max_n, show);
            else if (name == "reversal") reversal(c, max_n);
            else if (name == "forest") forest(c, max_n);
            else throw Error(Errc::InvalidInput, "unknown check \"" + name + "\"");
        } catch (const Error& e) {
            c.fail(std::string("error ") + e.what());
        }
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

void print_report(std::ostream& out, const std::vector<CheckResult>& results) {
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << ' ' << r.scope << ' ' << std::fixed
            << std::setprecision(0) << r.elapsed_ms << "ms\n";
        for (const auto& note : r.notes) out << "  " << note << '\n';
    }
}

}  // namespace treecodex::cli
