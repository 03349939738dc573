#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "treecodex/blob.hpp"
#include "treecodex/codec.hpp"
#include "treecodex/forest.hpp"
#include "treecodex/involution.hpp"
#include "treecodex/matrix.hpp"
#include "verify.hpp"

namespace treecodex::cli {

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string codec;
    std::string tree;
    std::string file;
    std::string code;
    std::string forest;
    std::string method = "default";
    std::string checks = "roundtrip,bijectivity,equivalence,fast,mtt,ucsd,reversal,forest";
    int n = 0;
    int k = 0;
    int max_n = 4;
    int count = 1;
    std::uint64_t seed = 1;
    bool show = false;
    bool weighted = false;
};

std::vector<std::string> trees_in(const Opts& o) {
    if (!o.tree.empty()) return {o.tree};
    if (o.file.empty()) throw Usage("a tree is required (--tree or --file)");
    std::ifstream in(o.file);
    if (!in) throw Error(Errc::InvalidInput, "cannot read " + o.file);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);)
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    return lines;
}

Codec codec_of(const Opts& o) {
    if (o.codec.empty()) throw Usage("--codec is required");
    return parse_codec(o.codec);
}

Method method_of(const Opts& o, Codec c) {
    Method m = parse_method(o.method);
    if (m == Method::Matrix && !has_matrix_method(c)) throw Usage("the prufer code has no matrix method");
    return m;
}

ForestCodec forest_codec(Codec c) {
    switch (c) {
        case Codec::Blob: return ForestCodec::Blob;
        case Codec::Happy: return ForestCodec::Happy;
        case Codec::Dandelion: return ForestCodec::Dandelion;
        default: throw Usage("forests support blob, happy and dandelion");
    }
}

void cmd_encode(const Opts& o, std::ostream& out) {
    const Codec c = codec_of(o);
    if (!o.forest.empty()) {
        out << format_forest_code(forest_encode(parse_forest(o.forest), forest_codec(c))) << '\n';
        return;
    }
    const Method m = method_of(o, c);
    if (o.weighted && c != Codec::Blob) throw Usage("--weighted applies to the blob code");
    for (const auto& line : trees_in(o)) {
        RootedTree t = parse_tree(line);
        if (o.weighted) out << format_weighted(blob_encode_weighted(t)) << '\n';
        else out << format_code(encode(t, c, m)) << '\n';
    }
}

void cmd_decode(const Opts& o, std::ostream& out) {
    const Codec c = codec_of(o);
    if (o.k > 0) {
        out << format_forest(forest_decode(parse_forest_code(o.code, o.k), forest_codec(c))) << '\n';
        return;
    }
    const Method m = method_of(o, c);
    if (o.weighted) {
        if (c != Codec::Blob) throw Usage("--weighted applies to the blob code");
        out << format_tree(blob_decode_weighted(parse_weighted(o.code))) << '\n';
        return;
    }
    Code code = parse_code(o.code);
    if (code.empty() && o.n == 0) throw Usage("--n is required when the code is empty");
    if (o.n != 0) check_code(code, o.n);
    out << format_tree(decode(code, c, m)) << '\n';
}

void cmd_random(const Opts& o, std::ostream& out) {
    if (o.n < 1) throw Usage("--n must be positive");
    Rng rng(o.seed);
    std::optional<Codec> c;
    if (!o.codec.empty()) c = parse_codec(o.codec);
    for (int i = 0; i < o.count; ++i) {
        RootedTree t = random_tree(o.n, rng);
        out << format_tree(t);
        if (c) out << '\t' << format_code(encode(t, *c));
        out << '\n';
    }
}

void cmd_enumerate(const Opts& o, std::ostream& out) {
    if (o.n < 1) throw Usage("--n must be positive");
    std::optional<Codec> c;
    if (!o.codec.empty()) c = parse_codec(o.codec);
    for_each_tree(o.n, [&](const RootedTree& t) {
        out << format_tree(t);
        if (c) out << '\t' << format_code(encode(t, *c));
        out << '\n';
    });
}

int cmd_verify(const Opts& o, std::ostream& out) {
    if (o.max_n < 1 || o.max_n > 6) throw Usage("--max-n must lie in 1..6");
    std::vector<std::string> checks;
    std::stringstream ss(o.checks);
    for (std::string name; std::getline(ss, name, ',');) {
        if (name == "all") {
            checks.insert(checks.end(), kCheckNames.begin(), kCheckNames.end());
            continue;
        }
        if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end())
            throw Usage("unknown check \"" + name + "\"");
        checks.push_back(name);
    }
    auto results = verify_suite(o.max_n, checks, o.show);
    print_report(out, results);
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; }) ? 0 : 1;
}

void cmd_stats(const Opts& o, std::ostream& out) {
    WeightedCode tokens;
    if (!o.code.empty()) {
        tokens = parse_weighted(o.code);
    } else {
        tokens = blob_encode_weighted(parse_tree(trees_in(o).front()));
        out << "code " << format_weighted(tokens) << '\n';
    }
    auto rows = poly::code_stats(tokens);
    out << "vertex I_A I_D O_A O_D\n";
    for (std::size_t v = 0; v < rows.size(); ++v)
        out << v << ' ' << rows[v].in_ascending << ' ' << rows[v].in_descending << ' ' << rows[v].out_ascending
            << ' ' << rows[v].out_descending << '\n';
}

void cmd_compare(const Opts& o, std::ostream& out) {
    RootedTree t = parse_tree(trees_in(o).front());
    for (Codec c : kAllCodecs) out << std::left << std::setw(10) << codec_name(c) << format_code(encode(t, c)) << '\n';
}

void cmd_trace(const Opts& o, std::ostream& out) {
    const Codec c = codec_of(o);
    if (!has_matrix_method(c)) throw Usage("trace supports blob, happy and dandelion");
    RootedTree t = parse_tree(trees_in(o).front());
    if (t.n() > inv::kPipelineBound)
        throw Error(Errc::BoundExceeded, "trace limited to n <= " + std::to_string(inv::kPipelineBound));
    std::vector<inv::TraceLine> trace;
    Code code = c == Codec::Blob    ? inv::blob_encode_matrix(t, &trace)
                : c == Codec::Happy ? inv::happy_encode_matrix(t, &trace)
                                    : inv::dandelion_encode_matrix(t, &trace);
    for (std::size_t k = 0; k < trace.size(); ++k) out << inv::format_trace_line(k, trace[k]) << '\n';
    out << "CODE " << format_code(code) << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Encode, decode and verify labelled rooted trees with the Prufer, Blob, Happy and Dandelion codes",
                 "treecodex"};
    app.require_subcommand(1, 1);
    Opts o;

    auto tree_opts = [&](CLI::App* s) {
        auto* t = s->add_option("--tree", o.tree, "successor list \"s1 s2 ... sn\"");
        auto* f = s->add_option("--file", o.file, "file with one tree per line");
        t->excludes(f);
        return t;
    };
    auto codec_opt = [&](CLI::App* s) {
        return s->add_option("--codec", o.codec, "prufer, blob, happy or dandelion")
            ->check(CLI::IsMember({"prufer", "blob", "happy", "dandelion"}));
    };
    auto method_opt = [&](CLI::App* s) {
        s->add_option("--method", o.method, "surgery, fast or matrix")
            ->check(CLI::IsMember({"default", "surgery", "fast", "matrix"}));
    };

    auto* enc = app.add_subcommand("encode", "tree to code");
    codec_opt(enc)->required();
    auto* enc_tree = tree_opts(enc);
    method_opt(enc);
    auto* enc_forest = enc->add_option("--forest", o.forest, "forest \"k=K; s1 ... sm\"");
    enc_forest->excludes(enc_tree);
    enc->add_flag("--weighted", o.weighted, "blob code with a_ij / b_j tokens");

    auto* dec = app.add_subcommand("decode", "code to tree");
    codec_opt(dec)->required();
    dec->add_option("--code", o.code, "code \"c1,c2,...\"")->required();
    dec->add_option("--n", o.n, "tree size, needed when the code is empty")->check(CLI::PositiveNumber);
    method_opt(dec);
    dec->add_option("--k", o.k, "decode a forest code \"r | c1,...\" with k roots")->check(CLI::PositiveNumber);
    dec->add_flag("--weighted", o.weighted, "blob code with a_ij / b_j tokens");

    auto* rnd = app.add_subcommand("random", "uniform random trees");
    rnd->add_option("--n", o.n, "tree size")->required();
    rnd->add_option("--seed", o.seed, "generator seed");
    rnd->add_option("--count", o.count, "number of trees")->check(CLI::NonNegativeNumber);
    codec_opt(rnd);

    auto* en = app.add_subcommand("enumerate", "every tree on n vertices");
    en->add_option("--n", o.n, "tree size")->required();
    codec_opt(en);

    auto* ver = app.add_subcommand("verify", "run identity checks");
    ver->add_option("--checks", o.checks, "comma list of roundtrip, bijectivity, equivalence, fast, mtt, ucsd, "
                                          "reversal, forest, or all");
    ver->add_option("--max-n", o.max_n, "largest n, at most 6");
    ver->add_flag("--show", o.show, "print the polynomials checked");

    auto* st = app.add_subcommand("stats", "ascent and descent degrees from a weighted blob code");
    auto* st_tree = tree_opts(st);
    st->add_option("--code", o.code, "weighted code \"b0,a1_3,...\"")->excludes(st_tree);

    auto* cmp = app.add_subcommand("compare", "all four codes of one tree");
    tree_opts(cmp);

    auto* tr = app.add_subcommand("trace", "involution walk from a tree to its code");
    codec_opt(tr)->required();
    tree_opts(tr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (enc->parsed()) cmd_encode(o, out);
        else if (dec->parsed()) cmd_decode(o, out);
        else if (rnd->parsed()) cmd_random(o, out);
        else if (en->parsed()) cmd_enumerate(o, out);
        else if (ver->parsed()) return cmd_verify(o, out);
        else if (st->parsed()) cmd_stats(o, out);
        else if (cmp->parsed()) cmd_compare(o, out);
        else if (tr->parsed()) cmd_trace(o, out);
    } catch (const Usage& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace treecodex::cli
