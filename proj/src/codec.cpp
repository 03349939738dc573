#include "treecodex/codec.hpp"

#include <string>

#include "treecodex/blob.hpp"
#include "treecodex/dandelion.hpp"
#include "treecodex/happy.hpp"
#include "treecodex/involution.hpp"
#include "treecodex/prufer.hpp"

namespace treecodex {

const char* codec_name(Codec c) noexcept {
    switch (c) {
        case Codec::Prufer: return "prufer";
        case Codec::Blob: return "blob";
        case Codec::Happy: return "happy";
        case Codec::Dandelion: return "dandelion";
    }
    return "?";
}

const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::Default: return "default";
        case Method::Surgery: return "surgery";
        case Method::Fast: return "fast";
        case Method::Matrix: return "matrix";
    }
    return "?";
}

Codec parse_codec(std::string_view name) {
    for (Codec c : kAllCodecs)
        if (name == codec_name(c)) return c;
    throw Error(Errc::InvalidInput, "unknown codec \"" + std::string(name) + "\"");
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::Default, Method::Surgery, Method::Fast, Method::Matrix})
        if (name == method_name(m)) return m;
    throw Error(Errc::InvalidInput, "unknown method \"" + std::string(name) + "\"");
}

bool has_matrix_method(Codec c) noexcept { return c != Codec::Prufer; }

namespace {

void check_matrix(Codec c, int n) {
    if (!has_matrix_method(c)) throw Error(Errc::PreconditionViolated, "the prufer code has no matrix method");
    if (n > inv::kPipelineBound)
        throw Error(Errc::BoundExceeded,
                    "matrix method limited to n <= " + std::to_string(inv::kPipelineBound));
}

}  // namespace

Code encode(const RootedTree& t, Codec c, Method m) {
    if (m == Method::Matrix) {
        check_matrix(c, t.n());
        switch (c) {
            case Codec::Blob: return inv::blob_encode_matrix(t);
            case Codec::Happy: return inv::happy_encode_matrix(t);
            default: return inv::dandelion_encode_matrix(t);
        }
    }
    switch (c) {
        case Codec::Prufer: return prufer_encode(t);
        case Codec::Blob: return blob_encode(t);
        case Codec::Happy: return m == Method::Surgery ? happy_encode(t) : happy_encode_fast(t.successors());
        case Codec::Dandelion: return m == Method::Surgery ? dandelion_encode(t) : dandelion_encode_fast(t);
    }
    return {};
}

RootedTree decode(const Code& code, Codec c, Method m) {
    const int n = static_cast<int>(code.size()) + 1;
    if (m == Method::Matrix) {
        check_matrix(c, n);
        check_code(code, n);
        switch (c) {
            case Codec::Blob: return inv::blob_decode_matrix(code, n);
            case Codec::Happy: return inv::happy_decode_matrix(code, n);
            default: return inv::dandelion_decode_matrix(code, n);
        }
    }
    switch (c) {
        case Codec::Prufer: return prufer_decode(code);
        case Codec::Blob: return blob_decode(code);
        case Codec::Happy: return happy_decode(code);
        case Codec::Dandelion: return m == Method::Surgery ? dandelion_decode_surgery(code) : dandelion_decode(code);
    }
    return {};
}

}  // namespace treecodex
