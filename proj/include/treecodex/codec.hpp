#pragma once

// Name-based dispatch over the four codes and their implementations.

#include <string_view>
#include <vector>

#include "treecodex/tree.hpp"

namespace treecodex {

enum class Codec { Prufer, Blob, Happy, Dandelion };
// Default: fast where a separate fast algorithm exists, else surgery.
// Prufer and Blob have a single implementation serving both.
enum class Method { Default, Surgery, Fast, Matrix };

inline constexpr Codec kAllCodecs[] = {Codec::Blob, Codec::Happy, Codec::Dandelion, Codec::Prufer};

const char* codec_name(Codec c) noexcept;
const char* method_name(Method m) noexcept;
// Throw InvalidInput on unknown names.
Codec parse_codec(std::string_view name);
Method parse_method(std::string_view name);

bool has_matrix_method(Codec c) noexcept;

// Matrix methods throw BoundExceeded for n > 8 and PreconditionViolated for
// the Prufer code.
Code encode(const RootedTree& t, Codec c, Method m = Method::Default);
RootedTree decode(const Code& code, Codec c, Method m = Method::Default);

}  // namespace treecodex
