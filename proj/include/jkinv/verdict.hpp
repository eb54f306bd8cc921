#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace jk {

/// Algebraic type of a generic pencil.
enum class Verdict { jordan, kronecker, mixed };

/// "Jordan", "Kronecker" or "Mixed".
std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

/// The program's closing line, e.g. "G is of Kronecker type."
std::string verdict_line(Verdict v);

}  // namespace jk
