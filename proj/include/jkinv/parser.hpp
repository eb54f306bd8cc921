#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "jkinv/lie_algebra.hpp"
#include "jkinv/polynomial.hpp"

namespace jk {

enum class SourceFormat { text, structured };

struct SourceDoc {
  std::string text;
  std::string origin;  // path or "<inline>"
  SourceFormat format = SourceFormat::text;
};

/// Reads a file; `.json` selects the structured format, anything else the text DSL.
/// Throws IoError when the file cannot be read.
SourceDoc load_source(const std::filesystem::path& path);

/// Parses the polynomial display format over `registry`
/// (`+ - * / ^`, parentheses, integer literals, implicit products like `2x1`).
/// Division is only by nonzero constants. Throws ParseError with a 1-based column.
Polynomial parse_polynomial(std::string_view text, const RegistryPtr& registry);

/// Text DSL:
///
///     # comment
///     dim 7
///     param a != 0
///     [e1,e7] = -a*e1
///     [e6,e3] = (1+a)*e3
///
/// Reversed pairs are negated into canonical order; a repeated pair must agree.
LieAlgebra parse_text(const SourceDoc& doc);

/// JSON document `{"dim": n, "params": [{"name", "nonzero"}], "brackets": [{"i", "j", "terms": {"k": "coef"}}]}`.
LieAlgebra parse_structured(const SourceDoc& doc);
LieAlgebra parse_structured(const nlohmann::json& doc);

/// Dispatches on doc.format.
LieAlgebra parse(const SourceDoc& doc);

/// Canonical text rendering; parse_text(emit_text(alg)) == alg.
std::string emit_text(const LieAlgebra& alg);
nlohmann::json emit_structured(const LieAlgebra& alg);

}  // namespace jk
