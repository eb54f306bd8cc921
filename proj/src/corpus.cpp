#include "jkinv/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "jkinv/error.hpp"
#include "jkinv/parser.hpp"

namespace jk {

namespace {

std::string field(const nlohmann::json& obj, const char* key, const std::string& where, bool required) {
  if (!obj.contains(key)) {
    if (required) throw ParseError(where + "." + key + ": missing", 0, 0);
    return {};
  }
  if (!obj[key].is_string()) throw ParseError(where + "." + key + ": expected a string", 0, 0);
  return obj[key].get<std::string>();
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const Integer x(a.substr(i, ie - i)), y(b.substr(j, je - j));
      if (x != y) return x < y;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  const auto manifest = dir / "manifest.json";
  if (!std::filesystem::exists(manifest)) return {};
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot read " + manifest.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(manifest.string() + ": " + e.what(), 0, 0);
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError(manifest.string() + ": $.entries must be an array", 0, 0);
  }

  std::vector<CorpusEntry> out;
  for (std::size_t idx = 0; idx < doc["entries"].size(); ++idx) {
    const auto& e = doc["entries"][idx];
    const std::string where = "$.entries[" + std::to_string(idx) + "]";
    if (!e.is_object()) throw ParseError(where + ": expected an object", 0, 0);
    CorpusEntry entry;
    entry.name = field(e, "name", where, true);
    entry.file = dir / field(e, "file", where, true);
    if (const auto v = field(e, "expected", where, false); !v.empty()) {
      entry.expected = parse_verdict(v);
      if (!entry.expected) throw ParseError(where + ".expected: unknown verdict '" + v + "'", 0, 0);
    }
    entry.provenance = field(e, "provenance", where, false);
    if (entry.expected && entry.provenance.empty()) {
      throw ParseError(where + ".provenance: required when an expected verdict is given", 0, 0);
    }
    entry.note = field(e, "note", where, false);
    if (e.contains("variant")) {
      const auto& v = e["variant"];
      const std::string vw = where + ".variant";
      if (!v.is_object()) throw ParseError(vw + ": expected an object", 0, 0);
      entry.variant = CorpusVariant{field(v, "name", vw, true), dir / field(v, "file", vw, true),
                                    field(v, "note", vw, false)};
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return natural_less(a.name, b.name); });
  return out;
}

LieAlgebra load_algebra(const std::filesystem::path& file) { return parse(load_source(file)); }

}  // namespace jk
