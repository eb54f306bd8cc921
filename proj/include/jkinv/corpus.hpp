#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jkinv/lie_algebra.hpp"
#include "jkinv/verdict.hpp"

namespace jk {

struct CorpusVariant {
  std::string name;
  std::filesystem::path file;
  std::string note;
};

/// One row of a corpus manifest (manifest.json in the corpus directory).
struct CorpusEntry {
  std::string name;
  std::filesystem::path file;  // absolute
  std::optional<Verdict> expected;
  std::string provenance;
  std::string note;
  std::optional<CorpusVariant> variant;
};

/// Entries sorted by name. A directory without a manifest is an empty corpus.
/// Throws IoError / ParseError for unreadable or malformed manifests.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// Loads and parses a definition file of either format.
LieAlgebra load_algebra(const std::filesystem::path& file);

/// Orders "L_2" before "L_10" by comparing digit runs numerically.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace jk
