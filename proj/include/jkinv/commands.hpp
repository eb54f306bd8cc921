#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jkinv/corpus.hpp"
#include "jkinv/error.hpp"
#include "jkinv/verdict.hpp"

namespace jk {

/// Bad command-line usage (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { exit_ok = 0, exit_domain = 1, exit_usage = 2 };

struct TableOutcome {
  std::string name;
  std::optional<Verdict> verdict;  // nullopt when the definition is invalid
  std::string detail;              // failure reason or disagreeing samples
  bool samples_agree = true;
};

struct TableRow {
  CorpusEntry entry;
  TableOutcome primary;
  std::optional<TableOutcome> variant;

  /// The primary definition, or failing that its variant, gives the expected
  /// verdict both symbolically and at every sample. Rows without an
  /// expectation always match.
  bool matches() const;
};

struct TableResult {
  std::vector<TableRow> rows;
  double millis = 0.0;

  bool all_match() const;
  /// Two-column table grouped by verdict, then a mismatch diff if any.
  std::string render() const;
};

/// Classifies every corpus entry (and variant) symbolically and at `samples`
/// random parameter bindings per family.
TableResult build_table(const std::filesystem::path& dir, std::size_t samples, std::uint64_t seed);

/// Entry point of the jkinv tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jk
