#include "jkinv/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "jkinv/classify.hpp"
#include "jkinv/oracle.hpp"
#include "jkinv/parser.hpp"

namespace jk {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ParamBinding parse_bindings(const std::vector<std::string>& specs, const LieAlgebra& alg) {
  ParamBinding out;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects NAME=VALUE, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    const bool declared = std::any_of(alg.params().begin(), alg.params().end(),
                                      [&](const ParamDecl& p) { return p.name == name; });
    if (!declared) throw UsageError("unknown parameter '" + name + "'");
    try {
      out[name] = parse_rational(spec.substr(eq + 1));
    } catch (const ParseError& e) {
      throw UsageError("--param " + name + ": " + e.bare_message());
    }
  }
  if (!out.empty()) {
    for (const auto& p : alg.params()) {
      if (!out.contains(p.name)) throw UsageError("parameter '" + p.name + "' is not bound");
    }
  }
  return out;
}

std::string display_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

TableOutcome classify_outcome(const std::string& name, const std::filesystem::path& file, std::size_t samples,
                              std::uint64_t seed) {
  TableOutcome outcome{.name = name, .verdict = std::nullopt, .detail = {}, .samples_agree = true};
  const LieAlgebra alg = load_algebra(file);
  try {
    if (alg.has_params() && samples > 0) {
      const FamilyReport family = classify_family(alg, samples, seed, name);
      outcome.verdict = family.symbolic.verdict;
      outcome.samples_agree = family.all_agree();
      for (const auto& s : family.samples) {
        if (!s.agrees) {
          outcome.detail += "sample " + binding_to_string(s.binding) + " gives " +
                            std::string(to_string(s.report.verdict)) + "; ";
        }
      }
    } else {
      outcome.verdict = classify(alg, name).verdict;
    }
  } catch (const InvalidAlgebra& e) {
    const auto& v = e.report().violations;
    outcome.detail = "Jacobi identity fails";
    if (!v.empty()) {
      outcome.detail += " at (" + std::to_string(v[0].i) + "," + std::to_string(v[0].j) + "," +
                        std::to_string(v[0].k) + "; e" + std::to_string(v[0].m) + ")";
      if (v.size() > 1) outcome.detail += " and " + std::to_string(v.size() - 1) + " more";
    }
  }
  return outcome;
}

std::string outcome_text(const TableOutcome& o) {
  std::string s = o.verdict ? std::string(to_string(*o.verdict)) : "invalid";
  if (!o.detail.empty()) s += " (" + o.detail + ")";
  return s;
}

bool outcome_matches(const TableOutcome& o, Verdict expected) {
  return o.verdict == expected && o.samples_agree;
}

// ---------------------------------------------------------------------------

void print_validation(const ValidationReport& report, std::ostream& out) {
  if (report.ok()) {
    out << "ok\n";
  } else {
    out << report.to_string();
    if (!report.to_string().ends_with('\n')) out << '\n';
  }
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const ValidationReport report = validate(load_algebra(path));
  print_validation(report, out);
  return report.ok() ? exit_ok : exit_domain;
}

int cmd_classify(const std::string& path, const std::vector<std::string>& params, std::size_t samples,
                 std::uint64_t seed, const std::string& format, std::ostream& out) {
  LieAlgebra alg = load_algebra(path);
  const std::string name = display_name(path);
  const ParamBinding binding = parse_bindings(params, alg);
  if (!binding.empty()) alg = substitute_params(alg, binding);

  std::optional<FamilyReport> family;
  ClassificationReport report = [&] {
    if (alg.has_params() && samples > 0) {
      family = classify_family(alg, samples, seed, name);
      return family->symbolic;
    }
    return classify(alg, name);
  }();
  if (!binding.empty()) report.notes.push_back("parameters: " + binding_to_string(binding));

  const FamilyReport* fam = family ? &*family : nullptr;
  if (format == "structured") {
    out << render_structured(report, alg, fam).dump(2) << '\n';
  } else {
    out << render_text(report, fam);
  }
  return fam != nullptr && !fam->all_agree() ? exit_domain : exit_ok;
}

int cmd_index(const std::string& path, std::ostream& out) {
  const ClassificationReport r = classify(load_algebra(path), display_name(path));
  out << "n = " << r.n << "\ngeneric rank = " << r.generic_rank << "\nindex = " << r.index << '\n';
  return exit_ok;
}

int cmd_charpoly(const std::string& path, std::ostream& out) {
  const ClassificationReport r = classify(load_algebra(path), display_name(path));
  out << "p_0 = " << r.p0.to_string() << "\np(lambda) = " << r.p_lambda.to_string() << '\n';
  return exit_ok;
}

int cmd_table(const std::string& dir, std::size_t samples, std::uint64_t seed, std::ostream& out) {
  const TableResult table = build_table(dir, samples, seed);
  out << table.render();
  return table.all_match() ? exit_ok : exit_domain;
}

int cmd_check(const std::string& path, const std::vector<std::string>& params, std::size_t trials,
              std::uint64_t seed, std::ostream& out) {
  LieAlgebra alg = load_algebra(path);
  const ParamBinding binding = parse_bindings(params, alg);
  if (!binding.empty()) alg = substitute_params(alg, binding);
  if (alg.has_params()) throw UsageError("bind every parameter with --param NAME=VALUE");

  const oracle::CrossCheckReport report = oracle::cross_check(alg, trials, seed);
  out << "algebra: " << display_name(path) << '\n';
  if (!binding.empty()) out << "parameters: " << binding_to_string(binding) << '\n';
  out << "classify: " << to_string(report.expected.verdict) << ", index " << report.expected.index << '\n';
  out << "seed: " << seed << '\n';
  out << "convention: " << oracle::PencilTypeReport::convention << '\n';
  for (std::size_t t = 0; t < report.trials.size(); ++t) {
    const auto& r = report.trials[t].result;
    out << "trial " << t + 1 << ": " << std::left << std::setw(10) << to_string(r.type) << " rank " << r.rank
        << "  corank " << r.corank << "  jordan size " << r.jordan_size();
    if (!r.characteristic.rational_roots.empty()) {
      out << "  lambda:";
      for (const auto& [root, mult] : r.characteristic.rational_roots) {
        out << ' ' << root.get_str();
        if (mult > 1) out << "^" << mult;
      }
    }
    if (r.characteristic.residual.degree() > 0) out << "  other: " << r.characteristic.residual.to_string();
    out << "  " << (report.trials[t].agrees ? "agrees" : "DISAGREES") << '\n';
  }
  out << "agreement: " << report.agreeing() << "/" << report.trials.size() << '\n';
  return report.passed() ? exit_ok : exit_domain;
}

}  // namespace

// ---------------------------------------------------------------------------
// Table
// ---------------------------------------------------------------------------

bool TableRow::matches() const {
  if (!entry.expected) return true;
  if (outcome_matches(primary, *entry.expected)) return true;
  return variant && outcome_matches(*variant, *entry.expected);
}

bool TableResult::all_match() const {
  return std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.matches(); });
}

std::string TableResult::render() const {
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& row : rows) {
    const std::string key = row.primary.verdict ? std::string(to_string(*row.primary.verdict)) : "invalid";
    groups[key].push_back(row.entry.name);
    if (row.variant) {
      const std::string vkey = row.variant->verdict ? std::string(to_string(*row.variant->verdict)) : "invalid";
      groups[vkey].push_back(row.variant->name);
    }
  }

  std::ostringstream out;
  const std::vector<std::string> order{"Jordan", "Mixed", "Kronecker", "invalid"};
  std::size_t width = 7;
  std::vector<std::pair<std::string, std::string>> lines;
  for (const auto& key : order) {
    if (!groups.contains(key)) continue;
    std::string names;
    for (const auto& n : groups[key]) names += (names.empty() ? "" : ", ") + n;
    width = std::max(width, names.size());
    lines.emplace_back(names, key);
  }
  out << std::left << std::setw(static_cast<int>(width)) << "Algebra" << " | Type\n";
  out << std::string(width, '-') << "-+-" << std::string(9, '-') << '\n';
  for (const auto& [names, key] : lines) out << std::setw(static_cast<int>(width)) << names << " | " << key << '\n';

  std::vector<const TableRow*> bad;
  for (const auto& row : rows) {
    if (!row.matches()) bad.push_back(&row);
  }
  for (const auto& row : rows) {
    if (row.matches() && row.entry.expected && !outcome_matches(row.primary, *row.entry.expected)) {
      out << "note: " << row.entry.name << " matches only through " << row.variant->name << ": "
          << row.entry.note << '\n';
    }
  }
  if (!bad.empty()) {
    out << "mismatches:\n";
    for (const auto* row : bad) {
      out << "- " << row->entry.name << ": expected " << to_string(*row->entry.expected) << " ["
          << row->entry.provenance << "], got " << outcome_text(row->primary) << '\n';
      if (row->variant) {
        out << "  variant " << row->variant->name << ": got " << outcome_text(*row->variant) << '\n';
      }
      if (!row->entry.note.empty()) out << "  note: " << row->entry.note << '\n';
    }
  }
  out << rows.size() << " entries, " << (rows.size() - bad.size()) << " match, " << bad.size() << " mismatch\n";
  out << "time: " << std::fixed << std::setprecision(1) << millis << " ms\n";
  return out.str();
}

TableResult build_table(const std::filesystem::path& dir, std::size_t samples, std::uint64_t seed) {
  const auto start = Clock::now();
  TableResult result;
  for (auto& entry : load_corpus(dir)) {
    TableRow row{.entry = entry, .primary = classify_outcome(entry.name, entry.file, samples, seed), .variant = {}};
    if (entry.variant) row.variant = classify_outcome(entry.variant->name, entry.variant->file, samples, seed);
    result.rows.push_back(std::move(row));
  }
  result.millis = elapsed_ms(start);
  return result;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jordan-Kronecker type of Lie algebras given by structure constants", "jkinv"};
  app.require_subcommand(1);

  std::string path;
  std::vector<std::string> params;
  std::size_t samples = 3;
  std::size_t trials = 5;
  std::uint64_t seed = 1;
  std::string format = "text";

  auto* validate_cmd = app.add_subcommand("validate", "Check index ranges and the Jacobi identity");
  validate_cmd->add_option("path", path, "Definition file (.lie or .json)")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Classify as Jordan, Kronecker or mixed type");
  classify_cmd->add_option("path", path, "Definition file")->required();
  classify_cmd->add_option("--param", params, "Bind a parameter, NAME=VALUE (repeatable)");
  classify_cmd->add_option("--samples", samples, "Random admissible bindings for families")->capture_default_str();
  classify_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  classify_cmd->add_option("--output", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  auto* index_cmd = app.add_subcommand("index", "Print n, generic rank and index");
  index_cmd->add_option("path", path, "Definition file")->required();

  auto* charpoly_cmd = app.add_subcommand("charpoly", "Print p_0 and p(lambda)");
  charpoly_cmd->add_option("path", path, "Definition file")->required();

  auto* table_cmd = app.add_subcommand("table", "Classify a corpus and compare with its manifest");
  table_cmd->add_option("dir", path, "Corpus directory")->required();
  table_cmd->add_option("--samples", samples, "Random bindings per family")->capture_default_str();
  table_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();

  auto* check_cmd = app.add_subcommand("check", "Compare classify with the numeric pencil oracle");
  check_cmd->add_option("path", path, "Definition file")->required();
  check_cmd->add_option("--param", params, "Bind a parameter, NAME=VALUE (repeatable)");
  check_cmd->add_option("--trials", trials, "Random point pairs")->capture_default_str();
  check_cmd->add_option("--seed", seed, "Trial seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*validate_cmd) return cmd_validate(path, out);
    if (*classify_cmd) return cmd_classify(path, params, samples, seed, format, out);
    if (*index_cmd) return cmd_index(path, out);
    if (*charpoly_cmd) return cmd_charpoly(path, out);
    if (*table_cmd) return cmd_table(path, samples, seed, out);
    if (*check_cmd) return cmd_check(path, params, trials, seed, out);
  } catch (const InvalidAlgebra& e) {
    err << "error: invalid Lie algebra\n";
    print_validation(e.report(), err);
    return exit_domain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  } catch (const ParseError& e) {
    err << "error: " << path << ":" << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace jk
