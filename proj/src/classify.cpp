#include "jkinv/classify.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "jkinv/parser.hpp"

namespace jk {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::jordan: return "Jordan";
    case Verdict::kronecker: return "Kronecker";
    case Verdict::mixed: return "Mixed";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "Jordan") return Verdict::jordan;
  if (text == "Kronecker") return Verdict::kronecker;
  if (text == "Mixed") return Verdict::mixed;
  return std::nullopt;
}

std::string verdict_line(Verdict v) {
  switch (v) {
    case Verdict::jordan: return "G is of Jordan type.";
    case Verdict::kronecker: return "G is of Kronecker type.";
    case Verdict::mixed: return "G is of mixed type.";
  }
  return {};
}

Verdict decide(std::size_t index, std::uint32_t p0_coordinate_degree) {
  if (index == 0) return Verdict::jordan;
  return p0_coordinate_degree == 0 ? Verdict::kronecker : Verdict::mixed;
}

ClassificationReport classify(const LieAlgebra& alg, const std::string& name) {
  const auto start = std::chrono::steady_clock::now();
  auto validation = validate(alg);
  if (!validation.ok()) throw InvalidAlgebra(std::move(validation));

  const PencilProfile profile = pencil_profile(build_ax(alg));
  ClassificationReport report{.name = name, .p0 = profile.p0, .p_lambda = profile.p_lambda, .notes = {}};
  report.n = profile.n;
  report.generic_rank = profile.generic_rank;
  report.index = profile.index;
  const Degree d = profile.p0.degree_in({VarKind::coordinate});
  report.p0_coordinate_degree = d.is_neg_infinity() ? 0 : d.value();
  report.verdict = decide(report.index, report.p0_coordinate_degree);
  if (alg.has_params()) {
    std::string names;
    for (const auto& p : alg.params()) names += (names.empty() ? "" : ", ") + p.name;
    report.notes.push_back("parameters kept symbolic: " + names);
    if (!profile.p0.is_constant() && report.p0_coordinate_degree == 0) {
      report.notes.push_back("p_0 depends on parameters only and is treated as a unit");
    }
  }
  report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ParamBinding sample_parameters(const LieAlgebra& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-20, 20);
  for (int attempt = 0; attempt < 100; ++attempt) {
    ParamBinding binding;
    for (const auto& p : alg.params()) {
      const long num = dist(rng);
      long den = 0;
      while (den == 0) den = dist(rng);
      binding.emplace(p.name, make_rational(num, den));
    }
    if (admissible(alg, binding)) return binding;
  }
  throw DomainError("no admissible parameter sample found after 100 attempts");
}

bool FamilyReport::all_agree() const {
  for (const auto& s : samples) {
    if (!s.agrees) return false;
  }
  return true;
}

FamilyReport classify_family(const LieAlgebra& alg, std::size_t samples, std::uint64_t seed,
                             const std::string& name) {
  if (!alg.has_params()) throw DomainError("algebra has no parameters to sample");
  FamilyReport family{.symbolic = classify(alg, name), .seed = seed, .samples = {}};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    ParamBinding binding = sample_parameters(alg, rng);
    ClassificationReport r = classify(substitute_params(alg, binding), name);
    r.notes.push_back("parameters: " + binding_to_string(binding));
    const bool agrees = r.verdict == family.symbolic.verdict;
    family.samples.push_back({std::move(binding), std::move(r), agrees});
  }
  return family;
}

std::string binding_to_string(const ParamBinding& binding) {
  std::string out;
  for (const auto& [name, v] : binding) out += (out.empty() ? "" : ", ") + name + " = " + v.get_str();
  return out;
}

std::string render_text(const ClassificationReport& report, const FamilyReport* family) {
  std::ostringstream out;
  if (!report.name.empty()) out << "algebra: " << report.name << '\n';
  out << "n = " << report.n << '\n';
  out << "generic rank = " << report.generic_rank << '\n';
  out << "index = " << report.index << '\n';
  out << "p_0 = " << report.p0.to_string() << '\n';
  out << "p(lambda) = " << report.p_lambda.to_string() << '\n';
  out << "p_0 coordinate degree = " << report.p0_coordinate_degree << '\n';
  for (const auto& note : report.notes) out << "note: " << note << '\n';
  if (family != nullptr) {
    out << "samples (seed " << family->seed << "):\n";
    for (const auto& s : family->samples) {
      out << "  " << std::left << std::setw(28) << binding_to_string(s.binding) << ' ' << std::setw(10)
          << to_string(s.report.verdict) << (s.agrees ? "agrees" : "DISAGREES") << '\n';
    }
    if (!family->all_agree()) out << "warning: some samples disagree with the symbolic verdict\n";
  }
  out << "verdict: " << to_string(report.verdict) << '\n';
  out << "time: " << std::fixed << std::setprecision(3) << report.millis << " ms\n";
  out << verdict_line(report.verdict) << '\n';
  return out.str();
}

nlohmann::json render_structured(const ClassificationReport& report, const LieAlgebra& alg,
                                 const FamilyReport* family) {
  nlohmann::json doc = {
      {"algebra", report.name},
      {"n", report.n},
      {"generic_rank", report.generic_rank},
      {"index", report.index},
      {"p0", report.p0.to_string()},
      {"p_lambda", report.p_lambda.to_string()},
      {"p0_coordinate_degree", report.p0_coordinate_degree},
      {"verdict", std::string(to_string(report.verdict))},
      {"time_ms", report.millis},
      {"notes", report.notes},
      {"definition", emit_structured(alg)},
  };
  if (family != nullptr) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : family->samples) {
      nlohmann::json binding = nlohmann::json::object();
      for (const auto& [name, v] : s.binding) binding[name] = v.get_str();
      samples.push_back({{"params", binding},
                         {"verdict", std::string(to_string(s.report.verdict))},
                         {"index", s.report.index},
                         {"agrees", s.agrees}});
    }
    doc["seed"] = family->seed;
    doc["samples"] = std::move(samples);
  }
  return doc;
}

}  // namespace jk
