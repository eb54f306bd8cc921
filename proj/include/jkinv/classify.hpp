#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "jkinv/error.hpp"
#include "jkinv/lie_algebra.hpp"
#include "jkinv/pencil.hpp"
#include "jkinv/verdict.hpp"

namespace jk {

/// Raised when an algebra given to the classifier fails validation.
class InvalidAlgebra : public DomainError {
 public:
  explicit InvalidAlgebra(ValidationReport report)
      : DomainError("invalid Lie algebra:\n" + report.to_string()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct ClassificationReport {
  std::string name;
  std::size_t n = 0;
  std::size_t generic_rank = 0;
  std::size_t index = 0;
  Polynomial p0;
  Polynomial p_lambda;
  std::uint32_t p0_coordinate_degree = 0;
  Verdict verdict = Verdict::kronecker;
  double millis = 0.0;
  std::vector<std::string> notes;
};

/// Jordan if the index is 0; otherwise Kronecker when p0 has no coordinate
/// variables (parameter-only content is a unit) and mixed when it has.
/// Throws InvalidAlgebra when validate() fails.
ClassificationReport classify(const LieAlgebra& alg, const std::string& name = {});

/// Verdict decision of the classifier, exposed for the consistency checks.
Verdict decide(std::size_t index, std::uint32_t p0_coordinate_degree);

using ParamBinding = std::map<std::string, Rational>;

/// Random admissible binding: numerator and denominator uniform in [-20, 20],
/// rejecting zero denominators and exclusion violations. Throws DomainError
/// after 100 rejected draws.
ParamBinding sample_parameters(const LieAlgebra& alg, std::mt19937_64& rng);

struct SampleResult {
  ParamBinding binding;
  ClassificationReport report;
  bool agrees = false;  // same verdict as the symbolic classification
};

struct FamilyReport {
  ClassificationReport symbolic;
  std::uint64_t seed = 0;
  std::vector<SampleResult> samples;

  bool all_agree() const;
};

/// Classifies with symbolic parameters, then at `samples` random admissible
/// bindings. Throws DomainError when the algebra has no parameters.
FamilyReport classify_family(const LieAlgebra& alg, std::size_t samples, std::uint64_t seed,
                             const std::string& name = {});

std::string binding_to_string(const ParamBinding& binding);

/// Human-readable report; the last line is verdict_line().
std::string render_text(const ClassificationReport& report, const FamilyReport* family = nullptr);
/// Machine report; "definition" holds the algebra in the structured input format.
nlohmann::json render_structured(const ClassificationReport& report, const LieAlgebra& alg,
                                 const FamilyReport* family = nullptr);

}  // namespace jk
