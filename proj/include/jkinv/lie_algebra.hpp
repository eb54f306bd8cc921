#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jkinv/polynomial.hpp"
#include "jkinv/rational_matrix.hpp"

namespace jk {

/// A symbolic parameter together with the polynomials that must not vanish
/// at any admissible value (e.g. `a` for a != 0).
struct ParamDecl {
  std::string name;
  std::vector<Polynomial> exclusions;
};

/// Square skew-symmetric matrix with polynomial entries. Only the strict upper
/// triangle is stored; indices are 0-based.
class SkewPolyMatrix {
 public:
  SkewPolyMatrix(RegistryPtr registry, std::size_t size);

  std::size_t size() const { return size_; }
  const RegistryPtr& registry() const { return registry_; }

  /// entry(j, i) == -entry(i, j); the diagonal is zero.
  Polynomial entry(std::size_t i, std::size_t j) const;
  /// Sets entry(i, j) and implicitly entry(j, i); i == j is rejected.
  void set(std::size_t i, std::size_t j, Polynomial value);

  /// Rows/columns kept in the given (sorted) order.
  SkewPolyMatrix principal_submatrix(const std::vector<std::size_t>& indices) const;
  SkewPolyMatrix substitute(const std::map<VarId, Polynomial>& bindings) const;
  /// Requires every entry to become a constant; throws DomainError otherwise.
  RationalMatrix evaluate(const std::map<VarId, Rational>& values) const;

  bool is_zero() const;
  bool operator==(const SkewPolyMatrix& other) const;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const;  // requires i < j

  RegistryPtr registry_;
  std::size_t size_;
  std::vector<Polynomial> upper_;
};

/// Structure constants c_ij^k of a finite-dimensional Lie algebra, possibly
/// depending polynomially on declared parameters. Basis indices are 1-based.
class LieAlgebra {
 public:
  /// Coefficients of [e_i, e_j] keyed by k; never holds zeros.
  using Bracket = std::map<std::size_t, Polynomial>;
  /// Keys satisfy i < j; empty brackets are not stored.
  using BracketTable = std::map<std::pair<std::size_t, std::size_t>, Bracket>;

  explicit LieAlgebra(std::size_t dimension, const std::vector<std::string>& param_names = {});

  std::size_t dimension() const { return dimension_; }
  const RegistryPtr& registry() const { return registry_; }
  const std::vector<ParamDecl>& params() const { return params_; }
  bool has_params() const { return !params_.empty(); }
  const BracketTable& brackets() const { return brackets_; }

  /// The zero polynomial of this algebra's ring, and a parameter variable.
  Polynomial zero() const { return Polynomial(registry_); }
  Polynomial constant(const Rational& c) const { return Polynomial(registry_, c); }
  Polynomial param(std::string_view name) const;

  /// Adds an exclusion polynomial (parameters only) to a declared parameter.
  void add_exclusion(std::string_view param, const Polynomial& nonzero);

  /// Adds coeff * e_k to [e_i, e_j]; i > j is stored as -coeff on [e_j, e_i].
  /// Throws DomainError for indices out of range, i == j, or non-parameter variables.
  void add_bracket_term(std::size_t i, std::size_t j, std::size_t k, const Polynomial& coeff);

  /// c_ij^k for any i, j (antisymmetry applied on demand).
  Polynomial structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

  /// Equality of dimension, parameters, exclusions and structure constants.
  bool operator==(const LieAlgebra& other) const;

 private:
  std::size_t dimension_;
  RegistryPtr registry_;
  std::vector<ParamDecl> params_;
  BracketTable brackets_;
};

struct JacobiViolation {
  std::size_t i, j, k, m;  // 1-based, i < j < k
  Polynomial value;        // the nonvanishing coefficient of e_m
};

struct ValidationReport {
  std::vector<std::string> index_errors;
  std::vector<JacobiViolation> violations;

  bool ok() const { return index_errors.empty() && violations.empty(); }
  std::string to_string() const;
};

/// Index ranges and the Jacobi identity, as a polynomial identity in the parameters.
ValidationReport validate(const LieAlgebra& alg);

/// A_x: entry (i, j) = sum_k c_ij^k x_k over the algebra's registry.
SkewPolyMatrix build_ax(const LieAlgebra& alg);

/// Structure constants in the basis e'_i = sum_j P_ji e_j. Throws DomainError if P is singular.
LieAlgebra change_of_basis(const LieAlgebra& alg, const RationalMatrix& basis);

/// Binds every parameter. Throws DomainError for unknown or unbound parameters
/// and for values at which an exclusion polynomial vanishes.
LieAlgebra substitute_params(const LieAlgebra& alg, const std::map<std::string, Rational>& values);

/// True when every exclusion polynomial is nonzero at `values` (all parameters bound).
bool admissible(const LieAlgebra& alg, const std::map<std::string, Rational>& values);

/// Numeric form sum_k c_ij^k v_k at a point of the dual space. Requires a parameter-free algebra.
RationalMatrix numeric_form(const LieAlgebra& alg, const std::vector<Rational>& point);

}  // namespace jk
