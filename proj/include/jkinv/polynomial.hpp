#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jkinv/rational.hpp"

namespace jk {

enum class VarKind { parameter, coordinate, a_point, pencil };

using VarId = std::uint16_t;

/// Named variables of a polynomial ring, in a fixed total order:
/// parameters < coordinates < a-points < pencil variable.
///
/// Position in the registry is the monomial order's variable precedence:
/// an earlier variable is lexicographically more significant.
class VarRegistry {
 public:
  struct Var {
    std::string name;
    VarKind kind;
    bool operator==(const Var&) const = default;
  };

  /// Throws Error on duplicate names or kinds out of order.
  explicit VarRegistry(std::vector<Var> vars);

  /// The standard ring for an n-dimensional algebra: params, x1..xn, a1..an, lambda.
  static std::shared_ptr<const VarRegistry> for_algebra(const std::vector<std::string>& params,
                                                        std::size_t dimension);

  std::size_t size() const { return vars_.size(); }
  const std::string& name(VarId id) const { return vars_.at(id).name; }
  VarKind kind(VarId id) const { return vars_.at(id).kind; }
  std::optional<VarId> find(std::string_view name) const;
  std::vector<VarId> of_kind(VarKind kind) const;

  /// x_k (1-based); throws if absent.
  VarId coordinate(std::size_t k) const;
  VarId a_point(std::size_t k) const;
  VarId pencil() const;

  const std::vector<Var>& vars() const { return vars_; }
  bool operator==(const VarRegistry& other) const { return vars_ == other.vars_; }

 private:
  std::vector<Var> vars_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

/// Power product; exponents are kept sorted by variable and never zero.
class Monomial {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  static Monomial variable(VarId var, std::uint32_t exponent = 1);
  /// Entries need not be sorted; zero exponents are dropped, repeats are summed.
  static Monomial from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::uint32_t exponent(VarId var) const;
  std::uint32_t total_degree() const { return degree_; }
  bool is_one() const { return entries_.empty(); }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other) to hold for `*this` by `divisor`.
  Monomial divided_by(const Monomial& divisor) const;
  Monomial without(VarId var) const;

  bool operator==(const Monomial&) const = default;

  /// Graded lexicographic comparison; lower VarId is more significant.
  std::strong_ordering operator<=>(const Monomial& other) const;

 private:
  std::vector<Entry> entries_;
  std::uint32_t degree_ = 0;
};

/// Degree of a polynomial; the zero polynomial has degree -infinity.
class Degree {
 public:
  constexpr Degree() = default;  // -infinity
  constexpr explicit Degree(std::uint32_t value) : value_(value) {}
  static constexpr Degree neg_infinity() { return Degree(); }

  constexpr bool is_neg_infinity() const { return !value_.has_value(); }
  /// Throws std::bad_optional_access for -infinity.
  constexpr std::uint32_t value() const { return value_.value(); }

  constexpr bool operator==(const Degree&) const = default;
  constexpr std::strong_ordering operator<=>(const Degree& other) const {
    if (is_neg_infinity() || other.is_neg_infinity()) {
      return other.is_neg_infinity() <=> is_neg_infinity();
    }
    return *value_ <=> *other.value_;
  }

 private:
  std::optional<std::uint32_t> value_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored leading-term first under the graded-lex order of the
/// registry; a stored coefficient is never zero.
class Polynomial {
 public:
  struct Descending {
    bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
  };
  using TermMap = std::map<Monomial, Rational, Descending>;

  explicit Polynomial(RegistryPtr registry);
  Polynomial(RegistryPtr registry, const Rational& constant);
  Polynomial(RegistryPtr registry, TermMap terms);

  static Polynomial variable(RegistryPtr registry, VarId var, std::uint32_t exponent = 1);
  static Polynomial monomial(RegistryPtr registry, Monomial m, const Rational& coefficient);

  const RegistryPtr& registry() const { return registry_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term for constant polynomials; throws DomainError otherwise.
  Rational constant_value() const;
  /// Throws DomainError on the zero polynomial.
  const std::pair<const Monomial, Rational>& leading_term() const;

  Degree total_degree() const;
  Degree degree_in(const std::set<VarKind>& kinds) const;
  Degree degree_in_var(VarId var) const;
  bool contains(VarId var) const;
  std::set<VarId> variables() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  Polynomial pow(std::uint32_t exponent) const;

  /// Simultaneous substitution; unbound variables are kept.
  Polynomial substitute(const std::map<VarId, Polynomial>& bindings) const;
  /// Evaluates every variable present; throws DomainError if one is unbound.
  Rational evaluate(const std::map<VarId, Rational>& values) const;

  /// Moves the polynomial into another registry, matching variables by name.
  Polynomial rebase(const RegistryPtr& target) const;

  /// Display format: descending terms, `^` for powers, `*` between factors.
  std::string to_string() const;

  bool operator==(const Polynomial& other) const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  RegistryPtr registry_;
  TermMap terms_;
};

/// Throws RegistryMismatch unless both polynomials share a registry.
void require_same_registry(const Polynomial& a, const Polynomial& b);

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Multivariate division by a single divisor under the graded-lex order.
/// The remainder is zero exactly when `divisor` divides `dividend`.
DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor);
std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor);

/// gcd of numerators over lcm of denominators; zero for the zero polynomial.
Rational rational_content(const Polynomial& p);

/// Divides out the rational content and makes the leading coefficient positive.
Polynomial normalize(const Polynomial& p);

/// A gcd in Q[all variables], normalized. gcd(p, 0) = normalize(p), gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

}  // namespace jk
