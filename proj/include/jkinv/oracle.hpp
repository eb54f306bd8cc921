#pragma once

// Independent verification of the symbolic pipeline: canonical
// Jordan-Kronecker block pairs, congruence scrambling, and a first-principles
// type test for numeric pencils A + lambda*B over Q[lambda].
//
// Nothing here uses the multivariate polynomial ring or the Pfaffian code;
// the pencil is handled through numeric ranks and determinants over Q.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jkinv/classify.hpp"
#include "jkinv/lie_algebra.hpp"
#include "jkinv/rational_matrix.hpp"
#include "jkinv/verdict.hpp"

namespace jk::oracle {

/// Dense univariate polynomial over Q; coefficient i multiplies lambda^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  /// a + b*lambda
  static UPoly linear(const Rational& a, const Rational& b);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  UPoly derivative() const;
  UPoly monic() const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rational& s) const;
  bool operator==(const UPoly&) const = default;

  std::string to_string(const std::string& var = "lambda") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct UDivision {
  UPoly quotient;
  UPoly remainder;
};
UDivision divmod(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

struct RootFactorization {
  std::vector<std::pair<Rational, std::size_t>> rational_roots;  // root, multiplicity; ascending
  UPoly residual;  // monic cofactor without rational roots (constant 1 if none)
};

/// Exact rational roots by Sturm isolation plus simplest-rational recovery.
RootFactorization rational_roots(const UPoly& p);

struct BlockSpec {
  enum class Kind { jordan_finite, jordan_infinite, kronecker };

  Kind kind;
  std::size_t size;    // Jordan size k, or Kronecker parameter k
  Rational eigenvalue; // jordan_finite only

  static BlockSpec jordan_finite(const Rational& eigenvalue, std::size_t k);
  static BlockSpec jordan_infinite(std::size_t k);
  static BlockSpec kronecker(std::size_t k);

  /// 2k for Jordan blocks, 2k+1 for Kronecker blocks.
  std::size_t dimension() const;
  std::string to_string() const;
};

struct NumericPencil {
  RationalMatrix a;
  RationalMatrix b;

  std::size_t size() const { return a.rows(); }
};

/// Block-diagonal canonical pair. Throws DomainError on an empty list or a
/// Jordan block of size 0.
NumericPencil assemble(const std::vector<BlockSpec>& blocks);

/// (P^T A P, P^T B P). Throws DomainError if P is singular or of the wrong size.
NumericPencil congruence(const NumericPencil& pencil, const RationalMatrix& p);

struct PencilTypeReport {
  Verdict type = Verdict::kronecker;
  std::size_t rank = 0;    // rank of A + lambda B over Q(lambda)
  std::size_t corank = 0;  // number of Kronecker blocks
  UPoly p0;                // monic square root of the gcd of maximal minors
  std::size_t infinite_jordan_size = 0;
  RootFactorization characteristic;
  bool divisor_is_square = true;  // the gcd of maximal minors was a perfect square

  std::size_t jordan_size() const { return static_cast<std::size_t>(std::max(0L, p0.degree())) + infinite_jordan_size; }
  /// A block with A-part J(l0) drops the rank at lambda = -l0.
  static constexpr const char* convention = "pencil A + lambda*B; block J(l0) in A drops rank at lambda = -l0";
  std::string to_string() const;
};

/// Rank over Q(lambda) from evaluations; p0 from the gcd of random
/// projections of the maximal minors, computed by interpolation. corank 0 ->
/// Jordan; otherwise mixed when some finite or infinite Jordan part is
/// present, else Kronecker.
PencilTypeReport pencil_type(const NumericPencil& pencil);

struct TrialResult {
  std::vector<Rational> x;
  std::vector<Rational> a;
  PencilTypeReport result;
  bool agrees = false;
};

struct CrossCheckReport {
  ClassificationReport expected;
  std::uint64_t seed = 0;
  std::vector<TrialResult> trials;

  std::size_t agreeing() const;
  bool passed() const { return agreeing() > 0; }
};

/// Samples `trials` integer points (x, a) with coordinates in [-1000, 1000] and
/// compares the numeric pencil (A_x, A_a) with classify(alg). Trial t uses a
/// generator seeded from (seed, t). Requires a parameter-free algebra.
CrossCheckReport cross_check(const LieAlgebra& alg, std::size_t trials, std::uint64_t seed);

}  // namespace jk::oracle
