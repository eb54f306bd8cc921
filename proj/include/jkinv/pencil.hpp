#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jkinv/lie_algebra.hpp"
#include "jkinv/polynomial.hpp"

namespace jk {

/// Rank over the field of rational functions in all variables: the rank at a
/// sample point, raised while a larger principal Pfaffian is nonzero.
std::size_t generic_rank(const SkewPolyMatrix& m);

/// All r-element subsets of {0, ..., n-1}, sorted, in lexicographic order.
/// Throws DomainError when r > n.
std::vector<std::vector<std::size_t>> principal_subsets(std::size_t n, std::size_t r);

/// Pfaffian by expansion along the first row, memoized on index subsets.
/// Pf of the empty matrix is 1; odd sizes give 0.
Polynomial pfaffian(const SkewPolyMatrix& m);

/// Pfaffians of many principal submatrices of one matrix, sharing the memo table.
class PfaffianTable {
 public:
  explicit PfaffianTable(const SkewPolyMatrix& m);
  /// Pfaffian of the principal submatrix on `indices` (sorted, 0-based).
  const Polynomial& of(const std::vector<std::size_t>& indices);

 private:
  const Polynomial& of_mask(std::uint64_t mask);

  const SkewPolyMatrix& matrix_;
  std::vector<std::vector<Polynomial>> entries_;  // dense copy, entries_[i][j] for i < j
  std::unordered_map<std::uint64_t, Polynomial> memo_;
};

struct PencilProfile {
  std::size_t n = 0;
  std::size_t generic_rank = 0;
  std::size_t index = 0;
  std::vector<std::pair<std::vector<std::size_t>, Polynomial>> pfaffians;  // one per principal subset
  Polynomial p0;        // normalized gcd of the nonzero Pfaffians
  Polynomial p_lambda;  // p0 with x_k -> x_k + lambda * a_k
};

/// Normalized gcd of a sequence of polynomials, folded left to right; zeros are skipped.
Polynomial gcd_fold(const std::vector<Polynomial>& polys, const RegistryPtr& registry);

/// p0(x + lambda a) over a registry that has coordinates, a-points and the pencil variable.
Polynomial shift_along_pencil(const Polynomial& p0);

/// Rank, index, principal Pfaffians of maximal order, their gcd and the
/// characteristic polynomial of the pencil A_x + lambda A_a.
PencilProfile pencil_profile(const SkewPolyMatrix& ax);

}  // namespace jk
