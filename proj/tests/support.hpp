#pragma once

// Shared helpers for the unit tests and the acceptance suite.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "jkinv/corpus.hpp"
#include "jkinv/lie_algebra.hpp"
#include "jkinv/polynomial.hpp"
#include "jkinv/rational_matrix.hpp"

namespace jk::test {

inline const std::filesystem::path corpus_dir{JK_CORPUS_DIR};

inline RegistryPtr ring(std::size_t n, const std::vector<std::string>& params = {}) {
  return VarRegistry::for_algebra(params, n);
}

inline Polynomial var(const RegistryPtr& r, const std::string& name) {
  return Polynomial::variable(r, *r->find(name));
}

inline Polynomial num(const RegistryPtr& r, long v) { return Polynomial(r, Rational(v)); }

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Random polynomial with up to `terms` terms of total degree <= max_degree in `vars`.
inline Polynomial random_poly(const RegistryPtr& r, const std::vector<VarId>& vars, std::mt19937_64& rng,
                              std::uint32_t max_degree, long coeff_range, std::size_t terms) {
  Polynomial p(r);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<Monomial::Entry> entries;
    const long deg = uniform(rng, 0, max_degree);
    for (long d = 0; d < deg; ++d) {
      entries.emplace_back(vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(vars.size()) - 1))], 1);
    }
    p += Polynomial::monomial(r, Monomial::from_entries(entries), Rational(uniform(rng, -coeff_range, coeff_range)));
  }
  return p;
}

/// Unimodular integer matrix with entries in [-bound, bound]: a signed
/// permutation followed by elementary row operations that stay in range.
inline RationalMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, long bound = 3) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][perm[i]] = uniform(rng, 0, 1) ? 1 : -1;
  if (n < 2) return RationalMatrix{{m[0][0]}};
  for (std::size_t step = 0; step < 4 * n; ++step) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long c = uniform(rng, 0, 1) ? 1 : -1;
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) ok = ok && std::abs(m[i][k] + c * m[j][k]) <= bound;
    if (!ok) continue;
    for (std::size_t k = 0; k < n; ++k) m[i][k] += c * m[j][k];
  }
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m[i][j];
  }
  return out;
}

/// Random invertible rational matrix (entries p/q, |p| <= 4, 1 <= q <= 3).
inline RationalMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  while (true) {
    RationalMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) p(i, j) = make_rational(uniform(rng, -4, 4), uniform(rng, 1, 3));
    }
    if (determinant(p) != 0) return p;
  }
}

/// Determinant by cofactor expansion along rows, memoized on the set of used columns.
inline Polynomial laplace_det(const std::vector<std::vector<Polynomial>>& m, const RegistryPtr& r) {
  const std::size_t n = m.size();
  std::map<std::uint64_t, Polynomial> memo;
  std::function<Polynomial(std::size_t, std::uint64_t)> rec = [&](std::size_t row, std::uint64_t used) -> Polynomial {
    if (row == n) return num(r, 1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Polynomial acc(r);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (std::uint64_t{1} << c)) continue;
      if (!m[row][c].is_zero()) {
        Polynomial term = m[row][c] * rec(row + 1, used | (std::uint64_t{1} << c));
        acc += sign > 0 ? term : -term;
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(0, 0);
}

inline std::vector<std::vector<Polynomial>> dense(const SkewPolyMatrix& m) {
  std::vector<std::vector<Polynomial>> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.emplace_back();
    for (std::size_t j = 0; j < m.size(); ++j) out.back().push_back(m.entry(i, j));
  }
  return out;
}

/// Random skew matrix with degree <= 1 entries in x1..x3, coefficients in [-5, 5].
inline SkewPolyMatrix random_skew(const RegistryPtr& r, std::size_t size, std::mt19937_64& rng) {
  const std::vector<VarId> vars{r->coordinate(1), r->coordinate(2), r->coordinate(3)};
  SkewPolyMatrix m(r, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      Polynomial p = num(r, uniform(rng, -5, 5));
      for (VarId v : vars) p += Polynomial::variable(r, v) * Rational(uniform(rng, -5, 5));
      m.set(i, j, p);
    }
  }
  return m;
}

/// P^T M P for a rational matrix P.
inline SkewPolyMatrix congruent(const SkewPolyMatrix& m, const RationalMatrix& p) {
  const std::size_t n = m.size();
  SkewPolyMatrix out(m.registry(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Polynomial acc(m.registry());
      for (std::size_t k = 0; k < n; ++k) {
        if (p(k, i) == 0) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (p(l, j) == 0 || k == l) continue;
          acc += m.entry(k, l) * (p(k, i) * p(l, j));
        }
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

struct CorpusAlgebra {
  std::string name;
  std::filesystem::path file;
  LieAlgebra alg;
};

/// Every definition in both bundled corpora, variants included.
inline std::vector<CorpusAlgebra> corpus_algebras() {
  std::vector<CorpusAlgebra> out;
  for (const char* sub : {"misc", "table1"}) {
    for (const auto& e : load_corpus(corpus_dir / sub)) {
      out.push_back({e.name, e.file, load_algebra(e.file)});
      if (e.variant) out.push_back({e.variant->name, e.variant->file, load_algebra(e.variant->file)});
    }
  }
  return out;
}

}  // namespace jk::test
