#include "jkinv/pencil.hpp"

#include <bit>
#include <map>
#include <random>

#include "jkinv/error.hpp"
#include "jkinv/rational_matrix.hpp"

namespace jk {

std::vector<std::vector<std::size_t>> principal_subsets(std::size_t n, std::size_t r) {
  if (r > n) throw DomainError("subset size " + std::to_string(r) + " exceeds " + std::to_string(n));
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    // Advance to the next combination in lexicographic order.
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

PfaffianTable::PfaffianTable(const SkewPolyMatrix& m) : matrix_(m) {
  if (m.size() > 64) throw DomainError("Pfaffian expansion supports at most 64 rows");
  entries_.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    entries_[i].reserve(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) entries_[i].push_back(i < j ? m.entry(i, j) : Polynomial(m.registry()));
  }
}

const Polynomial& PfaffianTable::of(const std::vector<std::size_t>& indices) {
  std::uint64_t mask = 0;
  for (std::size_t i : indices) {
    if (i >= matrix_.size()) throw DomainError("principal index out of range");
    mask |= std::uint64_t{1} << i;
  }
  return of_mask(mask);
}

const Polynomial& PfaffianTable::of_mask(std::uint64_t mask) {
  if (auto it = memo_.find(mask); it != memo_.end()) return it->second;

  Polynomial result(matrix_.registry());
  if (mask == 0) {
    result = Polynomial(matrix_.registry(), Rational(1));
  } else if (std::popcount(mask) % 2 == 0) {
    const auto first = static_cast<std::size_t>(std::countr_zero(mask));
    std::uint64_t rest = mask & (mask - 1);
    bool positive = true;
    for (std::uint64_t scan = rest; scan != 0; scan &= scan - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(scan));
      const Polynomial& entry = entries_[first][j];
      if (!entry.is_zero()) {
        const Polynomial& minor = of_mask(rest & ~(std::uint64_t{1} << j));
        if (!minor.is_zero()) {
          if (positive) {
            result += entry * minor;
          } else {
            result -= entry * minor;
          }
        }
      }
      positive = !positive;
    }
  }
  return memo_.emplace(mask, std::move(result)).first->second;
}

namespace {

// Rank at a random integer point is a lower bound; it is raised while some
// larger principal Pfaffian is nonzero, so the result is exact.
std::size_t certified_rank(const SkewPolyMatrix& m, PfaffianTable& table) {
  const std::size_t n = m.size();
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> pick(-1000000, 1000000);
  std::map<VarId, Rational> point;
  for (std::size_t v = 0; v < m.registry()->size(); ++v) point.emplace(static_cast<VarId>(v), Rational(pick(rng)));
  RationalMatrix numeric(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) numeric(i, j) = m.entry(i, j).evaluate(point);
  }
  std::size_t r = rank(numeric);
  while (r + 2 <= n) {
    bool raised = false;
    for (const auto& subset : principal_subsets(n, r + 2)) {
      if (!table.of(subset).is_zero()) {
        raised = true;
        break;
      }
    }
    if (!raised) break;
    r += 2;
  }
  return r;
}

}  // namespace

std::size_t generic_rank(const SkewPolyMatrix& m) {
  PfaffianTable table(m);
  return certified_rank(m, table);
}

Polynomial pfaffian(const SkewPolyMatrix& m) {
  PfaffianTable table(m);
  std::vector<std::size_t> all(m.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return table.of(all);
}

Polynomial gcd_fold(const std::vector<Polynomial>& polys, const RegistryPtr& registry) {
  Polynomial g(registry);
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (!g.is_zero() && (g.is_constant() || divide_exact(p, g))) continue;
    g = gcd(g, p);
  }
  return g;
}

Polynomial shift_along_pencil(const Polynomial& p0) {
  const auto& reg = p0.registry();
  const Polynomial lambda = Polynomial::variable(reg, reg->pencil());
  std::map<VarId, Polynomial> shift;
  for (VarId x : reg->of_kind(VarKind::coordinate)) {
    const std::size_t k = std::stoul(reg->name(x).substr(1));
    shift.emplace(x, Polynomial::variable(reg, x) + lambda * Polynomial::variable(reg, reg->a_point(k)));
  }
  return p0.substitute(shift);
}

PencilProfile pencil_profile(const SkewPolyMatrix& ax) {
  PencilProfile profile{.pfaffians = {}, .p0 = Polynomial(ax.registry()), .p_lambda = Polynomial(ax.registry())};
  profile.n = ax.size();
  PfaffianTable table(ax);
  profile.generic_rank = certified_rank(ax, table);
  profile.index = profile.n - profile.generic_rank;

  std::vector<Polynomial> values;
  for (auto& subset : principal_subsets(profile.n, profile.generic_rank)) {
    const Polynomial& pf = table.of(subset);
    values.push_back(pf);
    profile.pfaffians.emplace_back(std::move(subset), pf);
  }
  profile.p0 = gcd_fold(values, ax.registry());
  profile.p_lambda = shift_along_pencil(profile.p0);
  return profile;
}

}  // namespace jk
