// Multivariate gcd. The heuristic integer gcd (evaluate at a large integer,
// recurse, rebuild the candidate from its xi-adic digits, verify by exact
// division) handles most inputs quickly; recursive primitive polynomial
// remainder sequences are the fallback.
//
// For the PRS, a polynomial is viewed as univariate in its main variable (the
// least significant variable present) with coefficients in the remaining
// variables; contents are computed recursively in those variables.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "jkinv/error.hpp"
#include "jkinv/polynomial.hpp"

namespace jk {

namespace {

using Coeffs = std::vector<Polynomial>;  // index = degree in the main variable

Coeffs split(const Polynomial& p, VarId var) {
  Coeffs out;
  const auto deg = p.degree_in_var(var);
  out.assign(deg.is_neg_infinity() ? 0 : deg.value() + 1, Polynomial(p.registry()));
  std::vector<Polynomial::TermMap> buckets(out.size());
  for (const auto& [m, c] : p.terms()) buckets[m.exponent(var)].emplace(m.without(var), c);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Polynomial(p.registry(), std::move(buckets[i]));
  return out;
}

Polynomial join(const Coeffs& coeffs, VarId var, const RegistryPtr& reg) {
  Polynomial out(reg);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    out += coeffs[i] * Polynomial::variable(reg, var, static_cast<std::uint32_t>(i));
  }
  return out;
}

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact division in gcd");
  return std::move(*q);
}

Polynomial content_of(const Coeffs& coeffs, const RegistryPtr& reg) {
  Polynomial g(reg);
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Coeffs primitive_part(Coeffs coeffs, const RegistryPtr& reg) {
  const Polynomial content = content_of(coeffs, reg);
  if (content.is_zero()) return coeffs;
  Integer num = 0;
  Integer den = 1;
  for (auto& c : coeffs) {
    if (c.is_zero()) continue;
    c = exact_quotient(c, content);
    const Rational rc = rational_content(c);
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), rc.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rc.get_den_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  for (auto& c : coeffs) c *= scale;
  return coeffs;
}

// Pseudo-remainder of a by b, both univariate in the main variable.
Coeffs pseudo_remainder(Coeffs a, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lb = b.back();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Polynomial la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

VarId main_variable(const Polynomial& p, const Polynomial& q) {
  auto vars = p.variables();
  auto vq = q.variables();
  vars.insert(vq.begin(), vq.end());
  return *vars.rbegin();
}

// ---------------------------------------------------------------------------
// Heuristic gcd over Z[vars]
// ---------------------------------------------------------------------------

Integer integer_content(const Polynomial& p) {
  Integer g = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Integer max_norm(const Polynomial& p) {
  Integer best = 0;
  for (const auto& [m, c] : p.terms()) {
    if (abs(c.get_num()) > best) best = abs(c.get_num());
  }
  return best;
}

// Digits of each integer coefficient in the symmetric base xi become powers of `var`.
Polynomial xi_adic_lift(const Polynomial& h, const Integer& xi, VarId var) {
  const auto& reg = h.registry();
  Polynomial::TermMap terms;
  const Integer half = xi / 2;
  for (const auto& [m, coeff] : h.terms()) {
    Integer c = coeff.get_num();
    std::uint32_t power = 0;
    while (c != 0) {
      Integer d;
      mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (d > half) d -= xi;
      if (d != 0) terms.emplace(m * Monomial::variable(var, power), Rational(d));
      c = (c - d) / xi;
      ++power;
    }
  }
  return Polynomial(reg, std::move(terms));
}

// gcd of nonzero polynomials with integer coefficients, or nullopt when the
// heuristic gives up. A returned value is always a verified gcd.
std::optional<Polynomial> heuristic_gcd(const Polynomial& f, const Polynomial& g, std::vector<VarId> vars) {
  const auto& reg = f.registry();
  while (!vars.empty() && !f.contains(vars.back()) && !g.contains(vars.back())) vars.pop_back();
  const Integer cf = integer_content(f);
  const Integer cg = integer_content(g);
  Integer common;
  mpz_gcd(common.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (vars.empty()) return Polynomial(reg, Rational(common));

  const Polynomial f1 = f * Rational(1, cf);
  const Polynomial g1 = g * Rational(1, cg);
  const VarId var = vars.back();
  vars.pop_back();

  Integer xi = 2 * std::min(max_norm(f1), max_norm(g1)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const std::map<VarId, Polynomial> at{{var, Polynomial(reg, Rational(xi))}};
    const Polynomial ff = f1.substitute(at);
    const Polynomial gg = g1.substitute(at);
    if (!ff.is_zero() && !gg.is_zero()) {
      if (auto h = heuristic_gcd(ff, gg, vars)) {
        Polynomial candidate = xi_adic_lift(*h, xi, var);
        if (!candidate.is_zero()) {
          candidate *= Rational(1, integer_content(candidate));
          if (divide_exact(f1, candidate) && divide_exact(g1, candidate)) return candidate * Rational(common);
        }
      }
    }
    Integer root;
    mpz_root(root.get_mpz_t(), xi.get_mpz_t(), 4);
    xi = xi * 73794 * root / 27011;
  }
  return std::nullopt;
}

Polynomial prs_gcd(const Polynomial& p, const Polynomial& q);

}  // namespace

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
  require_same_registry(p, q);
  if (p.is_zero()) return normalize(q);
  if (q.is_zero()) return normalize(p);
  if (p.is_constant() || q.is_constant()) return Polynomial(p.registry(), Rational(1));
  const Polynomial f = normalize(p);
  const Polynomial g = normalize(q);
  if (f == g) return f;
  std::set<VarId> present = f.variables();
  for (VarId v : g.variables()) present.insert(v);
  if (auto h = heuristic_gcd(f, g, std::vector<VarId>(present.begin(), present.end()))) return normalize(*h);
  return prs_gcd(f, g);
}

namespace {

Polynomial prs_gcd(const Polynomial& p, const Polynomial& q) {
  if (p.is_constant() || q.is_constant()) return Polynomial(p.registry(), Rational(1));
  const auto& reg = p.registry();

  const VarId var = main_variable(p, q);
  if (!p.contains(var)) return gcd(p, content_of(split(q, var), reg));
  if (!q.contains(var)) return gcd(content_of(split(p, var), reg), q);

  Coeffs a = split(p, var);
  Coeffs b = split(q, var);
  const Polynomial ca = content_of(a, reg);
  const Polynomial cb = content_of(b, reg);
  const Polynomial content = gcd(ca, cb);
  a = primitive_part(std::move(a), reg);
  b = primitive_part(std::move(b), reg);
  if (a.size() < b.size()) std::swap(a, b);

  while (true) {
    Coeffs r = pseudo_remainder(a, b);
    if (r.empty()) break;
    if (r.size() == 1) {
      b = {Polynomial(reg, Rational(1))};
      break;
    }
    a = std::move(b);
    b = primitive_part(std::move(r), reg);
  }
  return normalize(content * join(primitive_part(std::move(b), reg), var, reg));
}

}  // namespace

}  // namespace jk
