#include <doctest.h>

#include "jkinv/error.hpp"
#include "jkinv/parser.hpp"
#include "support.hpp"

using namespace jk;
using namespace jk::test;

namespace {

LieAlgebra from_text(const std::string& text) { return parse_text({text, "<inline>", SourceFormat::text}); }

LieAlgebra example1() { return from_text("dim 4\n[e3,e1] = e1\n[e3,e4] = e2\n"); }

}  // namespace

TEST_CASE("validate accepts Example 1 and abelian algebras") {
  CHECK(validate(example1()).ok());
  CHECK(validate(LieAlgebra(5)).ok());
}

TEST_CASE("validate reports the fake bracket") {
  LieAlgebra alg(3);
  alg.add_bracket_term(1, 2, 3, alg.constant(1));
  alg.add_bracket_term(1, 3, 3, alg.constant(1));
  CHECK(validate(alg).ok());
  alg.add_bracket_term(2, 3, 1, alg.constant(1));
  const auto report = validate(alg);
  REQUIRE(report.violations.size() == 1);
  const auto& v = report.violations[0];
  CHECK(v.i == 1);
  CHECK(v.j == 2);
  CHECK(v.k == 3);
  // Hand expansion: only the e1 coefficient survives, with value 1.
  CHECK(v.m == 1);
  CHECK(v.value == alg.constant(1));
}

TEST_CASE("Jacobi check is a polynomial identity in the parameters") {
  LieAlgebra alg(3, {"a"});
  alg.add_bracket_term(1, 2, 3, alg.constant(1));
  alg.add_bracket_term(1, 3, 3, alg.constant(1));
  alg.add_bracket_term(2, 3, 1, alg.param("a"));
  const auto report = validate(alg);
  CHECK_FALSE(report.ok());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].value == alg.param("a"));
  CHECK(validate(substitute_params(alg, {{"a", Rational(0)}})).ok());
}

TEST_CASE("bracket input checks") {
  LieAlgebra alg(3, {"a"});
  CHECK_THROWS_AS(alg.add_bracket_term(1, 1, 2, alg.constant(1)), DomainError);
  CHECK_THROWS_AS(alg.add_bracket_term(1, 4, 2, alg.constant(1)), DomainError);
  CHECK_THROWS_AS(alg.add_bracket_term(1, 2, 0, alg.constant(1)), DomainError);
  const auto x1 = Polynomial::variable(alg.registry(), alg.registry()->coordinate(1));
  CHECK_THROWS_AS(alg.add_bracket_term(1, 2, 3, x1), DomainError);
  CHECK_THROWS(LieAlgebra(2, {"x1"}));
  CHECK_THROWS(LieAlgebra(2, {"lambda"}));
}

TEST_CASE("antisymmetry is generated on demand") {
  const auto alg = example1();
  CHECK(alg.structure_constant(3, 1, 1) == alg.constant(1));
  CHECK(alg.structure_constant(1, 3, 1) == alg.constant(-1));
  CHECK(alg.structure_constant(2, 2, 1).is_zero());
  CHECK(alg.brackets().size() == 2);
  CHECK(alg.brackets().begin()->first == std::pair<std::size_t, std::size_t>{1, 3});
}

TEST_CASE("build_ax examples") {
  const auto ax = build_ax(example1());
  const auto& r = ax.registry();
  CHECK(ax.entry(0, 2) == -var(r, "x1"));
  CHECK(ax.entry(2, 3) == var(r, "x2"));
  CHECK(ax.entry(2, 0) == var(r, "x1"));
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) nonzero += ax.entry(i, j).is_zero() ? 0 : 1;
  }
  CHECK(nonzero == 2);
  CHECK(build_ax(LieAlgebra(3)).is_zero());

  const auto heis = from_text("dim 3\n[e1,e2] = e3\n");
  const auto hx = build_ax(heis);
  CHECK(hx.entry(0, 1) == var(hx.registry(), "x3"));
  CHECK(hx.entry(0, 2).is_zero());
  CHECK(hx.entry(1, 2).is_zero());
}

TEST_CASE("build_ax entries are homogeneous linear in coordinates") {
  for (const auto& c : corpus_algebras()) {
    const auto ax = build_ax(c.alg);
    for (std::size_t i = 0; i < ax.size(); ++i) {
      for (std::size_t j = i + 1; j < ax.size(); ++j) {
        const Polynomial entry = ax.entry(i, j);
        for (const auto& [m, coeff] : entry.terms()) {
          std::uint32_t coord = 0;
          for (const auto& [v, e] : m.entries()) {
            if (ax.registry()->kind(v) == VarKind::coordinate) coord += e;
          }
          CHECK(coord == 1);
        }
      }
    }
  }
}

TEST_CASE("change of basis") {
  const auto heis = from_text("dim 3\n[e1,e2] = e3\n");
  CHECK(change_of_basis(heis, RationalMatrix::identity(3)) == heis);
  const RationalMatrix swap{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  CHECK(change_of_basis(heis, swap) == from_text("dim 3\n[e1,e2] = -e3\n"));
  CHECK_THROWS_AS(change_of_basis(heis, RationalMatrix{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}), DomainError);

  std::mt19937_64 rng(3);
  for (const auto& c : corpus_algebras()) {
    if (!validate(c.alg).ok()) continue;
    for (int t = 0; t < 5; ++t) {
      const auto p = random_unimodular(c.alg.dimension(), rng);
      const auto moved = change_of_basis(c.alg, p);
      CHECK(validate(moved).ok());
      CHECK(change_of_basis(moved, *inverse(p)) == c.alg);
    }
  }
}

TEST_CASE("random unimodular matrices") {
  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto p = random_unimodular(n, rng);
    const auto d = determinant(p);
    CHECK((d == 1 || d == -1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) CHECK(abs(p(i, j)) <= 3);
    }
  }
}

TEST_CASE("substitute_params") {
  const auto l3 = load_algebra(corpus_dir / "table1" / "L3.lie");
  const auto bound = substitute_params(l3, {{"a", Rational(1)}});
  CHECK_FALSE(bound.has_params());
  CHECK(bound.structure_constant(1, 7, 1) == bound.constant(-1));
  CHECK(bound.structure_constant(4, 7, 4) == bound.constant(-2));
  CHECK_THROWS_AS(substitute_params(l3, {{"a", Rational(0)}}), DomainError);
  CHECK_THROWS_AS(substitute_params(l3, {}), DomainError);
  CHECK_THROWS_AS(substitute_params(l3, {{"a", Rational(1)}, {"c", Rational(2)}}), DomainError);
  CHECK(substitute_params(example1(), {}) == example1());

  const auto l4 = load_algebra(corpus_dir / "table1" / "L4.lie");
  CHECK(admissible(l4, {{"a", Rational(0)}, {"b", Rational(3)}}));
  CHECK_FALSE(admissible(l4, {{"a", Rational(3)}, {"b", Rational(0)}}));
}

TEST_CASE("corpus definitions validate") {
  for (const auto& c : corpus_algebras()) {
    CAPTURE(c.name);
    if (c.name == "L_5^a") {
      // Printed sign of [e3,e6]; the variant carries the corrected one.
      const auto report = validate(c.alg);
      REQUIRE(report.violations.size() == 2);
      CHECK(report.violations[0].value == c.alg.constant(4));
      continue;
    }
    CHECK(validate(c.alg).ok());
  }
}
