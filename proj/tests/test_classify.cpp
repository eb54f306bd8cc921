#include <doctest.h>

#include "jkinv/classify.hpp"
#include "jkinv/error.hpp"
#include "jkinv/parser.hpp"
#include "support.hpp"

using namespace jk;
using namespace jk::test;

namespace {

LieAlgebra from_text(const std::string& text) { return parse_text({text, "<inline>", SourceFormat::text}); }

ClassificationReport classify_file(const std::string& sub, const std::string& file) {
  return classify(load_algebra(corpus_dir / sub / file), file);
}

}  // namespace

TEST_CASE("verdict strings") {
  CHECK(verdict_line(Verdict::jordan) == "G is of Jordan type.");
  CHECK(verdict_line(Verdict::kronecker) == "G is of Kronecker type.");
  CHECK(verdict_line(Verdict::mixed) == "G is of mixed type.");
  CHECK(parse_verdict("Mixed") == Verdict::mixed);
  CHECK_FALSE(parse_verdict("mixedup"));
}

TEST_CASE("decide branches") {
  CHECK(decide(0, 0) == Verdict::jordan);
  CHECK(decide(0, 3) == Verdict::jordan);
  CHECK(decide(2, 0) == Verdict::kronecker);
  CHECK(decide(1, 1) == Verdict::mixed);
}

TEST_CASE("classify examples") {
  const auto ex1 = classify_file("misc", "example1.lie");
  CHECK(ex1.n == 4);
  CHECK(ex1.generic_rank == 2);
  CHECK(ex1.index == 2);
  CHECK(ex1.p0.to_string() == "1");
  CHECK(ex1.verdict == Verdict::kronecker);

  CHECK(classify_file("table1", "L1.lie").verdict == Verdict::mixed);
  CHECK(classify_file("table1", "L12.lie").verdict == Verdict::kronecker);

  const auto aff = classify_file("misc", "aff1.lie");
  CHECK(aff.index == 0);
  CHECK(aff.verdict == Verdict::jordan);

  const auto ab = classify(LieAlgebra(5));
  CHECK(ab.index == 5);
  CHECK(ab.p0.to_string() == "1");
  CHECK(ab.verdict == Verdict::kronecker);

  const auto heis = classify_file("misc", "heisenberg3.lie");
  CHECK(heis.p0.to_string() == "x3");
  CHECK(heis.p0_coordinate_degree == 1);
  CHECK(heis.verdict == Verdict::mixed);
}

TEST_CASE("classify rejects invalid algebras") {
  const auto bad = from_text("dim 3\n[e1,e2] = e3\n[e1,e3] = e3\n[e2,e3] = e1\n");
  CHECK_THROWS_AS(classify(bad), InvalidAlgebra);
}

TEST_CASE("report invariants and determinism") {
  for (const auto& c : corpus_algebras()) {
    if (!validate(c.alg).ok()) continue;
    CAPTURE(c.name);
    const auto r = classify(c.alg, c.name);
    CHECK((r.verdict == Verdict::jordan) == (r.index == 0));
    CHECK((r.verdict == Verdict::kronecker) == (r.index > 0 && r.p0_coordinate_degree == 0));
    CHECK((r.verdict == Verdict::mixed) == (r.index > 0 && r.p0_coordinate_degree > 0));
    const auto again = classify(c.alg, c.name);
    CHECK(again.p0 == r.p0);
    CHECK(again.p_lambda == r.p_lambda);
    CHECK(again.verdict == r.verdict);
  }
}

TEST_CASE("parameter-only content is a unit") {
  const auto alg = from_text("dim 2\nparam a != 0\n[e1,e2] = a*e1\n");
  const auto r = classify(alg);
  CHECK(r.index == 0);
  const auto alg3 = from_text("dim 3\nparam a != 0\n[e1,e3] = a*e1\n[e2,e3] = a*e2\n");
  const auto r3 = classify(alg3);
  CHECK(r3.p0.to_string() == "a");
  CHECK(r3.p0_coordinate_degree == 0);
  CHECK(r3.verdict == Verdict::kronecker);
}

TEST_CASE("families") {
  const auto l3 = load_algebra(corpus_dir / "table1" / "L3.lie");
  const auto fam = classify_family(l3, 3, 42, "L_3^a");
  CHECK(fam.symbolic.verdict == Verdict::kronecker);
  REQUIRE(fam.samples.size() == 3);
  CHECK(fam.all_agree());
  for (const auto& s : fam.samples) CHECK(s.binding.at("a") != 0);

  const auto l4 = load_algebra(corpus_dir / "table1" / "L4.lie");
  const auto fam4 = classify_family(l4, 3, 1);
  CHECK(fam4.symbolic.verdict == Verdict::kronecker);
  CHECK(fam4.all_agree());
  for (const auto& s : fam4.samples) CHECK(s.binding.at("b") != 0);

  const auto again = classify_family(l4, 3, 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(again.samples[i].binding == fam4.samples[i].binding);

  CHECK_THROWS_AS(classify_family(LieAlgebra(2), 3, 1), DomainError);
}

TEST_CASE("non-generic samples are surfaced") {
  // a = -1 and a = -2 are special values of L_4^{ab}: there p_0 becomes x4 or 2*x2*x4 - x3^2.
  const auto l4 = load_algebra(corpus_dir / "table1" / "L4.lie");
  const auto fam = classify_family(l4, 3, 42);
  CHECK(fam.symbolic.verdict == Verdict::kronecker);
  CHECK_FALSE(fam.all_agree());
  REQUIRE(fam.samples.size() == 3);
  CHECK(fam.samples[1].binding.at("a") == -1);
  CHECK(fam.samples[1].report.verdict == Verdict::mixed);
  CHECK(fam.samples[1].report.p0.to_string() == "x4");
  CHECK(render_text(fam.symbolic, &fam).find("DISAGREES") != std::string::npos);

  CHECK(classify(substitute_params(l4, {{"a", Rational(-2)}, {"b", Rational(1)}})).p0.to_string() == "2*x2*x4 - x3^2");
  const auto l12 = load_algebra(corpus_dir / "table1" / "L12.lie");
  CHECK(classify(substitute_params(l12, {{"a", Rational(-2)}})).verdict == Verdict::mixed);
}

TEST_CASE("sampling respects exclusions") {
  const auto alg = from_text("dim 2\nparam a != 0\n[e1,e2] = a*e2\n");
  std::mt19937_64 rng(0);
  for (int i = 0; i < 20; ++i) CHECK(sample_parameters(alg, rng).at("a") != 0);
}

TEST_CASE("rendering") {
  const auto alg = load_algebra(corpus_dir / "misc" / "example1.lie");
  const auto r = classify(alg, "example1");
  const std::string text = render_text(r);
  CHECK(text.ends_with("G is of Kronecker type.\n"));
  CHECK(text.find("index = 2\n") != std::string::npos);
  const auto json = render_structured(r, alg);
  CHECK(json["verdict"] == "Kronecker");
  CHECK(json["index"] == 2);
  CHECK(json["p0"] == "1");
  CHECK(parse_structured(json["definition"]) == alg);
}
