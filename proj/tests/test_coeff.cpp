#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cobord/coeff.hpp>
#include <cobord/coeff_series.hpp>

#include <random>
#include <stdexcept>

using namespace cobord;
using namespace cobord::testing;

TEST_CASE("make_theory") {
  const TheorySpec add = make_theory(TheoryKind::Additive, 6);
  CHECK(add.generator_count() == 0);
  CHECK(add.trunc() == 6);
  CHECK(add.integral());

  const TheorySpec ck = make_theory(TheoryKind::Multiplicative, 4);
  CHECK(ck.generator_count() == 1);
  CHECK(ck.generator_name(0) == "beta");
  CHECK(ck.generator_weight(0) == 1);

  const TheorySpec univ = make_theory(TheoryKind::UniversalRational, 3);
  CHECK(univ.generator_count() == 3);
  CHECK(univ.generator_name(2) == "m3");
  CHECK(univ.generator_weight(2) == 3);
  CHECK_FALSE(univ.integral());

  CHECK_THROWS_AS(make_theory(TheoryKind::Additive, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_theory(TheoryKind::UniversalRational, 13), std::invalid_argument);
}

TEST_CASE("theory names") {
  CHECK(parse_theory_kind("add") == TheoryKind::Additive);
  CHECK(parse_theory_kind("chow") == TheoryKind::Additive);
  CHECK(parse_theory_kind("ck") == TheoryKind::Multiplicative);
  CHECK(parse_theory_kind("univ") == TheoryKind::UniversalRational);
  CHECK_THROWS_AS(parse_theory_kind("K"), std::invalid_argument);
  for (TheoryKind k : all_kinds()) CHECK(parse_theory_kind(theory_short_name(k)) == k);
}

TEST_CASE("truncation drops deep monomials") {
  const TheorySpec th = make_theory(TheoryKind::UniversalRational, 4);
  const CoeffElement m1 = CoeffElement::generator(th, 0);
  const CoeffElement m3 = CoeffElement::generator(th, 2);
  CHECK((m1 * m3).homogeneous_degree() == -4);
  CHECK((m3 * m3).is_zero());
  CHECK(m1.pow(4).min_depth() == 4);
  CHECK(m1.pow(5).is_zero());

  const TheorySpec ck = make_theory(TheoryKind::Multiplicative, 2);
  CHECK(CoeffElement::generator(ck, 0).pow(3).is_zero());
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937 rng(20261018);
  for (TheoryKind kind : all_kinds()) {
    const TheorySpec th = make_theory(kind, 5);
    for (int trial = 0; trial < 40; ++trial) {
      const CoeffElement a = random_coeff(th, rng), b = random_coeff(th, rng), c = random_coeff(th, rng);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK(a * CoeffElement(th, Rational(1)) == a);
      CHECK(a.pow(3) == a * a * a);
    }
  }
}

TEST_CASE("integrality and degree") {
  const TheorySpec th = make_theory(TheoryKind::UniversalRational, 3);
  const CoeffElement m1 = CoeffElement::generator(th, 0);
  const CoeffElement half = m1 * Rational(1, 2);
  CHECK_FALSE(half.has_integer_coefficients());
  CHECK((half * Rational(2)).has_integer_coefficients());
  CHECK_FALSE((m1 + CoeffElement(th, Rational(1))).homogeneous_degree().has_value());
  CHECK(m1.to_string() == "m1");
  CHECK((m1 * Rational(-3, 2)).to_string() == "-3/2*m1");
}

TEST_CASE("projective_class values") {
  const TheorySpec add = make_theory(TheoryKind::Additive, 6);
  CHECK(projective_class(add, 0) == CoeffElement(add, Rational(1)));
  for (int i = 1; i <= 6; ++i) CHECK(projective_class(add, i).is_zero());

  const TheorySpec ck = make_theory(TheoryKind::Multiplicative, 4);
  const CoeffElement beta = CoeffElement::generator(ck, 0);
  for (int i = 0; i <= 4; ++i) CHECK(projective_class(ck, i) == beta.pow(i));

  const TheorySpec univ = make_theory(TheoryKind::UniversalRational, 3);
  CHECK(projective_class(univ, 1) == CoeffElement::generator(univ, 0) * Rational(2));

  CHECK_THROWS_AS(projective_class(univ, -1), std::out_of_range);
  CHECK_THROWS_AS(projective_class(univ, 4), std::out_of_range);
}

TEST_CASE("projective_class agrees with the residue identity") {
  for (TheoryKind kind : all_kinds()) {
    const TheorySpec th = make_theory(kind, 4);
    const FormalGroupLaw fgl = build_fgl(th);
    for (int l = 0; l <= 3; ++l)
      for (int s = 0; s <= l + 1; ++s) {
        CAPTURE(theory_short_name(kind));
        CAPTURE(l);
        CAPTURE(s);
        const CoeffElement expected = s <= l ? projective_class(th, l - s) : CoeffElement(th);
        CHECK(projective_residue(fgl, l, s) == expected);
      }
  }
}

TEST_CASE("logarithm coefficients") {
  const TheorySpec ck = make_theory(TheoryKind::Multiplicative, 3);
  const auto logs = logarithm_coefficients(ck);
  REQUIRE(logs.size() == 4);
  CHECK(logs[2] == CoeffElement::generator(ck, 0).pow(2) * Rational(1, 3));

  const TheorySpec univ = make_theory(TheoryKind::UniversalRational, 3);
  CHECK(logarithm_coefficients(univ)[3] == CoeffElement::generator(univ, 2));
}

TEST_CASE("p_script_series") {
  const TheorySpec add = make_theory(TheoryKind::Additive, 4);
  CHECK(p_script_series(add) == GradedSeries::constant(add, segre_variable_alphabet(), Rational(1)));

  const TheorySpec ck = make_theory(TheoryKind::Multiplicative, 4);
  const AlphabetPtr a = segre_variable_alphabet();
  const CoeffElement beta = CoeffElement::generator(ck, 0);
  GradedSeries geometric(ck, a);
  for (int i = 0; i <= 4; ++i) geometric += mono(ck, a, {{"u", -i}}, beta.pow(i));
  CHECK(p_script_series(ck) == geometric);
  CHECK(p_script_series(ck).homogeneous_degree() == 0);

  const TheorySpec univ = make_theory(TheoryKind::UniversalRational, 2);
  const FormalGroupLaw fgl = build_fgl(univ);
  const GradedSeries expected = cst(univ, a, Rational(1)) +
                                mono(univ, a, {{"u", -1}}, CoeffElement::generator(univ, 0) * Rational(2)) +
                                mono(univ, a, {{"u", -2}}, CoeffElement::generator(univ, 1) * Rational(3));
  CHECK(p_script_series(univ) == expected);
  for (int i = 1; i <= 2; ++i)
    CHECK(p_script_series(univ).coefficient_of([&] {
      Monomial m;
      m.set(0, -i);
      return m;
    }()) == projective_residue(fgl, i, 0));
}
