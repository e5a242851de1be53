#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cobord/coeff_series.hpp>
#include <cobord/segre.hpp>

#include <random>
#include <stdexcept>

using namespace cobord;
using namespace cobord::testing;

namespace {

struct Setup {
  TheorySpec th;
  FormalGroupLaw fgl;
  std::vector<std::string> E;
  AlphabetPtr alph;
};

Setup setup(TheoryKind kind, int T, int e) {
  const TheorySpec th = make_theory(kind, T);
  const auto roots = root_names("x", e);
  return {th, build_fgl(th), roots, segre_alphabet(roots)};
}

}  // namespace

TEST_CASE("bundles") {
  CHECK(honest_bundle({"x1", "x2"}).rank() == 2);
  CHECK(virtual_bundle({"x1"}, {"y1", "y2"}).rank() == -1);
  CHECK_THROWS_AS(virtual_bundle({"x1"}, {"x1"}), std::invalid_argument);
  CHECK(root_names("y", 3) == std::vector<std::string>{"y1", "y2", "y3"});
}

TEST_CASE("Chern polynomials") {
  const Setup s = setup(TheoryKind::Multiplicative, 4, 1);
  CHECK(chern_poly(s.th, s.alph, honest_bundle(s.E), "u") ==
        cst(s.th, s.alph, Rational(1)) + mono(s.th, s.alph, {{"x1", 1}, {"u", 1}}));

  const TheorySpec add = make_theory(TheoryKind::Additive, 3);
  const AlphabetPtr a = segre_alphabet({"x1", "x2", "y1"});
  const GradedSeries c = chern_poly(add, a, virtual_bundle({"x1", "x2"}, {"y1"}), "u", 1, 4);
  CHECK(c.cap(a->index_of("u")) == 4);
  const std::vector<std::string> x{"x1", "x2"}, y{"y1"};
  for (int i = 0; i <= 4; ++i) {
    GradedSeries expected(add, a);
    for (int j = 0; j <= i; ++j)
      expected += elementary(add, a, x, i - j) * complete(add, a, y, j) * Rational(j % 2 == 0 ? 1 : -1);
    CHECK(extract_in(c, "u", i) == expected);
  }
  CHECK_THROWS(chern_poly(add, a, virtual_bundle({"x1"}, {"y1"}), "u"));
}

TEST_CASE("w classes") {
  for (int e = 1; e <= 3; ++e) {
    const Setup s = setup(TheoryKind::Additive, 4, e);
    CHECK(w_series(s.fgl, s.alph, s.E, "u") == cst(s.th, s.alph, Rational(1)));
    CHECK(w_tilde_series(s.fgl, s.alph, s.E, "u") == cst(s.th, s.alph, Rational(1)));
  }
  const Setup s = setup(TheoryKind::Multiplicative, 5, 1);
  const CoeffElement beta = CoeffElement::generator(s.th, 0);
  GradedSeries geometric(s.th, s.alph);
  for (int j = 0; j <= 5; ++j) geometric += mono(s.th, s.alph, {{"x1", j}}, beta.pow(j));
  CHECK(w_series(s.fgl, s.alph, s.E, "u") == geometric);
  CHECK(w_tilde_series(s.fgl, s.alph, s.E, "u") ==
        cst(s.th, s.alph, Rational(1)) - mono(s.th, s.alph, {{"x1", 1}}, beta));
}

TEST_CASE("additive Segre classes are complete symmetric functions") {
  for (int e = 1; e <= 3; ++e) {
    const Setup s = setup(TheoryKind::Additive, 4, e);
    const SegreSeries S = segre_closed(s.fgl, s.alph, s.E, "u", 4);
    for (int m = -4; m <= 4; ++m) {
      CAPTURE(m);
      if (m < 0)
        CHECK(S.coefficient(m).is_zero());
      else
        CHECK(S.coefficient(m) == complete(s.th, s.alph, s.E, m));
    }
    CHECK_THROWS_AS(S.coefficient(5), std::out_of_range);
    CHECK_THROWS_AS(S.coefficient(-5), std::out_of_range);
  }
}

TEST_CASE("multiplicative Segre series") {
  const Setup s = setup(TheoryKind::Multiplicative, 4, 2);
  const CoeffElement beta = CoeffElement::generator(s.th, 0);
  const int iu = s.alph->index_of("u");
  GradedSeries p(s.th, s.alph);
  for (int i = 0; i <= 4; ++i) p += mono(s.th, s.alph, {{"u", -i}}, beta.pow(i));
  GradedSeries c_beta = cst(s.th, s.alph, Rational(1));
  for (const auto& r : s.E) c_beta = c_beta * (cst(s.th, s.alph, Rational(1)) - var(s.th, s.alph, r) * beta);
  const GradedSeries inv = inverse(chern_poly(s.th, s.alph, honest_bundle(s.E), "u", -1).with_cap(iu, 8));
  const GradedSeries expected = p * c_beta * inv;
  const SegreSeries S = segre_closed(s.fgl, s.alph, s.E, "u", 3);
  for (int m = -4; m <= 3; ++m) CHECK(S.coefficient(m) == extract_in(expected, "u", m));
}

TEST_CASE("residue sums") {
  const TheorySpec th = make_theory(TheoryKind::UniversalRational, 3);
  const auto v = root_names("v", 3);
  const AlphabetPtr a = extend_alphabet(Alphabet::of(v), {{"t", 1}});
  std::vector<GradedSeries> nums;
  for (const auto& name : v) nums.push_back(var(th, a, name).pow(4));
  CHECK(residue_sum(nums, v) == complete(th, a, v, 2));

  const CoeffElement m1 = CoeffElement::generator(th, 0);
  const GradedSeries t = var(th, a, "t");
  const GradedSeries H = t.pow(5) + t.pow(3) * elementary(th, a, v, 1) * m1 +
                         t * elementary(th, a, v, 2) * Rational(3, 2) + elementary(th, a, v, 3) * m1;
  std::vector<GradedSeries> hs;
  for (const auto& name : v) hs.push_back(substitute(H, "t", var(th, a, name)));
  CHECK(residue_sum_symmetric(H, "t", v) == residue_sum(hs, v));
  CHECK_THROWS_AS(residue_sum_symmetric(H + var(th, a, "v1"), "t", v), std::invalid_argument);

  std::vector<GradedSeries> bad{var(th, a, "v1"), var(th, a, "v1"), var(th, a, "v1")};
  CHECK_NOTHROW(residue_sum(bad, v));
  bad[0] = var(th, a, "t");
  CHECK_THROWS_AS(residue_sum(bad, v), VerificationError);
}

TEST_CASE("difference unit") {
  for (TheoryKind kind : all_kinds()) {
    const TheorySpec th = make_theory(kind, 5);
    const FormalGroupLaw fgl = build_fgl(th);
    const DifferenceUnit d = difference_unit(fgl);
    CHECK(d.unit == fgl.P());
    CHECK((d.unit * d.unit_inverse).same_terms(cst(th, fgl.P().alphabet(), Rational(1))));
  }
}

TEST_CASE("residue oracle examples") {
  const Setup add1 = setup(TheoryKind::Additive, 4, 1);
  for (int m = 0; m <= 4; ++m)
    CHECK(segre_residue_oracle(add1.fgl, add1.alph, add1.E, m, 0) == var(add1.th, add1.alph, "x1").pow(m));

  const Setup add2 = setup(TheoryKind::Additive, 4, 2);
  CHECK(segre_residue_oracle(add2.fgl, add2.alph, add2.E, 1, 0) ==
        var(add2.th, add2.alph, "x1") + var(add2.th, add2.alph, "x2"));

  const Setup ck2 = setup(TheoryKind::Multiplicative, 4, 2);
  const SegreSeries S = segre_closed(ck2.fgl, ck2.alph, ck2.E, "u", 1);
  CHECK(segre_residue_oracle(ck2.fgl, ck2.alph, ck2.E, -1, 0) == S.coefficient(-1));

  CHECK(minimal_padding(-3, 2) == 2);
  CHECK(minimal_padding(2, 2) == 0);
  CHECK_THROWS(segre_residue_oracle(ck2.fgl, ck2.alph, ck2.E, -3, 0));
}

TEST_CASE("residue oracle is independent of the padding") {
  for (TheoryKind kind : all_kinds()) {
    const Setup s = setup(kind, 4, 2);
    for (int m = -3; m <= 2; ++m) {
      const int n0 = minimal_padding(m, 2);
      const GradedSeries base = segre_residue_oracle(s.fgl, s.alph, s.E, m, n0);
      CAPTURE(m);
      CHECK(segre_residue_oracle(s.fgl, s.alph, s.E, m, n0 + 1) == base);
      CHECK(segre_residue_oracle(s.fgl, s.alph, s.E, m, n0 + 2) == base);
    }
  }
}

TEST_CASE("R series") {
  const Setup add = setup(TheoryKind::Additive, 4, 2);
  const SegreSeries Ra = r_series(add.fgl, add.alph, add.E, "u", 3);
  CHECK(Ra.series.same_terms(cst(add.th, add.alph, Rational(1))));

  const Setup ck = setup(TheoryKind::Multiplicative, 4, 1);
  const CoeffElement beta = CoeffElement::generator(ck.th, 0);
  const SegreSeries Rc = r_series(ck.fgl, ck.alph, ck.E, "u", 2);
  const GradedSeries wt = w_tilde_series(ck.fgl, ck.alph, ck.E, "u");
  for (int l = 0; l <= 4; ++l) {
    GradedSeries expected(ck.th, ck.alph);
    for (int s = 0; s <= l; ++s) expected += extract_in(wt, "u", -s) * beta.pow(l - s);
    CHECK(Rc.coefficient(-l) == expected);
  }
  for (int m = 1; m <= 2; ++m) CHECK(Rc.coefficient(m).is_zero());

  const Setup un = setup(TheoryKind::UniversalRational, 2, 1);
  const SegreSeries Ru = r_series(un.fgl, un.alph, un.E, "u", 1);
  const GradedSeries wtu = w_tilde_series(un.fgl, un.alph, un.E, "u");
  const CoeffElement p1 = CoeffElement::generator(un.th, 0) * Rational(2);
  CHECK(Ru.coefficient(-1) == extract_in(wtu, "u", -1) + extract_in(wtu, "u", 0) * p1);
  CHECK(set_zero(Ru.coefficient(-1), un.E) == set_zero(extract_in(wtu, "u", -1), un.E) + cst(un.th, un.alph, p1));
}

TEST_CASE("relative Segre classes") {
  for (TheoryKind kind : all_kinds()) {
    const Setup s = setup(kind, 4, 2);
    const SegreSeries plain = segre_closed(s.fgl, s.alph, s.E, "u", 2);
    const SegreSeries rel = relative_segre(s.fgl, s.alph, s.E, {}, "u", 2);
    for (int m = -4; m <= 2; ++m) CHECK(rel.coefficient(m) == plain.coefficient(m));
    const SegreSeries same = relative_segre(s.fgl, s.alph, s.E, s.E, "u", 0);
    CHECK(same.series.same_terms(p_script_series(s.th, s.alph, "u")));
  }

  const TheorySpec add = make_theory(TheoryKind::Additive, 4);
  const FormalGroupLaw fgl = build_fgl(add);
  const AlphabetPtr a = segre_alphabet({"x1", "y1"});
  const SegreSeries S = relative_segre(fgl, a, {"x1"}, {"y1"}, "u", 4);
  const GradedSeries x = var(add, a, "x1"), y = var(add, a, "y1");
  CHECK(S.coefficient(0) == cst(add, a, Rational(1)));
  for (int m = 1; m <= 4; ++m) CHECK(S.coefficient(m) == x.pow(m) - y * x.pow(m - 1));
}

TEST_CASE("push-forward of twisted top Chern classes") {
  const TheorySpec th = make_theory(TheoryKind::Multiplicative, 4);
  const FormalGroupLaw fgl = build_fgl(th);
  const std::vector<std::string> E{"x1", "x2"}, F{"y1"};
  const AlphabetPtr a = segre_alphabet({"x1", "x2", "y1"});
  const SegreSeries S = relative_segre(fgl, a, E, F, "u", 3);
  for (int s = 0; s <= 2; ++s) CHECK(pushforward_cf_twist(fgl, a, E, F, s) == S.coefficient(s));
}

TEST_CASE("Chern class rewriting") {
  const Setup s = setup(TheoryKind::Additive, 3, 2);
  const GradedSeries h2 = complete(s.th, s.alph, s.E, 2);
  const GradedSeries r = to_chern_classes(h2, s.E, "E");
  const AlphabetPtr ra = r.alphabet();
  CHECK(r == var(s.th, ra, "c1(E)").pow(2) - var(s.th, ra, "c2(E)"));
}
