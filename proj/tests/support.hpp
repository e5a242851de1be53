#pragma once

// Shared helpers and independent oracles for the test binaries.

#include <cobord/coeff.hpp>
#include <cobord/fgl.hpp>
#include <cobord/segre.hpp>
#include <cobord/series.hpp>

#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cobord::testing {

inline const std::vector<TheoryKind>& all_kinds() {
  static const std::vector<TheoryKind> kinds{TheoryKind::Additive, TheoryKind::Multiplicative,
                                             TheoryKind::UniversalRational};
  return kinds;
}

inline GradedSeries var(const TheorySpec& th, const AlphabetPtr& a, const std::string& name) {
  return GradedSeries::variable(th, a, name);
}

inline GradedSeries cst(const TheorySpec& th, const AlphabetPtr& a, const Rational& q) {
  return GradedSeries::constant(th, a, q);
}

inline GradedSeries cst(const TheorySpec& th, const AlphabetPtr& a, const CoeffElement& c) {
  return GradedSeries::constant(th, a, c);
}

/// c * prod name^exp.
inline GradedSeries mono(const TheorySpec& th, const AlphabetPtr& a,
                         std::initializer_list<std::pair<const char*, int>> exps, const CoeffElement& c) {
  Monomial m;
  for (const auto& [name, e] : exps) m.set(a->index_of(name), e);
  return GradedSeries::monomial(th, a, m, c);
}

inline GradedSeries mono(const TheorySpec& th, const AlphabetPtr& a,
                         std::initializer_list<std::pair<const char*, int>> exps, const Rational& q = 1) {
  return mono(th, a, exps, CoeffElement(th, q));
}

/// Sum_{k=1}^{l+1} y_k^s / prod_{q != k} F(y_k, chi(y_q)) at y = 0, with
/// each factor F(y_k, chi(y_q)) built from the law and divided by
/// (y_k - y_q) separately. Equals [P^{l-s}] for s <= l and 0 for s > l.
inline CoeffElement projective_residue(const FormalGroupLaw& fgl, int l, int s) {
  const TheorySpec& th = fgl.theory();
  const std::vector<std::string> roots = root_names("y", l + 1);
  const AlphabetPtr alph = Alphabet::of(roots);
  std::vector<GradedSeries> y;
  for (const auto& r : roots) y.push_back(var(th, alph, r));
  std::vector<GradedSeries> numerators;
  for (int k = 0; k <= l; ++k) {
    GradedSeries g = y[k].pow(s);
    for (int q = 0; q <= l; ++q) {
      if (q == k) continue;
      const GradedSeries f = fgl.apply(y[k], fgl.inverse_of(y[q]));
      g = g * inverse(divide_by_difference(f, roots[k], roots[q]));
    }
    numerators.push_back(g);
  }
  return set_zero(residue_sum(numerators, roots), roots).constant_term();
}

/// A random coefficient: up to `terms` generator monomials of depth <= T
/// with small integer or half-integer coefficients.
inline CoeffElement random_coeff(const TheorySpec& th, std::mt19937& rng, int terms = 3) {
  CoeffElement c(th);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, th.integral() ? 1 : 2);
  for (int t = 0; t < terms; ++t) {
    GenMonomial g;
    for (int i = 0; i < th.generator_count(); ++i) {
      std::uniform_int_distribution<int> e(0, 2);
      g.set(i, e(rng));
      if (th.depth(g) > th.trunc()) g.set(i, 0);
    }
    Rational q(num(rng), den(rng));
    q.canonicalize();
    c += CoeffElement(th, g, q);
  }
  return c;
}

/// A random polynomial in the variables of `alph`.
inline GradedSeries random_series(const TheorySpec& th, const AlphabetPtr& alph, std::mt19937& rng, int terms,
                                  int max_exp) {
  std::vector<SeriesTerm> out;
  std::uniform_int_distribution<int> e(0, max_exp);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (std::size_t v = 0; v < alph->size(); ++v) m.set(v, e(rng));
    const CoeffElement c = random_coeff(th, rng, 1);
    for (const auto& [g, q] : c.terms()) out.push_back({m, g, q});
  }
  return GradedSeries::from_terms(th, alph, std::move(out));
}

}  // namespace cobord::testing
