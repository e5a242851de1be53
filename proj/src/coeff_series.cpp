#include <cobord/coeff_series.hpp>

namespace cobord {

GradedSeries p_script_series(const TheorySpec& theory, const AlphabetPtr& alph, const std::string& u) {
  const int iu = alph->index_of(u);
  std::vector<SeriesTerm> terms;
  for (int i = 0; i <= theory.trunc(); ++i) {
    Monomial m;
    m.set(iu, -i);
    const CoeffElement p = projective_class(theory, i);
    for (const auto& [g, c] : p.terms()) terms.push_back({m, g, c});
  }
  return GradedSeries::from_terms(theory, alph, std::move(terms));
}

AlphabetPtr segre_variable_alphabet() { return Alphabet::make({{"u", -1}}); }

GradedSeries p_script_series(const TheorySpec& theory) {
  return p_script_series(theory, segre_variable_alphabet(), "u");
}

}  // namespace cobord
