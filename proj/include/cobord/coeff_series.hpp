#pragma once

#include <cobord/coeff.hpp>
#include <cobord/series.hpp>

#include <string>

namespace cobord {

/// P(u) = sum_{i<=T} [P^i] u^{-i}, over an alphabet holding u (degree -1).
GradedSeries p_script_series(const TheorySpec& theory, const AlphabetPtr& alph, const std::string& u);
/// Same over the one-variable alphabet {u}.
GradedSeries p_script_series(const TheorySpec& theory);

/// The alphabet {u} with u of degree -1.
AlphabetPtr segre_variable_alphabet();

}  // namespace cobord
