#pragma once

// JSON, LaTeX and text serialization.
//
// JSON documents have the shape {meta, terms[]}; keys are sorted. A
// coefficient is {generators: {name: exponent}, numerator, denominator},
// with the integers written as decimal strings.

#include <cobord/coeff.hpp>
#include <cobord/kl.hpp>
#include <cobord/series.hpp>

#include <json.hpp>

#include <string>

namespace cobord::io {

using Json = nlohmann::json;

enum class Format { Json, Latex, Text };

/// "json", "latex" or "text"; throws std::invalid_argument otherwise.
Format parse_format(const std::string& name);

Json theory_to_json(const TheorySpec& theory);
TheorySpec theory_from_json(const Json& j);

/// One entry per generator monomial of c.
Json coeff_terms_to_json(const CoeffElement& c);
Json monomial_coeff_to_json(const TheorySpec& theory, const GenMonomial& g, const Rational& q);
CoeffElement coeff_from_json(const TheorySpec& theory, const Json& j);

Json series_to_json(const GradedSeries& f);
GradedSeries series_from_json(const Json& j);

/// `meta` is merged into the document's meta object.
Json expression_to_json(const ClassExpression& e, const Json& meta = Json::object());
ClassExpression expression_from_json(const Json& j);

/// Deterministic serialization (sorted keys, two-space indent).
std::string dump(const Json& j);

}  // namespace cobord::io
