#include <cobord/io.hpp>

#include <stdexcept>

namespace cobord::io {

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "latex") return Format::Latex;
  if (name == "text") return Format::Text;
  throw std::invalid_argument("unknown format '" + name + "'");
}

Json theory_to_json(const TheorySpec& theory) {
  return Json{{"kind", std::string(theory_short_name(theory.kind()))}, {"trunc", theory.trunc()}};
}

TheorySpec theory_from_json(const Json& j) {
  return make_theory(parse_theory_kind(j.at("kind").get<std::string>()), j.at("trunc").get<int>());
}

Json monomial_coeff_to_json(const TheorySpec& theory, const GenMonomial& g, const Rational& q) {
  Json gens = Json::object();
  for (int i = 0; i < theory.generator_count(); ++i)
    if (g[i] != 0) gens[theory.generator_name(i)] = static_cast<int>(g[i]);
  return Json{{"generators", gens}, {"numerator", q.get_num().get_str()}, {"denominator", q.get_den().get_str()}};
}

Json coeff_terms_to_json(const CoeffElement& c) {
  Json out = Json::array();
  for (const auto& [g, q] : c.terms()) out.push_back(monomial_coeff_to_json(c.theory(), g, q));
  return out;
}

CoeffElement coeff_from_json(const TheorySpec& theory, const Json& j) {
  GenMonomial g;
  for (const auto& [name, e] : j.at("generators").items()) {
    int index = -1;
    for (int i = 0; i < theory.generator_count(); ++i)
      if (theory.generator_name(i) == name) index = i;
    if (index < 0) throw std::invalid_argument("unknown generator '" + name + "'");
    g.set(index, e.get<int>());
  }
  Rational q(mpz_class(j.at("numerator").get<std::string>()), mpz_class(j.at("denominator").get<std::string>()));
  q.canonicalize();
  return CoeffElement(theory, g, q);
}

Json series_to_json(const GradedSeries& f) {
  const Alphabet& alph = *f.alphabet();
  Json vars = Json::array();
  Json caps = Json::object();
  for (std::size_t i = 0; i < alph.size(); ++i) {
    vars.push_back(Json{{"name", alph[i].name}, {"degree", alph[i].degree}});
    if (f.cap(static_cast<int>(i)) != kNoCap) caps[alph[i].name] = f.cap(static_cast<int>(i));
  }
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    Json exps = Json::object();
    for (std::size_t i = 0; i < alph.size(); ++i)
      if (t.mono[i] != 0) exps[alph[i].name] = static_cast<int>(t.mono[i]);
    terms.push_back(Json{{"coeff", monomial_coeff_to_json(f.theory(), t.gen, t.coeff)}, {"exponents", exps}});
  }
  return Json{{"meta", {{"alphabet", vars}, {"caps", caps}, {"theory", theory_to_json(f.theory())}}},
              {"terms", terms}};
}

GradedSeries series_from_json(const Json& j) {
  const Json& meta = j.at("meta");
  const TheorySpec theory = theory_from_json(meta.at("theory"));
  std::vector<Variable> vars;
  for (const auto& v : meta.at("alphabet")) vars.push_back({v.at("name").get<std::string>(), v.at("degree").get<int>()});
  const AlphabetPtr alph = Alphabet::make(std::move(vars));
  CapArray caps = no_caps();
  for (const auto& [name, cap] : meta.at("caps").items()) caps[alph->index_of(name)] = cap.get<int>();
  std::vector<SeriesTerm> terms;
  for (const auto& t : j.at("terms")) {
    Monomial m;
    for (const auto& [name, e] : t.at("exponents").items()) m.set(alph->index_of(name), e.get<int>());
    const CoeffElement c = coeff_from_json(theory, t.at("coeff"));
    for (const auto& [g, q] : c.terms()) terms.push_back({m, g, q});
  }
  return GradedSeries::from_terms(theory, alph, std::move(terms), caps);
}

namespace {

Json factor_to_json(const ClassFactor& f) {
  if (f.kind == ClassFactor::Kind::Tau) return Json{{"tau", {{"j", f.row}, {"power", f.k}}}};
  return Json{{"A", {{"k", f.k}, {"l", f.ell}, {"row", f.row}}}};
}

ClassFactor factor_from_json(const Json& j) {
  if (j.contains("tau")) return {ClassFactor::Kind::Tau, j["tau"].at("j").get<int>(), j["tau"].at("power").get<int>(), 0};
  const Json& a = j.at("A");
  return {ClassFactor::Kind::A, a.at("row").get<int>(), a.at("k").get<int>(), a.at("l").get<int>()};
}

}  // namespace

Json expression_to_json(const ClassExpression& e, const Json& meta) {
  Json m = meta;
  m["theory"] = theory_to_json(e.theory());
  Json terms = Json::array();
  for (const auto& t : e.terms()) {
    Json factors = Json::array();
    for (const auto& f : t.factors) factors.push_back(factor_to_json(f));
    for (const auto& [g, q] : t.coeff.terms())
      terms.push_back(Json{{"coeff", monomial_coeff_to_json(e.theory(), g, q)}, {"factors", factors}});
  }
  Json doc{{"meta", m}, {"terms", terms}};
  if (e.evaluated()) {
    Json schur = Json::array();
    for (const auto& [mu, c] : e.evaluated()->coeffs)
      schur.push_back(Json{{"partition", mu.parts}, {"coeff", coeff_terms_to_json(c)}});
    doc["evaluated"] = Json{{"schur", schur}};
  }
  return doc;
}

ClassExpression expression_from_json(const Json& j) {
  const TheorySpec theory = theory_from_json(j.at("meta").at("theory"));
  ClassExpression e(theory);
  for (const auto& t : j.at("terms")) {
    std::vector<ClassFactor> factors;
    for (const auto& f : t.at("factors")) factors.push_back(factor_from_json(f));
    e.add_term(std::move(factors), coeff_from_json(theory, t.at("coeff")));
  }
  e.canonicalize();
  if (j.contains("evaluated")) {
    SchurClass c;
    for (const auto& s : j["evaluated"].at("schur")) {
      CoeffElement a(theory);
      for (const auto& term : s.at("coeff")) a += coeff_from_json(theory, term);
      if (!a.is_zero()) c.coeffs.emplace(Partition{s.at("partition").get<std::vector<int>>()}, a);
    }
    e.set_evaluated(std::move(c));
  }
  return e;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cobord::io
