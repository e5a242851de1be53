#include <cobord/fgl.hpp>

#include <sstream>

namespace cobord {

namespace {

enum Slot { U = 0, V = 1, W = 2, Z = 3, X = 4 };

GradedSeries law_var(const TheorySpec& th, Slot s) {
  return GradedSeries::variable(th, FormalGroupLaw::law_alphabet(), static_cast<int>(s));
}

const AlphabetPtr& t_alphabet() {
  static const AlphabetPtr a = Alphabet::of({"t"});
  return a;
}

}  // namespace

const AlphabetPtr& FormalGroupLaw::law_alphabet() {
  static const AlphabetPtr a = Alphabet::of({"u", "v", "w", "z", "x"});
  return a;
}

FormalGroupLaw::FormalGroupLaw(const TheorySpec& theory, GradedSeries F, GradedSeries chi, GradedSeries P)
    : theory_(theory), F_(std::move(F)), chi_(std::move(chi)), P_(std::move(P)) {}

std::vector<GradedSeries> FormalGroupLaw::args(const GradedSeries& first, const GradedSeries& second,
                                               int slot) const {
  GradedSeries zero(theory_, first.alphabet());
  std::vector<GradedSeries> a(5, zero);
  a[slot] = first;
  a[slot + 1] = second;
  return a;
}

GradedSeries FormalGroupLaw::apply(const GradedSeries& a, const GradedSeries& b) const {
  return evaluate(F_, args(a, b, U));
}

GradedSeries FormalGroupLaw::inverse_of(const GradedSeries& a) const {
  return evaluate(chi_, args(a, GradedSeries(theory_, a.alphabet()), U));
}

GradedSeries FormalGroupLaw::p_of(const GradedSeries& a, const GradedSeries& b) const {
  return evaluate(P_, args(a, b, Z));
}

GradedSeries logarithm_series(const TheorySpec& theory) {
  const auto coeffs = logarithm_coefficients(theory);
  std::vector<SeriesTerm> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m;
    m.set(0, static_cast<int>(i) + 1);
    for (const auto& [g, c] : coeffs[i].terms()) terms.push_back({m, g, c});
  }
  return GradedSeries::from_terms(theory, t_alphabet(), std::move(terms));
}

GradedSeries exponential_series(const TheorySpec& theory) {
  const GradedSeries log = logarithm_series(theory);
  GradedSeries e = GradedSeries::variable(theory, t_alphabet(), 0);
  for (int k = 2; k <= theory.trunc() + 1; ++k) {
    Monomial m;
    m.set(0, k);
    const CoeffElement c = evaluate(log, {e}).coefficient_of(m);
    if (!c.is_zero()) e -= GradedSeries::monomial(theory, t_alphabet(), m, c);
  }
  return e;
}

GradedSeries law_series(const TheorySpec& theory) {
  const GradedSeries u = law_var(theory, U), v = law_var(theory, V);
  switch (theory.kind()) {
    case TheoryKind::Additive: return u + v;
    case TheoryKind::Multiplicative: return u + v - u * v * CoeffElement::generator(theory, 0);
    case TheoryKind::UniversalRational: {
      const GradedSeries log = logarithm_series(theory);
      return evaluate(exponential_series(theory), {evaluate(log, {u}) + evaluate(log, {v})});
    }
  }
  throw std::logic_error("unreachable");
}

GradedSeries formal_inverse(const GradedSeries& F) {
  const TheorySpec& th = F.theory();
  const AlphabetPtr& alph = FormalGroupLaw::law_alphabet();
  const GradedSeries zero(th, alph);
  const GradedSeries u = law_var(th, U);
  GradedSeries chi = -u;
  for (int k = 2; k <= th.trunc() + 1; ++k) {
    Monomial m;
    m.set(U, k);
    const CoeffElement c = evaluate(F, {u, chi, zero, zero, zero}).coefficient_of(m);
    if (!c.is_zero()) chi -= GradedSeries::monomial(th, alph, m, c);
  }
  return chi;
}

GradedSeries formal_inverse(const FormalGroupLaw& fgl) { return fgl.chi(); }

GradedSeries p_factor(const GradedSeries& F, const GradedSeries& chi) {
  const TheorySpec& th = F.theory();
  const GradedSeries zero(th, FormalGroupLaw::law_alphabet());
  const GradedSeries chi_x = evaluate(chi, {law_var(th, X), zero, zero, zero, zero});
  const GradedSeries f = evaluate(F, {law_var(th, Z), chi_x, zero, zero, zero});
  return divide_by_difference(f, "z", "x");
}

GradedSeries p_factor(const FormalGroupLaw& fgl) { return fgl.P(); }

FormalGroupLaw fgl_from_series(const TheorySpec& theory, const GradedSeries& F) {
  const GradedSeries Fl = embed(F, FormalGroupLaw::law_alphabet());
  GradedSeries chi = formal_inverse(Fl);
  GradedSeries P = p_factor(Fl, chi);
  return FormalGroupLaw(theory, Fl, std::move(chi), std::move(P));
}

FormalGroupLaw build_fgl(const TheorySpec& theory) {
  FormalGroupLaw fgl = fgl_from_series(theory, law_series(theory));
  const AxiomReport report = verify_axioms(fgl);
  if (!report.all_passed()) throw VerificationError("formal group law axioms failed:\n" + report.to_string());
  return fgl;
}

// Verification ----------------------------------------------------------------

namespace {

AxiomCheck check_zero(const std::string& name, const GradedSeries& defect) {
  AxiomCheck c;
  c.name = name;
  if (defect.is_zero()) return c;
  c.passed = false;
  const SeriesTerm& t = defect.terms().front();
  c.first_offending = GradedSeries::from_terms(defect.theory(), defect.alphabet(), {t}).to_string();
  c.monomial_degree = defect.alphabet()->degree(t.mono);
  c.coefficient_degree = -defect.theory().depth(t.gen);
  return c;
}

}  // namespace

bool AxiomReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const AxiomCheck& AxiomReport::at(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no axiom check named '" + name + "'");
}

std::string AxiomReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed)
      os << ": first offending term " << c.first_offending << " (monomial degree " << c.monomial_degree
         << ", coefficient degree " << c.coefficient_degree << ")";
    os << "\n";
  }
  return os.str();
}

AxiomReport verify_axioms(const FormalGroupLaw& fgl) {
  const TheorySpec& th = fgl.theory();
  const GradedSeries u = law_var(th, U), v = law_var(th, V), w = law_var(th, W);
  const GradedSeries z = law_var(th, Z), x = law_var(th, X);
  const GradedSeries zero(th, FormalGroupLaw::law_alphabet());
  AxiomReport r;
  r.checks.push_back(check_zero("unit_right", fgl.apply(u, zero) - u));
  r.checks.push_back(check_zero("unit_left", fgl.apply(zero, u) - u));
  const GradedSeries Fuv = fgl.apply(u, v);
  r.checks.push_back(check_zero("commutativity", Fuv - fgl.apply(v, u)));
  r.checks.push_back(check_zero("associativity", fgl.apply(u, fgl.apply(v, w)) - fgl.apply(Fuv, w)));
  const GradedSeries chi_u = fgl.inverse_of(u);
  r.checks.push_back(check_zero("inverse", fgl.apply(u, chi_u)));
  r.checks.push_back(check_zero("involution", fgl.inverse_of(chi_u) - u));
  r.checks.push_back(check_zero("factorization", fgl.apply(z, fgl.inverse_of(x)) - (z - x) * fgl.P()));
  // P has constant term 1 and total degree 0.
  AxiomCheck norm = check_zero("p_constant_term", GradedSeries::constant(th, FormalGroupLaw::law_alphabet(),
                                                                         fgl.P().constant_term() -
                                                                             CoeffElement(th, Rational(1))));
  r.checks.push_back(norm);
  AxiomCheck deg;
  deg.name = "p_degree_zero";
  const auto hd = fgl.P().homogeneous_degree();
  deg.passed = hd.has_value() && *hd == 0;
  if (!deg.passed) deg.first_offending = "P is not homogeneous of degree 0";
  r.checks.push_back(deg);
  return r;
}

}  // namespace cobord
