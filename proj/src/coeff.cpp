#include <cobord/coeff.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cobord {

TheoryKind parse_theory_kind(std::string_view name) {
  if (name == "add" || name == "additive" || name == "chow" || name == "Additive") return TheoryKind::Additive;
  if (name == "ck" || name == "mult" || name == "multiplicative" || name == "Multiplicative")
    return TheoryKind::Multiplicative;
  if (name == "univ" || name == "universal" || name == "UniversalRational") return TheoryKind::UniversalRational;
  throw std::invalid_argument("unknown theory kind '" + std::string(name) + "' (expected add, ck or univ)");
}

std::string_view theory_short_name(TheoryKind kind) {
  switch (kind) {
    case TheoryKind::Additive: return "add";
    case TheoryKind::Multiplicative: return "ck";
    case TheoryKind::UniversalRational: return "univ";
  }
  return "?";
}

std::string TheorySpec::generator_name(int g) const {
  if (kind_ == TheoryKind::Multiplicative) return "beta";
  return "m" + std::to_string(g + 1);
}

std::string TheorySpec::generator_latex(int g) const {
  if (kind_ == TheoryKind::Multiplicative) return "\\beta";
  return "m_{" + std::to_string(g + 1) + "}";
}

TheorySpec make_theory(TheoryKind kind, int trunc) {
  if (trunc < 1) throw std::invalid_argument("truncation order must be >= 1, got " + std::to_string(trunc));
  if (trunc > static_cast<int>(kMaxGenerators))
    throw std::invalid_argument("truncation order " + std::to_string(trunc) + " exceeds the supported maximum " +
                                std::to_string(kMaxGenerators));
  return TheorySpec(kind, trunc);
}

std::ostream& operator<<(std::ostream& os, const TheorySpec& t) {
  return os << theory_short_name(t.kind()) << "(T=" << t.trunc() << ")";
}

// CoeffElement ---------------------------------------------------------------

CoeffElement::CoeffElement(const TheorySpec& theory, const Rational& scalar) : theory_(theory) {
  if (scalar != 0) terms_.emplace_back(GenMonomial{}, scalar);
}

CoeffElement::CoeffElement(const TheorySpec& theory, const GenMonomial& g, const Rational& c) : theory_(theory) {
  if (c != 0 && theory.depth(g) <= theory.trunc()) terms_.emplace_back(g, c);
}

CoeffElement CoeffElement::generator(const TheorySpec& theory, int g) {
  if (g < 0 || g >= theory.generator_count()) throw std::out_of_range("generator index out of range");
  GenMonomial m;
  m.set(g, 1);
  return CoeffElement(theory, m, Rational(1));
}

Rational CoeffElement::at(const GenMonomial& g) const {
  for (const auto& [m, c] : terms_)
    if (m == g) return c;
  return Rational(0);
}

int CoeffElement::min_depth() const noexcept {
  if (terms_.empty()) return 0;
  return theory_.depth(terms_.front().first);
}

std::optional<int> CoeffElement::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const int d = theory_.depth(terms_.front().first);
  for (const auto& t : terms_)
    if (theory_.depth(t.first) != d) return std::nullopt;
  return -d;
}

bool CoeffElement::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return is_integer(t.second); });
}

void CoeffElement::normalize() {
  GenOrder order{&theory_};
  std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return order(a.first, b.first); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (theory_.depth(t.first) > theory_.trunc()) continue;
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.second == 0; });
  terms_ = std::move(merged);
}

CoeffElement& CoeffElement::operator+=(const CoeffElement& o) {
  if (o.terms_.empty()) return *this;
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

CoeffElement& CoeffElement::operator-=(const CoeffElement& o) {
  if (o.terms_.empty()) return *this;
  for (const auto& [g, c] : o.terms_) terms_.emplace_back(g, -c);
  normalize();
  return *this;
}

CoeffElement& CoeffElement::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= q;
  return *this;
}

CoeffElement operator*(const CoeffElement& a, const CoeffElement& b) {
  CoeffElement out(a.theory_);
  const int cap = a.theory_.trunc();
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ga, ca] : a.terms_) {
    const int da = a.theory_.depth(ga);
    for (const auto& [gb, cb] : b.terms_) {
      if (da + a.theory_.depth(gb) > cap) break;  // terms are sorted by depth
      out.terms_.emplace_back(ga + gb, ca * cb);
    }
  }
  out.normalize();
  return out;
}

bool operator==(const CoeffElement& a, const CoeffElement& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

CoeffElement CoeffElement::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power of a coefficient");
  CoeffElement r(theory_, Rational(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

namespace {

std::string format_gens(const TheorySpec& th, const GenMonomial& g, bool latex) {
  std::string s;
  for (int i = 0; i < th.generator_count(); ++i) {
    if (g[i] == 0) continue;
    if (!s.empty()) s += latex ? " " : "*";
    s += latex ? th.generator_latex(i) : th.generator_name(i);
    if (g[i] > 1) s += latex ? "^{" + std::to_string(g[i]) + "}" : "^" + std::to_string(g[i]);
  }
  return s;
}

std::string format_rational_latex(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

}  // namespace

std::string CoeffElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    const std::string gens = format_gens(theory_, g, false);
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (gens.empty())
      os << mag.get_str();
    else if (mag == 1)
      os << gens;
    else
      os << mag.get_str() << "*" << gens;
  }
  return os.str();
}

std::string CoeffElement::to_latex() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    const std::string gens = format_gens(theory_, g, true);
    Rational mag = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    if (gens.empty())
      s += format_rational_latex(mag);
    else if (mag == 1)
      s += gens;
    else
      s += format_rational_latex(mag) + " " + gens;
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const CoeffElement& c) { return os << c.to_string(); }

CoeffElement projective_class(const TheorySpec& theory, int i) {
  if (i < 0) throw std::out_of_range("projective_class: negative dimension");
  if (i > theory.trunc())
    throw std::out_of_range("projective_class: [P^" + std::to_string(i) + "] lies below the truncation depth " +
                            std::to_string(theory.trunc()));
  if (i == 0) return CoeffElement(theory, Rational(1));
  switch (theory.kind()) {
    case TheoryKind::Additive: return CoeffElement(theory);
    case TheoryKind::Multiplicative: return CoeffElement::generator(theory, 0).pow(i);
    case TheoryKind::UniversalRational: return CoeffElement::generator(theory, i - 1) * Rational(i + 1);
  }
  return CoeffElement(theory);
}

std::vector<CoeffElement> logarithm_coefficients(const TheorySpec& theory) {
  std::vector<CoeffElement> out;
  out.emplace_back(theory, Rational(1));
  for (int i = 1; i <= theory.trunc(); ++i) {
    switch (theory.kind()) {
      case TheoryKind::Additive: out.emplace_back(theory); break;
      case TheoryKind::Multiplicative:
        // -log(1 - beta t)/beta = sum beta^i t^{i+1}/(i+1)
        out.push_back(CoeffElement::generator(theory, 0).pow(i) * Rational(1, i + 1));
        break;
      case TheoryKind::UniversalRational: out.push_back(CoeffElement::generator(theory, i - 1)); break;
    }
  }
  return out;
}

}  // namespace cobord
