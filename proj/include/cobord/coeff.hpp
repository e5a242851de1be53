#pragma once

// Graded coefficient rings of the supported oriented cohomology theories.
//
//   Additive          Z in degree 0 (Chow ring), F(u,v) = u + v
//   Multiplicative    Z[beta], deg beta = -1 (connective K), F = u + v - beta*u*v
//   UniversalRational Q[m_1..m_T], deg m_i = -i, F = exp(log u + log v)
//                     with log t = t + m_1 t^2 + m_2 t^3 + ...
//
// Coefficients are truncated at depth T: a monomial of degree -j is dropped
// when j > T. The dropped monomials form an ideal, so arithmetic is exact in
// the quotient ring.

#include <cobord/monomial.hpp>
#include <cobord/rational.hpp>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cobord {

enum class TheoryKind { Additive, Multiplicative, UniversalRational };

/// Parses "add"/"additive"/"chow", "ck"/"mult"/"multiplicative", "univ"/"universal".
TheoryKind parse_theory_kind(std::string_view name);
std::string_view theory_short_name(TheoryKind kind);

class TheorySpec {
 public:
  TheorySpec() = default;

  TheoryKind kind() const noexcept { return kind_; }
  int trunc() const noexcept { return trunc_; }

  int generator_count() const noexcept {
    return kind_ == TheoryKind::Additive ? 0 : kind_ == TheoryKind::Multiplicative ? 1 : trunc_;
  }
  /// Depth contributed by one power of generator g (deg = -weight).
  int generator_weight(int g) const noexcept { return kind_ == TheoryKind::Multiplicative ? 1 : g + 1; }
  std::string generator_name(int g) const;
  std::string generator_latex(int g) const;

  int depth(const GenMonomial& g) const noexcept {
    int d = 0;
    for (int i = 0; i < generator_count(); ++i) d += generator_weight(i) * g[i];
    return d;
  }

  /// True when every output must have integer coefficients.
  bool integral() const noexcept { return kind_ != TheoryKind::UniversalRational; }

  friend bool operator==(const TheorySpec&, const TheorySpec&) = default;

 private:
  friend TheorySpec make_theory(TheoryKind kind, int trunc);
  TheorySpec(TheoryKind kind, int trunc) : kind_(kind), trunc_(trunc) {}

  TheoryKind kind_ = TheoryKind::Additive;
  int trunc_ = 1;
};

/// Throws std::invalid_argument for T < 1 or T > kMaxGenerators.
TheorySpec make_theory(TheoryKind kind, int trunc);

std::ostream& operator<<(std::ostream& os, const TheorySpec& t);

/// Orders generator monomials by depth, then lexicographically.
struct GenOrder {
  const TheorySpec* theory;
  bool operator()(const GenMonomial& a, const GenMonomial& b) const {
    const int da = theory->depth(a), db = theory->depth(b);
    if (da != db) return da < db;
    return a > b;
  }
};

/// An element of the truncated coefficient ring: a finite sum of
/// rational multiples of generator monomials.
class CoeffElement {
 public:
  using Term = std::pair<GenMonomial, Rational>;

  explicit CoeffElement(const TheorySpec& theory) : theory_(theory) {}
  CoeffElement(const TheorySpec& theory, const Rational& scalar);
  CoeffElement(const TheorySpec& theory, const GenMonomial& g, const Rational& c);

  /// The generator g (beta or m_{g+1}) itself.
  static CoeffElement generator(const TheorySpec& theory, int g);

  const TheorySpec& theory() const noexcept { return theory_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Rational coefficient of a single generator monomial (0 if absent).
  Rational at(const GenMonomial& g) const;
  /// The depth-0 part, i.e. the coefficient of the empty monomial.
  Rational scalar_part() const { return at(GenMonomial{}); }

  /// Minimal depth of a stored monomial; 0 for the zero element.
  int min_depth() const noexcept;
  /// Common degree (= -depth) if all monomials share it.
  std::optional<int> homogeneous_degree() const;
  bool has_integer_coefficients() const;

  CoeffElement& operator+=(const CoeffElement& o);
  CoeffElement& operator-=(const CoeffElement& o);
  CoeffElement& operator*=(const Rational& q);
  friend CoeffElement operator+(CoeffElement a, const CoeffElement& b) { return a += b; }
  friend CoeffElement operator-(CoeffElement a, const CoeffElement& b) { return a -= b; }
  friend CoeffElement operator-(CoeffElement a) { return a *= Rational(-1); }
  friend CoeffElement operator*(const CoeffElement& a, const CoeffElement& b);
  friend CoeffElement operator*(CoeffElement a, const Rational& q) { return a *= q; }
  friend bool operator==(const CoeffElement& a, const CoeffElement& b);

  CoeffElement pow(int k) const;

  std::string to_string() const;
  std::string to_latex() const;

 private:
  friend class CoeffBuilder;
  void normalize();

  TheorySpec theory_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const CoeffElement& c);

/// [P^i], the class of projective i-space, of degree -i.
/// Additive: 1 for i = 0 and 0 otherwise. Multiplicative: beta^i.
/// UniversalRational: (i+1) m_i (Mishchenko's logarithm).
/// Throws std::out_of_range when i is negative or exceeds T.
CoeffElement projective_class(const TheorySpec& theory, int i);

/// Coefficients of log t = t + sum_i m_i t^{i+1} for the theory's law
/// (index i holds the coefficient of t^{i+1}; index 0 is 1).
std::vector<CoeffElement> logarithm_coefficients(const TheorySpec& theory);

}  // namespace cobord
