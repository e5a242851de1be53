#pragma once

// Truncated multivariate Laurent series with coefficients in a CoeffElement
// ring.
//
// Truncation is governed by two mechanisms:
//   * coefficient depth: a term whose coefficient monomial has depth > T is
//     dropped (this is the global ideal of the theory);
//   * optional per-variable caps: exponents above the cap are unknown and
//     dropped. Caps are needed only for series that are infinite already at
//     depth 0, such as 1/c(E;-u).
// Products keep the exactness guarantee by lowering caps:
//   cap(fg) = min(cap(f) + lo(g), cap(g) + lo(f)),
// where lo is the smallest exponent of the variable present.

#include <cobord/coeff.hpp>
#include <cobord/monomial.hpp>
#include <cobord/rational.hpp>

#include <array>
#include <climits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cobord {

/// Raised when an internal consistency check fails (a mathematical identity
/// that should hold does not).
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Variable {
  std::string name;
  int degree = 1;
};

class Alphabet {
 public:
  explicit Alphabet(std::vector<Variable> vars);

  static std::shared_ptr<const Alphabet> make(std::vector<Variable> vars);
  /// All variables of degree +1.
  static std::shared_ptr<const Alphabet> of(const std::vector<std::string>& names);

  std::size_t size() const noexcept { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_.at(i); }
  const std::vector<Variable>& variables() const noexcept { return vars_; }

  /// Throws std::invalid_argument if absent.
  int index_of(const std::string& name) const;
  std::optional<int> find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name).has_value(); }

  int degree(const Monomial& m) const noexcept {
    int d = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) d += vars_[i].degree * m[i];
    return d;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  std::vector<Variable> vars_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Extends an alphabet with extra variables (names must be new).
AlphabetPtr extend_alphabet(const AlphabetPtr& base, const std::vector<Variable>& extra);

struct SeriesTerm {
  Monomial mono;
  GenMonomial gen;
  Rational coeff;

  friend bool operator==(const SeriesTerm& a, const SeriesTerm& b) {
    return a.mono == b.mono && a.gen == b.gen && a.coeff == b.coeff;
  }
};

inline constexpr int kNoCap = INT_MAX;
using CapArray = std::array<int, kMaxVariables>;

inline CapArray no_caps() {
  CapArray c;
  c.fill(kNoCap);
  return c;
}

class GradedSeries {
 public:
  GradedSeries(const TheorySpec& theory, AlphabetPtr alphabet);

  static GradedSeries constant(const TheorySpec& theory, AlphabetPtr alphabet, const CoeffElement& c);
  static GradedSeries constant(const TheorySpec& theory, AlphabetPtr alphabet, const Rational& c);
  static GradedSeries variable(const TheorySpec& theory, AlphabetPtr alphabet, const std::string& name);
  static GradedSeries variable(const TheorySpec& theory, AlphabetPtr alphabet, int index);
  static GradedSeries monomial(const TheorySpec& theory, AlphabetPtr alphabet, const Monomial& m,
                               const CoeffElement& c);
  /// Terms may be unsorted and contain duplicates.
  static GradedSeries from_terms(const TheorySpec& theory, AlphabetPtr alphabet, std::vector<SeriesTerm> terms,
                                 const CapArray& caps = no_caps());

  const TheorySpec& theory() const noexcept { return theory_; }
  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::vector<SeriesTerm>& terms() const noexcept { return terms_; }
  const CapArray& caps() const noexcept { return caps_; }
  int cap(int var) const { return caps_.at(var); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Declares exponents of `var` above `cap` unknown and drops them.
  GradedSeries with_cap(int var, int cap) const;
  GradedSeries with_cap(const std::string& var, int cap) const { return with_cap(alphabet_->index_of(var), cap); }
  GradedSeries without_caps() const;

  /// Common value of (monomial degree + coefficient degree), if any.
  std::optional<int> homogeneous_degree() const;
  CoeffElement coefficient_of(const Monomial& m) const;
  CoeffElement constant_term() const { return coefficient_of(Monomial{}); }
  std::optional<int> min_exponent(int var) const;
  std::optional<int> max_exponent(int var) const;
  /// True when no variable appears with a negative exponent.
  bool is_power_series() const;

  GradedSeries& operator+=(const GradedSeries& o);
  GradedSeries& operator-=(const GradedSeries& o);
  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
  friend GradedSeries operator-(const GradedSeries& a);
  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
  friend GradedSeries operator*(const GradedSeries& a, const CoeffElement& c);
  friend GradedSeries operator*(const GradedSeries& a, const Rational& c);

  GradedSeries pow(int k) const;

  /// Equality of truncated values; caps must also agree.
  friend bool operator==(const GradedSeries& a, const GradedSeries& b);
  /// Equality of terms only (ignores caps).
  bool same_terms(const GradedSeries& o) const;

  std::string to_string() const;
  std::string to_latex() const;

 private:
  void normalize();
  void check_compatible(const GradedSeries& o, const char* op) const;

  TheorySpec theory_;
  AlphabetPtr alphabet_;
  std::vector<SeriesTerm> terms_;
  CapArray caps_;
};

std::ostream& operator<<(std::ostream& os, const GradedSeries& s);

/// Canonical term order: graded by weighted monomial degree, then
/// lexicographic in the alphabet order (higher exponent of an earlier
/// variable first), then by coefficient monomial.
bool canonical_less(const Alphabet& alph, const TheorySpec& theory, const SeriesTerm& a, const SeriesTerm& b);

GradedSeries add(const GradedSeries& a, const GradedSeries& b);
GradedSeries mul(const GradedSeries& a, const GradedSeries& b);
GradedSeries scale(const GradedSeries& a, const CoeffElement& c);

/// Evaluates f at args: every variable i of f's alphabet is replaced by
/// args[i] (all args share one target alphabet). Negative exponents are
/// allowed only where args[i] is a single monomial with coefficient +-1.
GradedSeries evaluate(const GradedSeries& f, const std::vector<GradedSeries>& args);

/// Replaces one variable by a series over the same alphabet.
/// Throws std::domain_error when the variable is capped and the
/// replacement has a nonzero constant term.
GradedSeries substitute(const GradedSeries& f, const std::string& var, const GradedSeries& replacement);
GradedSeries set_zero(const GradedSeries& f, const std::vector<std::string>& vars);

/// Re-expresses f over a larger (or reordered) alphabet, matching by name.
GradedSeries embed(const GradedSeries& f, const AlphabetPtr& target);
/// Renames variables (map old name -> new name) into a target alphabet.
GradedSeries rename(const GradedSeries& f, const std::vector<std::pair<std::string, std::string>>& mapping,
                    const AlphabetPtr& target);

/// Multiplicative inverse. The constant term must be a unit of the
/// coefficient ring. Throws std::domain_error otherwise and when the
/// geometric series fails to terminate under the truncation.
GradedSeries inverse(const GradedSeries& den);
GradedSeries divide_exact(const GradedSeries& num, const GradedSeries& den);

/// Exact quotient by (z - x). Throws VerificationError when the series does
/// not vanish at z = x.
GradedSeries divide_by_difference(const GradedSeries& f, const std::string& z, const std::string& x);

/// Coefficient of var^k, as a series in the remaining variables.
GradedSeries extract_in(const GradedSeries& f, const std::string& var, int k);
CoeffElement coefficient_of(const GradedSeries& f, const Monomial& m);

/// Drops every term whose total degree in `vars` exceeds max_degree.
GradedSeries truncate_degree(const GradedSeries& f, const std::vector<std::string>& vars, int max_degree);

/// Invariance under all adjacent transpositions of `vars`.
bool is_symmetric(const GradedSeries& f, const std::vector<std::string>& vars);

/// Rewrites a series symmetric in `vars` as a polynomial in their
/// elementary symmetric functions, named `names[0..k-1]` (degree j*deg).
/// The result lives over `target`, which must hold the other variables of
/// f and the new names. Throws std::invalid_argument for asymmetric input.
GradedSeries symmetric_reduce(const GradedSeries& f, const std::vector<std::string>& vars,
                              const std::vector<std::string>& names, const AlphabetPtr& target);
/// Convenience form that builds the target alphabet itself.
GradedSeries symmetric_reduce(const GradedSeries& f, const std::vector<std::string>& vars,
                              const std::vector<std::string>& names);

/// Elementary and complete symmetric polynomials in the given variables.
GradedSeries elementary(const TheorySpec& theory, const AlphabetPtr& alph, const std::vector<std::string>& vars,
                        int k);
GradedSeries complete(const TheorySpec& theory, const AlphabetPtr& alph, const std::vector<std::string>& vars,
                      int k);

struct ConeResult {
  bool member = false;
  std::vector<int> shift;  // witness n with n + supp in the cone
};

/// Cone condition s_1 >= 0, s_1+s_2 >= 0, ..., s_1+...+s_r >= 0 after a shift
/// n with sum(n) = 0 (shifts preserving homogeneous degree).
ConeResult cone_check(const GradedSeries& f, const std::vector<std::string>& vars);
/// Membership in L^{R,i}: cone-supported and no negative powers of the
/// first i-1 variables.
bool in_cone_ring(const GradedSeries& f, const std::vector<std::string>& vars, int i);

}  // namespace cobord
