#pragma once

// Formal group laws F(u,v), the formal inverse chi(u) with F(u,chi(u)) = 0,
// and the factorization F(z,chi(x)) = (z - x) P(z,x).

#include <cobord/coeff.hpp>
#include <cobord/series.hpp>

#include <string>
#include <vector>

namespace cobord {

class FormalGroupLaw {
 public:
  /// Variables u, v, w, z, x, all of degree 1. F lives in (u,v), chi in u,
  /// P in (z,x).
  static const AlphabetPtr& law_alphabet();

  FormalGroupLaw(const TheorySpec& theory, GradedSeries F, GradedSeries chi, GradedSeries P);

  const TheorySpec& theory() const noexcept { return theory_; }
  const GradedSeries& F() const noexcept { return F_; }
  const GradedSeries& chi() const noexcept { return chi_; }
  const GradedSeries& P() const noexcept { return P_; }

  /// F(a, b) for series over any common alphabet.
  GradedSeries apply(const GradedSeries& a, const GradedSeries& b) const;
  /// chi(a).
  GradedSeries inverse_of(const GradedSeries& a) const;
  /// P(a, b).
  GradedSeries p_of(const GradedSeries& a, const GradedSeries& b) const;

 private:
  std::vector<GradedSeries> args(const GradedSeries& first, const GradedSeries& second, int slot) const;

  TheorySpec theory_;
  GradedSeries F_, chi_, P_;
};

/// log t = t + sum_i c_i t^{i+1} over the alphabet {t} (coefficients from
/// logarithm_coefficients).
GradedSeries logarithm_series(const TheorySpec& theory);
/// Compositional inverse of logarithm_series, over {t}.
GradedSeries exponential_series(const TheorySpec& theory);

/// The law F(u,v) of the theory over law_alphabet(), before any checks.
GradedSeries law_series(const TheorySpec& theory);

/// chi(u) solving F(u, chi(u)) = 0 by degree-by-degree elimination.
GradedSeries formal_inverse(const GradedSeries& F);
GradedSeries formal_inverse(const FormalGroupLaw& fgl);

/// P(z,x) = F(z, chi(x)) / (z - x).
GradedSeries p_factor(const GradedSeries& F, const GradedSeries& chi);
GradedSeries p_factor(const FormalGroupLaw& fgl);

/// Builds chi and P for an arbitrary F without verifying anything.
FormalGroupLaw fgl_from_series(const TheorySpec& theory, const GradedSeries& F);

/// The law of the theory with chi and P; throws VerificationError when an
/// axiom fails.
FormalGroupLaw build_fgl(const TheorySpec& theory);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  /// Empty on success; otherwise the first nonzero term of the defect.
  std::string first_offending;
  int monomial_degree = 0;     // of the first offending term
  int coefficient_degree = 0;  // of the first offending term
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
  const AxiomCheck& at(const std::string& name) const;
  std::string to_string() const;
};

/// Checks unit, commutativity, associativity, inverse, factorization,
/// P normalization and the involution chi(chi(u)) = u.
AxiomReport verify_axioms(const FormalGroupLaw& fgl);

}  // namespace cobord
