#pragma once

// Chern polynomials, the w / w~ classes, Segre and relative Segre series,
// and residue push-forward oracles.
//
// Bundles are presented by Chern-root variables of degree 1. The Segre
// variable u has degree -1, so c(E;u), w(E;u) and S(E;u) are homogeneous of
// degree 0; v = u^{-1} is a negative exponent of u.

#include <cobord/coeff.hpp>
#include <cobord/fgl.hpp>
#include <cobord/series.hpp>

#include <string>
#include <vector>

namespace cobord {

/// A formal difference E - F of bundles given by root alphabets.
struct VirtualBundle {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::string label = "E";

  int rank() const noexcept { return static_cast<int>(positive.size()) - static_cast<int>(negative.size()); }
  bool is_honest() const noexcept { return negative.empty(); }
};

VirtualBundle honest_bundle(std::vector<std::string> roots, std::string label = "E");
/// Throws std::invalid_argument when the two alphabets overlap.
VirtualBundle virtual_bundle(std::vector<std::string> positive, std::vector<std::string> negative,
                             std::string label = "E-F");

/// Root names prefix1..prefixN.
std::vector<std::string> root_names(const std::string& prefix, int n);
/// Alphabet with the given roots (degree 1) followed by u (degree -1).
AlphabetPtr segre_alphabet(const std::vector<std::string>& roots, const std::string& u = "u");

/// c(E; sign*u) = prod (1 + sign*x u) / prod (1 + sign*y u). A nonempty
/// negative part needs a finite cap on u.
GradedSeries chern_poly(const TheorySpec& theory, const AlphabetPtr& alph, const VirtualBundle& bundle,
                        const std::string& u, int sign = 1, int cap = kNoCap);

/// w_{-s}(x) for s = 0..T: z^s coefficients of prod_q P(z, x_q). The alphabet
/// must contain z.
std::vector<GradedSeries> w_components(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                                       const std::vector<std::string>& roots, const std::string& z);
/// w(x;u) = sum_s w_{-s}(x) u^{-s} = prod_q P(u^{-1}, x_q).
GradedSeries w_series(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& roots,
                      const std::string& u);
/// w~(x;u) = 1 / w(x;u).
GradedSeries w_tilde_series(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                            const std::vector<std::string>& roots, const std::string& u);
/// w(E-F;u) = w(E;u)/w(F;u) and w~(E-F;u) = w~(E;u)/w~(F;u).
GradedSeries w_virtual(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const VirtualBundle& b,
                       const std::string& u);
GradedSeries w_tilde_virtual(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const VirtualBundle& b,
                             const std::string& u);

/// A Segre-type series in u, exact for lo <= m <= hi.
struct SegreSeries {
  GradedSeries series;
  std::string var;
  int lo = 0;
  int hi = 0;

  /// The degree-m class (a series in the roots). Throws std::out_of_range
  /// outside [lo, hi].
  GradedSeries coefficient(int m) const;
};

/// S(E;u) = P(u) w~(E;u) / c(E;-u), exact for -T <= m <= hi.
SegreSeries segre_closed(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& roots,
                         const std::string& u, int hi);

/// sum_k g_k / prod_{q != k} (v_k - v_q) for polynomials g_k, computed as
/// [sum_k (-1)^k g_k V_k] / V with V the Vandermonde product, by exact
/// divisions. Throws VerificationError if a division leaves a remainder.
GradedSeries residue_sum(const std::vector<GradedSeries>& numerators, const std::vector<std::string>& vars);

/// sum_k H(v_k) / prod_{q != k} (v_k - v_q) for a single series H(t; v)
/// symmetric in the v, using sum_k v_k^j / prod_{q != k}(v_k - v_q) =
/// h_{j-n+1}(v). Throws std::invalid_argument if H is not symmetric in v.
GradedSeries residue_sum_symmetric(const GradedSeries& H, const std::string& t, const std::vector<std::string>& vars);

/// The generic factorization F(a, chi(b)) = (a - b) U(a, b) computed from F
/// alone; returns U and 1/U over the law alphabet in (z, x).
struct DifferenceUnit {
  GradedSeries unit;
  GradedSeries unit_inverse;
};
DifferenceUnit difference_unit(const FormalGroupLaw& fgl);

/// Degree-m Segre class by the residue formula
///   sum_k x_k^{m+e+n-1} / prod_{q != k} F(x_k, chi(x_q))
/// over the e roots plus `padding` generic roots that are set to zero at the
/// end. Requires m + e + padding - 1 >= 0. Result over `alph`.
GradedSeries segre_residue_oracle(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                                  const std::vector<std::string>& roots, int m, int padding);
/// Smallest admissible padding, max(0, -m-e+1).
int minimal_padding(int m, int rank);

/// R(E;u) = S(E;u) c(E;-u). Asserts R_m = 0 for 0 < m <= hi and
/// R_{-l} = sum_s w~_{-s} [P^{l-s}] for 0 <= l <= T; throws
/// VerificationError otherwise.
SegreSeries r_series(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& roots,
                     const std::string& u, int hi);

/// S(E-F;u) = S(E;u) c(F;-u) w(F;u), exact for -T <= m <= hi.
SegreSeries relative_segre(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& E,
                           const std::vector<std::string>& F, const std::string& u, int hi);

/// Push-forward along P*(E) of tau^s c_f(Q (x) F^vee) = tau^s prod_q F(tau, chi(y_q)),
/// by the residue formula over the roots of E. Compares with the relative
/// Segre class S_{f-e+1+s}(E-F) and throws VerificationError on mismatch.
GradedSeries pushforward_cf_twist(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                                  const std::vector<std::string>& E, const std::vector<std::string>& F, int s);

/// Root-symmetric series rewritten in the Chern classes c1..ce of a bundle
/// (names "c1(label)", ...).
GradedSeries to_chern_classes(const GradedSeries& f, const std::vector<std::string>& roots, const std::string& label);

}  // namespace cobord
