#pragma once

// Kempf-Laksov classes kappa_lambda on Gr_d(E).
//
// Three computation paths:
//   closed     phi_1 of t^lambda prod_{i<j} (1 - t_i/t_j) P(t_j, t_i)
//   iterative  the stage push-forward formula applied for i = r, ..., 1
//   tower      residue sums over fixed points of the projective-bundle tower
//              (evaluation mode only)
//
// A_k^{(l)} = S_k(S^vee - (E/F^l)^vee). In evaluation mode the base is a
// point with trivial E and flags, so A_k^{(l)} = S_k(S^vee) and classes live
// in Omega*(Gr(d,n)) (see grassmann.hpp). In expression mode results are
// formal sums of A-symbol monomials.

#include <cobord/coeff.hpp>
#include <cobord/fgl.hpp>
#include <cobord/grassmann.hpp>
#include <cobord/series.hpp>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cobord {

enum class KlMode { Expression, Evaluation };

struct GrassmannContext {
  int d = 1;
  int n = 2;
  KlMode mode = KlMode::Evaluation;
  TheorySpec theory;
  FormalGroupLaw fgl;

  /// N = d(n-d).
  int dimension() const noexcept { return d * (n - d); }
};

/// T defaults to max(1, d(n-d)). Throws std::invalid_argument unless
/// 1 <= d < n.
GrassmannContext make_context(TheoryKind kind, int d, int n, KlMode mode, std::optional<int> trunc = std::nullopt);

struct ClassFactor {
  enum class Kind { Tau, A };
  Kind kind = Kind::A;
  int row = 1;  // i for A_k^{(l)} in row i; j for tau_j
  int k = 0;    // index of A, or the power of tau
  int ell = 0;  // flag corank of A

  friend bool operator==(const ClassFactor&, const ClassFactor&) = default;
  friend auto operator<=>(const ClassFactor& a, const ClassFactor& b) {
    return std::tie(a.row, a.kind, a.k, a.ell) <=> std::tie(b.row, b.kind, b.k, b.ell);
  }
};

struct ClassTerm {
  std::vector<ClassFactor> factors;  // sorted by row, then kind, then k
  CoeffElement coeff;
};

/// A finite sum of coefficient-weighted monomials in A-symbols (and tau
/// classes for stage fragments), with an optional evaluated class.
class ClassExpression {
 public:
  explicit ClassExpression(const TheorySpec& theory) : theory_(theory) {}

  const TheorySpec& theory() const noexcept { return theory_; }
  const std::vector<ClassTerm>& terms() const noexcept { return terms_; }
  std::vector<ClassTerm>& mutable_terms() noexcept { return terms_; }
  /// Sorts factors and terms, merges equal factor lists, drops zeros.
  void canonicalize();
  void add_term(std::vector<ClassFactor> factors, const CoeffElement& c);

  const std::optional<SchurClass>& evaluated() const noexcept { return evaluated_; }
  void set_evaluated(SchurClass c) { evaluated_ = std::move(c); }

  /// Equality of the canonical term lists (the evaluated class is ignored).
  bool same_terms(const ClassExpression& o) const;
  friend bool operator==(const ClassExpression& a, const ClassExpression& b);

  bool has_integer_coefficients() const;
  std::optional<int> homogeneous_degree() const;

  std::string to_string() const;
  std::string to_latex() const;

 private:
  TheorySpec theory_;
  std::vector<ClassTerm> terms_;
  std::optional<SchurClass> evaluated_;
};

/// ell_i = lambda_i - i + d (rows are 1-based).
int flag_corank(const Partition& lambda, int i, int d);

/// The alphabet {t1..tr}.
AlphabetPtr kl_alphabet(int r);
std::vector<std::string> kl_variables(int r);

/// t^lambda prod_{i<j} (1 - t_i/t_j) prod_{i<j} P(t_j, t_i) over kl_alphabet(r);
/// retained terms have total degree <= |lambda| + T. Throws
/// VerificationError if the result is not cone-supported.
GradedSeries theoremB_argument(const FormalGroupLaw& fgl, const Partition& lambda);

/// phi_i: t_j^s -> tau_j^s for j < i, t_j^s -> A_s^{(ell_j)} for j >= i.
/// In evaluation mode A-symbols with s > N are dropped.
/// Throws std::invalid_argument unless the series lies in L^{R,i}.
ClassExpression phi_eval(const GradedSeries& f, const Partition& lambda, const GrassmannContext& ctx, int i = 1);

/// A_k(y) = S_k(S^vee) over ring.alphabet() (trivial E and flags).
GradedSeries a_symbol_value(const FormalGroupLaw& fgl, const GrassmannRing& ring, int k);

/// Evaluates an A-symbol expression in Omega*(Gr(d,n)).
SchurClass evaluate_expression(const ClassExpression& e, const GrassmannContext& ctx);

/// kappa_lambda from the closed formula.
ClassExpression kl_closed(const Partition& lambda, const GrassmannContext& ctx);

struct StagePushforward {
  GradedSeries sum_form;      // sum_{q,j} (-1)^q e_q w_{-j} t_i^{lambda_i+s-q+j}
  GradedSeries product_form;  // t_i^{lambda_i+s} prod_{l<i} (1 - t_l/t_i) P(t_i, t_l)
  ClassExpression fragment;   // phi_i of the common value
};

/// The i-th stage push-forward of tau_i^s alpha_i in both forms. Throws
/// VerificationError when they differ.
StagePushforward kl_stage_pushforward(int i, int s, const Partition& lambda, const GrassmannContext& ctx);

/// kappa_lambda by applying the stage formula for i = r, ..., 1, checking
/// membership in L^{R,i} after each stage.
ClassExpression kl_iterative(const Partition& lambda, const GrassmannContext& ctx);

/// kappa_lambda by fixed-point residues on the tower over a point, with
/// generic roots for E that are set to zero at the end. Evaluation mode
/// only; the expression has no A-terms, only the evaluated class.
ClassExpression kl_tower_oracle(const Partition& lambda, const GrassmannContext& ctx);

/// det(A^{(ell_i)}_{lambda_i+j-i}) expanded by permutations.
ClassExpression kl_determinant_expression(const Partition& lambda, const GrassmannContext& ctx);

struct SchurSpecialization {
  SchurClass value;           // additive expansion with A_k = h_k(y)
  SchurClass jacobi_trudi;    // det(h_{lambda_i+j-i}(y)) reduced
  GradedSeries in_chern_q;    // the value as a polynomial in c_i(Q)
};

/// Additive theory, evaluation mode. Throws VerificationError when the
/// expansion differs from the Jacobi-Trudi determinant.
SchurSpecialization kl_schur_specialization(const ClassExpression& expr, const Partition& lambda,
                                            const GrassmannContext& ctx);

/// Expression-mode kl_closed for (d,n) and (d,n2) agree literally.
bool kl_stability_check(const Partition& lambda, int d, int n, int n2, TheoryKind kind, int trunc);

}  // namespace cobord
