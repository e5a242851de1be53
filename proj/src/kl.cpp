#include <cobord/kl.hpp>

#include <cobord/segre.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cobord {

namespace {

GradedSeries var(const TheorySpec& th, const AlphabetPtr& alph, const std::string& name) {
  return GradedSeries::variable(th, alph, name);
}

GradedSeries one(const TheorySpec& th, const AlphabetPtr& alph) { return GradedSeries::constant(th, alph, Rational(1)); }

GradedSeries t_power(const TheorySpec& th, const AlphabetPtr& alph, int index, int e) {
  Monomial m;
  m.set(index, e);
  return GradedSeries::monomial(th, alph, m, CoeffElement(th, Rational(1)));
}

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

void require_integral(const ClassExpression& e, const char* what) {
  if (e.theory().integral() && !e.has_integer_coefficients())
    throw VerificationError(std::string(what) + ": non-integral coefficient in an integral theory");
}

// sum_{q<i} sum_j (-1)^q e_q(t_<i) w_{-j}(t_<i) t_i^{lambda_i+s-q+j}
GradedSeries stage_sum(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const Partition& lambda, int i, int s) {
  const TheorySpec& th = fgl.theory();
  const auto vars = kl_variables(lambda.length());
  const std::vector<std::string> lower(vars.begin(), vars.begin() + (i - 1));
  const std::vector<GradedSeries> w = w_components(fgl, alph, lower, vars[i - 1]);
  GradedSeries out(th, alph);
  for (int q = 0; q < i; ++q) {
    const GradedSeries eq = elementary(th, alph, lower, q);
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j].is_zero()) continue;
      GradedSeries term = eq * w[j] * t_power(th, alph, i - 1, lambda[i - 1] + s - q + static_cast<int>(j));
      if (q % 2)
        out -= term;
      else
        out += term;
    }
  }
  return out;
}

}  // namespace

GrassmannContext make_context(TheoryKind kind, int d, int n, KlMode mode, std::optional<int> trunc) {
  if (d < 1 || d >= n) throw std::invalid_argument("need 1 <= d < n");
  const TheorySpec th = make_theory(kind, trunc.value_or(std::max(1, d * (n - d))));
  return GrassmannContext{d, n, mode, th, build_fgl(th)};
}

void ClassExpression::add_term(std::vector<ClassFactor> factors, const CoeffElement& c) {
  if (c.is_zero()) return;
  terms_.push_back(ClassTerm{std::move(factors), c});
}

void ClassExpression::canonicalize() {
  for (auto& t : terms_) std::sort(t.factors.begin(), t.factors.end());
  std::sort(terms_.begin(), terms_.end(), [](const ClassTerm& a, const ClassTerm& b) { return a.factors < b.factors; });
  std::vector<ClassTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().factors == t.factors)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const ClassTerm& t) { return t.coeff.is_zero(); }),
               merged.end());
  terms_ = std::move(merged);
}

bool ClassExpression::same_terms(const ClassExpression& o) const {
  if (!(theory_ == o.theory_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].factors != o.terms_[i].factors || !(terms_[i].coeff == o.terms_[i].coeff)) return false;
  return true;
}

bool operator==(const ClassExpression& a, const ClassExpression& b) {
  return a.same_terms(b) && a.evaluated_ == b.evaluated_;
}

bool ClassExpression::has_integer_coefficients() const {
  for (const auto& t : terms_)
    if (!t.coeff.has_integer_coefficients()) return false;
  return !evaluated_ || evaluated_->has_integer_coefficients();
}

std::optional<int> ClassExpression::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& t : terms_) {
    int d = 0;
    for (const auto& f : t.factors) d += f.k;
    for (const auto& [g, c] : t.coeff.terms()) {
      const int total = d - theory_.depth(g);
      if (deg && *deg != total) return std::nullopt;
      deg = total;
    }
  }
  return deg;
}

namespace {

std::string factor_text(const ClassFactor& f) {
  if (f.kind == ClassFactor::Kind::Tau)
    return "tau" + std::to_string(f.row) + (f.k == 1 ? "" : "^" + std::to_string(f.k));
  return "A[" + std::to_string(f.k) + "," + std::to_string(f.ell) + "]";
}

std::string factor_latex(const ClassFactor& f) {
  if (f.kind == ClassFactor::Kind::Tau)
    return "\\tau_{" + std::to_string(f.row) + "}" + (f.k == 1 ? "" : "^{" + std::to_string(f.k) + "}");
  return "\\mathscr{A}_{" + std::to_string(f.k) + "}^{(" + std::to_string(f.ell) + ")}";
}

}  // namespace

std::string ClassExpression::to_string() const {
  std::ostringstream os;
  if (terms_.empty()) os << "0";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << "(" << terms_[i].coeff.to_string() << ")";
    for (const auto& f : terms_[i].factors) os << "*" << factor_text(f);
  }
  return os.str();
}

std::string ClassExpression::to_latex() const {
  std::ostringstream os;
  if (terms_.empty()) os << "0";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << "\\left(" << terms_[i].coeff.to_latex() << "\\right)";
    for (const auto& f : terms_[i].factors) os << " " << factor_latex(f);
  }
  return os.str();
}

int flag_corank(const Partition& lambda, int i, int d) { return lambda[i - 1] - i + d; }

std::vector<std::string> kl_variables(int r) {
  std::vector<std::string> v;
  for (int i = 1; i <= r; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

AlphabetPtr kl_alphabet(int r) { return Alphabet::of(kl_variables(r)); }

GradedSeries theoremB_argument(const FormalGroupLaw& fgl, const Partition& lambda) {
  const TheorySpec& th = fgl.theory();
  const int r = lambda.length();
  const AlphabetPtr alph = kl_alphabet(r);
  Monomial m;
  for (int i = 0; i < r; ++i) m.set(i, lambda.parts[i]);
  GradedSeries f = GradedSeries::monomial(th, alph, m, CoeffElement(th, Rational(1)));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Monomial ratio;
      ratio.set(i, 1);
      ratio.set(j, -1);
      f = f * (one(th, alph) - GradedSeries::monomial(th, alph, ratio, CoeffElement(th, Rational(1))));
      f = f * fgl.p_of(var(th, alph, "t" + std::to_string(j + 1)), var(th, alph, "t" + std::to_string(i + 1)));
    }
  if (!cone_check(f, kl_variables(r)).member)
    throw VerificationError("theoremB_argument: support leaves the cone for " + lambda.to_string());
  return f;
}

ClassExpression phi_eval(const GradedSeries& f, const Partition& lambda, const GrassmannContext& ctx, int i) {
  const int r = lambda.length();
  const auto vars = kl_variables(r);
  if (static_cast<int>(f.alphabet()->size()) != r) throw std::invalid_argument("phi_eval: series is not over t1..tr");
  if (!in_cone_ring(f, vars, i)) throw std::invalid_argument("phi_eval: series is not in L^{R," + std::to_string(i) + "}");
  const int N = ctx.dimension();
  ClassExpression out(ctx.theory);
  for (const auto& t : f.terms()) {
    std::vector<ClassFactor> factors;
    bool vanishes = false;
    for (int j = 1; j <= r; ++j) {
      const int s = t.mono[j - 1];
      if (j < i) {
        if (s != 0) factors.push_back({ClassFactor::Kind::Tau, j, s, 0});
      } else {
        if (ctx.mode == KlMode::Evaluation && s > N) vanishes = true;
        factors.push_back({ClassFactor::Kind::A, j, s, flag_corank(lambda, j, ctx.d)});
      }
    }
    if (!vanishes) out.add_term(std::move(factors), CoeffElement(ctx.theory, t.gen, t.coeff));
  }
  out.canonicalize();
  if (ctx.mode == KlMode::Evaluation && i == 1) out.set_evaluated(evaluate_expression(out, ctx));
  return out;
}

namespace {

// S(S^vee; u) over {y1..yd, u}, exact for -T <= m <= hi.
struct SegreTable {
  SegreTable(const FormalGroupLaw& fgl, const GrassmannRing& ring, int hi) : ring(ring) {
    std::vector<Variable> v;
    for (const auto& y : ring.roots()) v.push_back({y, 1});
    v.push_back({"u", -1});
    alph = Alphabet::make(std::move(v));
    segre.emplace(segre_closed(fgl, alph, ring.roots(), "u", hi));
  }

  GradedSeries at(int k) const {
    if (k < segre->lo) return GradedSeries(ring.theory(), ring.alphabet());
    std::vector<std::pair<std::string, std::string>> id;
    for (const auto& y : ring.roots()) id.emplace_back(y, y);
    return rename(segre->coefficient(k), id, ring.alphabet());
  }

  const GrassmannRing& ring;
  AlphabetPtr alph;
  std::optional<SegreSeries> segre;
};

}  // namespace

GradedSeries a_symbol_value(const FormalGroupLaw& fgl, const GrassmannRing& ring, int k) {
  return SegreTable(fgl, ring, std::max(k, ring.dimension())).at(k);
}

SchurClass evaluate_expression(const ClassExpression& e, const GrassmannContext& ctx) {
  const GrassmannRing ring(ctx.theory, ctx.d, ctx.n);
  const int N = ring.dimension();
  int hi = N;
  for (const auto& t : e.terms())
    for (const auto& f : t.factors) {
      if (f.kind == ClassFactor::Kind::Tau) throw std::invalid_argument("evaluate_expression: tau factors present");
      hi = std::max(hi, f.k);
    }
  const SegreTable table(ctx.fgl, ring, hi);
  std::map<int, GradedSeries> cache;
  auto value = [&](int k) -> const GradedSeries& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, table.at(k)).first;
    return it->second;
  };
  GradedSeries total(ctx.theory, ring.alphabet());
  for (const auto& t : e.terms()) {
    GradedSeries prod = GradedSeries::constant(ctx.theory, ring.alphabet(), t.coeff);
    for (const auto& f : t.factors) {
      if (prod.is_zero()) break;
      prod = truncate_degree(prod * value(f.k), ring.roots(), N);
    }
    total += prod;
  }
  return ring.reduce(total);
}

ClassExpression kl_closed(const Partition& lambda, const GrassmannContext& ctx) {
  ClassExpression e = phi_eval(theoremB_argument(ctx.fgl, lambda), lambda, ctx);
  const auto deg = e.homogeneous_degree();
  if (deg && *deg != lambda.size()) throw VerificationError("kl_closed: result is not of degree |lambda|");
  require_integral(e, "kl_closed");
  return e;
}

StagePushforward kl_stage_pushforward(int i, int s, const Partition& lambda, const GrassmannContext& ctx) {
  const int r = lambda.length();
  if (i < 1 || i > r) throw std::invalid_argument("kl_stage_pushforward: need 1 <= i <= r");
  if (s < 0) throw std::invalid_argument("kl_stage_pushforward: need s >= 0");
  const TheorySpec& th = ctx.theory;
  const AlphabetPtr alph = kl_alphabet(r);
  GradedSeries sum = stage_sum(ctx.fgl, alph, lambda, i, s);
  GradedSeries prod = t_power(th, alph, i - 1, lambda[i - 1] + s);
  const GradedSeries ti = var(th, alph, "t" + std::to_string(i));
  for (int l = 1; l < i; ++l) {
    Monomial ratio;
    ratio.set(l - 1, 1);
    ratio.set(i - 1, -1);
    prod = prod * (one(th, alph) - GradedSeries::monomial(th, alph, ratio, CoeffElement(th, Rational(1))));
    prod = prod * ctx.fgl.p_of(ti, var(th, alph, "t" + std::to_string(l)));
  }
  if (!sum.same_terms(prod))
    throw VerificationError("stage " + std::to_string(i) + ", s = " + std::to_string(s) +
                            ": sum form and product form differ");
  ClassExpression fragment = phi_eval(sum, lambda, ctx, i);
  return StagePushforward{std::move(sum), std::move(prod), std::move(fragment)};
}

ClassExpression kl_iterative(const Partition& lambda, const GrassmannContext& ctx) {
  const int r = lambda.length();
  const auto vars = kl_variables(r);
  const AlphabetPtr alph = kl_alphabet(r);
  GradedSeries f = one(ctx.theory, alph);
  for (int i = r; i >= 1; --i) {
    const int ti = i - 1;
    const auto lo = f.min_exponent(ti);
    if (lo && *lo < 0) throw VerificationError("kl_iterative: negative power of t" + std::to_string(i));
    GradedSeries next(ctx.theory, alph);
    const int top = f.max_exponent(ti).value_or(0);
    for (int s = 0; s <= top; ++s) {
      const GradedSeries part = extract_in(f, vars[ti], s);
      if (!part.is_zero()) next += part * stage_sum(ctx.fgl, alph, lambda, i, s);
    }
    f = std::move(next);
    if (!in_cone_ring(f, vars, i))
      throw VerificationError("kl_iterative: stage " + std::to_string(i) + " left L^{R," + std::to_string(i) + "}");
  }
  ClassExpression e = phi_eval(f, lambda, ctx);
  require_integral(e, "kl_iterative");
  return e;
}

ClassExpression kl_tower_oracle(const Partition& lambda, const GrassmannContext& ctx) {
  if (ctx.mode != KlMode::Evaluation) throw std::invalid_argument("kl_tower_oracle: evaluation mode only");
  const TheorySpec& th = ctx.theory;
  const FormalGroupLaw& fgl = ctx.fgl;
  const int d = ctx.d, n = ctx.n, r = lambda.length(), N = ctx.dimension();
  const GrassmannRing ring(th, d, n);

  const auto eps = root_names("eps", n);
  const auto eta = root_names("eta", n - d);
  std::vector<std::string> names = eps;
  names.insert(names.end(), eta.begin(), eta.end());
  const AlphabetPtr alph = Alphabet::of(names);

  // F(chi(z), x) = (z - x) V(z, x).
  const AlphabetPtr& law = FormalGroupLaw::law_alphabet();
  const GradedSeries V =
      divide_by_difference(fgl.apply(fgl.inverse_of(var(th, law, "z")), var(th, law, "x")), "z", "x");
  const GradedSeries V_inv = inverse(V);
  const GradedSeries zero(th, alph);
  auto v_inv_at = [&](int a, int b) { return evaluate(V_inv, {zero, zero, zero, var(th, alph, eps[a]), var(th, alph, eps[b])}); };

  // alpha at tau = chi(eps_k): c_{n-d}(O(1) (x) E/S) = prod_j F(tau, eta_j).
  std::vector<GradedSeries> alpha;
  for (int k = 0; k < n; ++k) {
    const GradedSeries tau = fgl.inverse_of(var(th, alph, eps[k]));
    GradedSeries a = one(th, alph);
    for (const auto& e : eta) a = truncate_degree(a * fgl.apply(tau, var(th, alph, e)), eta, N);
    alpha.push_back(std::move(a));
  }

  // Each stage lowers the eps-degree by (fibre rank - 1); anything that
  // cannot reach eps-degree 0 is dropped.
  std::vector<int> budget(r + 1, 0);
  for (int i = 1; i <= r; ++i) budget[i] = budget[i - 1] + (n - flag_corank(lambda, i, d)) - i;

  std::function<GradedSeries(int, std::vector<int>&)> stage = [&](int i, std::vector<int>& chosen) -> GradedSeries {
    if (i > r) return one(th, alph);
    const int ell = flag_corank(lambda, i, d);
    std::vector<int> avail;
    for (int k = ell; k < n; ++k)
      if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) avail.push_back(k);
    std::vector<GradedSeries> numerators;
    std::vector<std::string> vars;
    for (int k : avail) {
      chosen.push_back(k);
      GradedSeries g = stage(i + 1, chosen);
      chosen.pop_back();
      g = truncate_degree(truncate_degree(g * alpha[k], eps, budget[i]), eta, N);
      for (int q : avail)
        if (q != k) g = truncate_degree(g * v_inv_at(k, q), eps, budget[i]);
      numerators.push_back(std::move(g));
      vars.push_back(eps[k]);
    }
    return truncate_degree(residue_sum(numerators, vars), eps, budget[i - 1]);
  };
  std::vector<int> chosen;
  const GradedSeries top = set_zero(stage(1, chosen), eps);

  // c_k(Q) = (-1)^k h_k(chi(y)) since c(Q) c(S) = 1 and S has roots chi(y).
  std::vector<std::string> cq;
  for (int k = 1; k <= n - d; ++k) cq.push_back("c" + std::to_string(k) + "(Q)");
  const GradedSeries reduced = symmetric_reduce(top, eta, cq);
  const auto s_names = root_names("s", d);
  const AlphabetPtr s_alph = Alphabet::of(s_names);
  std::vector<GradedSeries> chi_y;
  for (const auto& y : ring.roots()) chi_y.push_back(fgl.inverse_of(var(th, ring.alphabet(), y)));
  std::vector<GradedSeries> args;
  for (const auto& v : reduced.alphabet()->variables()) {
    const auto it = std::find(cq.begin(), cq.end(), v.name);
    if (it == cq.end()) {
      args.emplace_back(th, ring.alphabet());
      continue;
    }
    const int k = static_cast<int>(it - cq.begin()) + 1;
    GradedSeries h = truncate_degree(evaluate(complete(th, s_alph, s_names, k), chi_y), ring.roots(), N);
    args.push_back(k % 2 ? -h : h);
  }
  ClassExpression out(th);
  out.set_evaluated(ring.reduce(truncate_degree(evaluate(reduced, args), ring.roots(), N)));
  require_integral(out, "kl_tower_oracle");
  return out;
}

ClassExpression kl_determinant_expression(const Partition& lambda, const GrassmannContext& ctx) {
  const int r = lambda.length();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  ClassExpression out(ctx.theory);
  do {
    std::vector<ClassFactor> factors;
    for (int i = 0; i < r; ++i)
      factors.push_back({ClassFactor::Kind::A, i + 1, lambda.parts[i] + perm[i] - i, flag_corank(lambda, i + 1, ctx.d)});
    out.add_term(std::move(factors), CoeffElement(ctx.theory, Rational(permutation_sign(perm))));
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.canonicalize();
  return out;
}

SchurSpecialization kl_schur_specialization(const ClassExpression& expr, const Partition& lambda,
                                            const GrassmannContext& ctx) {
  if (ctx.theory.kind() != TheoryKind::Additive || ctx.mode != KlMode::Evaluation)
    throw std::invalid_argument("kl_schur_specialization: additive theory in evaluation mode only");
  const TheorySpec& th = ctx.theory;
  const GrassmannRing ring(th, ctx.d, ctx.n);
  const int N = ring.dimension();

  GradedSeries total(th, ring.alphabet());
  for (const auto& t : expr.terms()) {
    GradedSeries prod = GradedSeries::constant(th, ring.alphabet(), t.coeff);
    for (const auto& f : t.factors) {
      if (f.kind != ClassFactor::Kind::A) throw std::invalid_argument("kl_schur_specialization: tau factor");
      prod = truncate_degree(prod * ring.complete(f.k), ring.roots(), N);
    }
    total += prod;
  }
  const SchurClass value = ring.reduce(total);

  const int r = lambda.length();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  GradedSeries det(th, ring.alphabet());
  do {
    GradedSeries prod = GradedSeries::constant(th, ring.alphabet(), Rational(permutation_sign(perm)));
    for (int i = 0; i < r; ++i) prod = prod * ring.complete(lambda.parts[i] + perm[i] - i);
    det += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const SchurClass jacobi_trudi = ring.reduce(det);
  if (!(value == jacobi_trudi))
    throw VerificationError("Schur specialization of " + lambda.to_string() + " differs from Jacobi-Trudi: " +
                            value.to_string() + " vs " + jacobi_trudi.to_string());

  // s_mu(y) = det(h_{mu_i+j-i}(y)) = det(c_{mu_i+j-i}(Q)).
  std::vector<Variable> cv;
  for (int k = 1; k <= ctx.n - ctx.d; ++k) cv.push_back({"c" + std::to_string(k) + "(Q)", k});
  const AlphabetPtr calph = Alphabet::make(std::move(cv));
  auto cq = [&](int k) {
    if (k == 0) return one(th, calph);
    if (k < 0 || k > ctx.n - ctx.d) return GradedSeries(th, calph);
    return var(th, calph, "c" + std::to_string(k) + "(Q)");
  };
  GradedSeries in_chern_q(th, calph);
  for (const auto& [mu, a] : value.coeffs) {
    const int m = mu.length();
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
      GradedSeries prod = GradedSeries::constant(th, calph, Rational(permutation_sign(p)));
      for (int i = 0; i < m; ++i) prod = prod * cq(mu.parts[i] + p[i] - i);
      in_chern_q += prod * a;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return SchurSpecialization{value, jacobi_trudi, std::move(in_chern_q)};
}

bool kl_stability_check(const Partition& lambda, int d, int n, int n2, TheoryKind kind, int trunc) {
  if (n2 <= n) throw std::invalid_argument("kl_stability_check: need n2 > n");
  const GrassmannContext a = make_context(kind, d, n, KlMode::Expression, trunc);
  const GrassmannContext b = make_context(kind, d, n2, KlMode::Expression, trunc);
  const Partition la = validate_partition(lambda.parts, d, n);
  return kl_closed(la, a).same_terms(kl_closed(la, b));
}

}  // namespace cobord
