#include <cobord/coeff_series.hpp>
#include <cobord/segre.hpp>

#include <algorithm>
#include <set>

namespace cobord {

VirtualBundle honest_bundle(std::vector<std::string> roots, std::string label) {
  return virtual_bundle(std::move(roots), {}, std::move(label));
}

VirtualBundle virtual_bundle(std::vector<std::string> positive, std::vector<std::string> negative,
                             std::string label) {
  std::set<std::string> seen;
  for (const auto& r : positive)
    if (!seen.insert(r).second) throw std::invalid_argument("repeated root '" + r + "'");
  for (const auto& r : negative)
    if (!seen.insert(r).second) throw std::invalid_argument("root '" + r + "' appears twice");
  return VirtualBundle{std::move(positive), std::move(negative), std::move(label)};
}

std::vector<std::string> root_names(const std::string& prefix, int n) {
  std::vector<std::string> r;
  for (int i = 1; i <= n; ++i) r.push_back(prefix + std::to_string(i));
  return r;
}

AlphabetPtr segre_alphabet(const std::vector<std::string>& roots, const std::string& u) {
  std::vector<Variable> v;
  for (const auto& r : roots) v.push_back({r, 1});
  v.push_back({u, -1});
  return Alphabet::make(std::move(v));
}

namespace {

GradedSeries var(const TheorySpec& th, const AlphabetPtr& alph, const std::string& name) {
  return GradedSeries::variable(th, alph, name);
}

GradedSeries one(const TheorySpec& th, const AlphabetPtr& alph) { return GradedSeries::constant(th, alph, Rational(1)); }

GradedSeries u_power(const TheorySpec& th, const AlphabetPtr& alph, const std::string& u, int e) {
  Monomial m;
  m.set(alph->index_of(u), e);
  return GradedSeries::monomial(th, alph, m, CoeffElement(th, Rational(1)));
}

GradedSeries linear_factors(const TheorySpec& th, const AlphabetPtr& alph, const std::vector<std::string>& roots,
                            const std::string& u, int sign) {
  GradedSeries c = one(th, alph);
  const GradedSeries uu = var(th, alph, u) * Rational(sign);
  for (const auto& r : roots) c = c * (one(th, alph) + var(th, alph, r) * uu);
  return c;
}

}  // namespace

GradedSeries chern_poly(const TheorySpec& theory, const AlphabetPtr& alph, const VirtualBundle& bundle,
                        const std::string& u, int sign, int cap) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("chern_poly: sign must be +-1");
  GradedSeries c = linear_factors(theory, alph, bundle.positive, u, sign);
  const int iu = alph->index_of(u);
  if (cap != kNoCap) c = c.with_cap(iu, cap);
  if (bundle.negative.empty()) return c;
  if (cap == kNoCap) throw std::invalid_argument("chern_poly: a virtual bundle needs a finite cap on " + u);
  const GradedSeries den = linear_factors(theory, alph, bundle.negative, u, sign).with_cap(iu, cap);
  return divide_exact(c, den);
}

std::vector<GradedSeries> w_components(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                                       const std::vector<std::string>& roots, const std::string& z) {
  const TheorySpec& th = fgl.theory();
  GradedSeries prod = one(th, alph);
  const GradedSeries zz = var(th, alph, z);
  for (const auto& r : roots) prod = prod * fgl.p_of(zz, var(th, alph, r));
  std::vector<GradedSeries> out;
  for (int s = 0; s <= th.trunc(); ++s) out.push_back(extract_in(prod, z, s));
  return out;
}

GradedSeries w_series(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& roots,
                      const std::string& u) {
  const TheorySpec& th = fgl.theory();
  const GradedSeries vinv = u_power(th, alph, u, -1);
  GradedSeries w = one(th, alph);
  for (const auto& r : roots) w = w * fgl.p_of(vinv, var(th, alph, r));
  return w;
}

GradedSeries w_tilde_series(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                            const std::vector<std::string>& roots, const std::string& u) {
  return inverse(w_series(fgl, alph, roots, u));
}

GradedSeries w_virtual(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const VirtualBundle& b,
                       const std::string& u) {
  return w_series(fgl, alph, b.positive, u) * w_tilde_series(fgl, alph, b.negative, u);
}

GradedSeries w_tilde_virtual(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const VirtualBundle& b,
                             const std::string& u) {
  return w_tilde_series(fgl, alph, b.positive, u) * w_series(fgl, alph, b.negative, u);
}

GradedSeries SegreSeries::coefficient(int m) const {
  if (m < lo || m > hi)
    throw std::out_of_range("Segre coefficient " + std::to_string(m) + " outside the exact window [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return extract_in(series, var, m);
}

SegreSeries segre_closed(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& roots,
                         const std::string& u, int hi) {
  const TheorySpec& th = fgl.theory();
  const int T = th.trunc();
  const GradedSeries c = chern_poly(th, alph, honest_bundle(roots), u, -1, hi + T);
  GradedSeries s = p_script_series(th, alph, u) * w_tilde_series(fgl, alph, roots, u) * inverse(c);
  s = s.with_cap(alph->index_of(u), hi);
  return SegreSeries{std::move(s), u, -T, hi};
}

GradedSeries residue_sum(const std::vector<GradedSeries>& numerators, const std::vector<std::string>& vars) {
  if (numerators.size() != vars.size()) throw std::invalid_argument("residue_sum: one numerator per variable");
  if (numerators.empty()) throw std::invalid_argument("residue_sum: empty");
  const TheorySpec& th = numerators.front().theory();
  const AlphabetPtr& alph = numerators.front().alphabet();
  const std::size_t n = vars.size();
  std::vector<GradedSeries> v;
  for (const auto& name : vars) v.push_back(var(th, alph, name));
  GradedSeries num(th, alph);
  for (std::size_t k = 0; k < n; ++k) {
    if (numerators[k].is_zero()) continue;
    GradedSeries term = numerators[k];
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (a != k && b != k) term = term * (v[a] - v[b]);
    if (k % 2 == 0)
      num += term;
    else
      num -= term;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) num = divide_by_difference(num, vars[a], vars[b]);
  return num;
}

GradedSeries residue_sum_symmetric(const GradedSeries& H, const std::string& t, const std::vector<std::string>& vars) {
  if (!is_symmetric(H, vars)) throw std::invalid_argument("residue_sum_symmetric: H is not symmetric in the roots");
  const int it = H.alphabet()->index_of(t);
  const auto lo = H.min_exponent(it);
  if (lo && *lo < 0) throw std::domain_error("residue_sum_symmetric: negative power of " + t);
  const int n = static_cast<int>(vars.size());
  GradedSeries out(H.theory(), H.alphabet());
  const int top = H.max_exponent(it).value_or(-1);
  for (int j = n - 1; j <= top; ++j) {
    const GradedSeries a = extract_in(H, t, j);
    if (!a.is_zero()) out += a * complete(H.theory(), H.alphabet(), vars, j - n + 1);
  }
  return out;
}

DifferenceUnit difference_unit(const FormalGroupLaw& fgl) {
  const TheorySpec& th = fgl.theory();
  const AlphabetPtr& law = FormalGroupLaw::law_alphabet();
  const GradedSeries d = fgl.apply(var(th, law, "z"), fgl.inverse_of(var(th, law, "x")));
  GradedSeries unit = divide_by_difference(d, "z", "x");
  GradedSeries inv = inverse(unit);
  return DifferenceUnit{std::move(unit), std::move(inv)};
}

namespace {

// U^{-1}(a, b) over the alphabet of a and b.
GradedSeries unit_inverse_at(const FormalGroupLaw& fgl, const DifferenceUnit& du, const GradedSeries& a,
                             const GradedSeries& b) {
  GradedSeries zero(fgl.theory(), a.alphabet());
  return evaluate(du.unit_inverse, {zero, zero, zero, a, b});
}

// Numerators g_k * prod_{q != k} U(x_k, x_q)^{-1} for the residue formula.
std::vector<GradedSeries> localize(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                                   const std::vector<std::string>& vars, const std::vector<GradedSeries>& g) {
  const DifferenceUnit du = difference_unit(fgl);
  const TheorySpec& th = fgl.theory();
  std::vector<GradedSeries> out;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    GradedSeries term = g[k];
    const GradedSeries xk = var(th, alph, vars[k]);
    for (std::size_t q = 0; q < vars.size() && !term.is_zero(); ++q)
      if (q != k) term = term * unit_inverse_at(fgl, du, xk, var(th, alph, vars[q]));
    out.push_back(std::move(term));
  }
  return out;
}

// H(t) = g(t) U(t,t) prod_q U(t, v_q)^{-1}, so that H(v_k) is the k-th
// localized summand g(v_k) / prod_{q != k} U(v_k, v_q).
GradedSeries localized_kernel(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::string& t,
                              const std::vector<std::string>& vars, const GradedSeries& g) {
  const DifferenceUnit du = difference_unit(fgl);
  const TheorySpec& th = fgl.theory();
  const GradedSeries tt = var(th, alph, t);
  const GradedSeries zero(th, alph);
  GradedSeries H = g * evaluate(du.unit, {zero, zero, zero, tt, tt});
  for (const auto& v : vars) H = H * unit_inverse_at(fgl, du, tt, var(th, alph, v));
  return H;
}

}  // namespace

int minimal_padding(int m, int rank) { return std::max(0, -m - rank + 1); }

GradedSeries segre_residue_oracle(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                                  const std::vector<std::string>& roots, int m, int padding) {
  const int e = static_cast<int>(roots.size());
  if (padding < 0) throw std::invalid_argument("padding must be nonnegative");
  const int N = m + e + padding - 1;
  if (N < 0)
    throw std::invalid_argument("segre_residue_oracle: padding " + std::to_string(padding) + " too small for m = " +
                                std::to_string(m));
  const TheorySpec& th = fgl.theory();
  std::vector<std::string> all = roots;
  std::vector<std::string> pads;
  for (int i = 1; i <= padding; ++i) {
    pads.push_back("pad_" + std::to_string(i));
    all.push_back(pads.back());
  }
  std::vector<std::string> with_t = all;
  with_t.push_back("t_residue");
  const AlphabetPtr local = Alphabet::of(with_t);
  const GradedSeries H = localized_kernel(fgl, local, "t_residue", all, var(th, local, "t_residue").pow(N));
  GradedSeries s = residue_sum_symmetric(H, "t_residue", all);
  if (!pads.empty()) s = set_zero(s, pads);
  std::vector<std::pair<std::string, std::string>> id;
  for (const auto& r : roots) id.emplace_back(r, r);
  return rename(s, id, alph);
}

SegreSeries r_series(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& roots,
                     const std::string& u, int hi) {
  const TheorySpec& th = fgl.theory();
  const SegreSeries S = segre_closed(fgl, alph, roots, u, hi);
  GradedSeries R = S.series * chern_poly(th, alph, honest_bundle(roots), u, -1);
  R = R.with_cap(alph->index_of(u), hi);
  for (int m = 1; m <= hi; ++m) {
    const GradedSeries Rm = extract_in(R, u, m);
    if (!Rm.is_zero()) throw VerificationError("R_" + std::to_string(m) + " = " + Rm.to_string() + " is not zero");
  }
  const GradedSeries wt = w_tilde_series(fgl, alph, roots, u);
  for (int l = 0; l <= th.trunc(); ++l) {
    GradedSeries expected(th, alph);
    for (int s = 0; s <= l; ++s) expected += extract_in(wt, u, -s) * projective_class(th, l - s);
    const GradedSeries got = extract_in(R, u, -l);
    if (!got.same_terms(expected))
      throw VerificationError("R_{-" + std::to_string(l) + "} = " + got.to_string() +
                              " differs from sum_s w~_{-s} [P^{l-s}] = " + expected.to_string());
  }
  return SegreSeries{std::move(R), u, -th.trunc(), hi};
}

SegreSeries relative_segre(const FormalGroupLaw& fgl, const AlphabetPtr& alph, const std::vector<std::string>& E,
                           const std::vector<std::string>& F, const std::string& u, int hi) {
  const TheorySpec& th = fgl.theory();
  const SegreSeries S = segre_closed(fgl, alph, E, u, hi + th.trunc());
  GradedSeries r = S.series * chern_poly(th, alph, honest_bundle(F, "F"), u, -1) * w_series(fgl, alph, F, u);
  r = r.with_cap(alph->index_of(u), hi);
  return SegreSeries{std::move(r), u, -th.trunc(), hi};
}

GradedSeries pushforward_cf_twist(const FormalGroupLaw& fgl, const AlphabetPtr& alph,
                                  const std::vector<std::string>& E, const std::vector<std::string>& F, int s) {
  if (s < 0) throw std::invalid_argument("pushforward_cf_twist: s must be nonnegative");
  if (E.empty()) throw std::invalid_argument("pushforward_cf_twist: E must have positive rank");
  const TheorySpec& th = fgl.theory();
  std::vector<std::string> all = E;
  all.insert(all.end(), F.begin(), F.end());
  std::vector<Variable> lv;
  for (const auto& r : all) lv.push_back({r, 1});
  lv.push_back({"t_twist", 1});
  lv.push_back({"u_twist", -1});
  const AlphabetPtr local = Alphabet::make(std::move(lv));
  std::vector<GradedSeries> g;
  for (const auto& x : E) {
    const GradedSeries xk = var(th, local, x);
    GradedSeries integrand = xk.pow(s);
    for (const auto& y : F) integrand = integrand * fgl.apply(xk, fgl.inverse_of(var(th, local, y)));
    g.push_back(std::move(integrand));
  }
  const GradedSeries lhs = residue_sum(localize(fgl, local, E, g), E);
  const GradedSeries tt = var(th, local, "t_twist");
  GradedSeries integrand = tt.pow(s);
  for (const auto& y : F) integrand = integrand * fgl.apply(tt, fgl.inverse_of(var(th, local, y)));
  const GradedSeries lhs_symmetric = residue_sum_symmetric(localized_kernel(fgl, local, "t_twist", E, integrand), "t_twist", E);
  if (!lhs.same_terms(lhs_symmetric))
    throw VerificationError("push-forward: Vandermonde clearing and symmetric evaluation of the residue sum disagree");
  const int f = static_cast<int>(F.size()), e = static_cast<int>(E.size());
  const int M = f - e + 1 + s;
  const GradedSeries rhs = relative_segre(fgl, local, E, F, "u_twist", M).coefficient(M);
  if (!lhs.same_terms(rhs))
    throw VerificationError("push-forward of tau^" + std::to_string(s) + " c_f(Q x F^vee) = " + lhs.to_string() +
                            " differs from S_" + std::to_string(M) + "(E-F) = " + rhs.to_string());
  std::vector<std::pair<std::string, std::string>> id;
  for (const auto& r : all) id.emplace_back(r, r);
  return rename(lhs, id, alph);
}

GradedSeries to_chern_classes(const GradedSeries& f, const std::vector<std::string>& roots,
                              const std::string& label) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= roots.size(); ++i) names.push_back("c" + std::to_string(i) + "(" + label + ")");
  return symmetric_reduce(f, roots, names);
}

}  // namespace cobord
