#include <cobord/series.hpp>
#include <cobord/series_kernels.hpp>

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

namespace cobord {

// Alphabet -------------------------------------------------------------------

Alphabet::Alphabet(std::vector<Variable> vars) : vars_(std::move(vars)) {
  if (vars_.size() > kMaxVariables)
    throw std::invalid_argument("alphabet has " + std::to_string(vars_.size()) + " variables; at most " +
                                std::to_string(kMaxVariables) + " are supported");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name.empty()) throw std::invalid_argument("empty variable name");
    if (vars_[i].degree != -1 && vars_[i].degree <= 0)
      throw std::invalid_argument("variable '" + vars_[i].name + "' must have degree +1, -1 or a positive weight");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j].name == vars_[i].name) throw std::invalid_argument("duplicate variable '" + vars_[i].name + "'");
  }
}

AlphabetPtr Alphabet::make(std::vector<Variable> vars) { return std::make_shared<const Alphabet>(std::move(vars)); }

AlphabetPtr Alphabet::of(const std::vector<std::string>& names) {
  std::vector<Variable> v;
  v.reserve(names.size());
  for (const auto& n : names) v.push_back({n, 1});
  return make(std::move(v));
}

int Alphabet::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw std::invalid_argument("unknown variable '" + name + "'");
}

std::optional<int> Alphabet::find(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.vars_.size() != b.vars_.size()) return false;
  for (std::size_t i = 0; i < a.vars_.size(); ++i)
    if (a.vars_[i].name != b.vars_[i].name || a.vars_[i].degree != b.vars_[i].degree) return false;
  return true;
}

AlphabetPtr extend_alphabet(const AlphabetPtr& base, const std::vector<Variable>& extra) {
  std::vector<Variable> v = base->variables();
  v.insert(v.end(), extra.begin(), extra.end());
  return Alphabet::make(std::move(v));
}

// Ordering ---------------------------------------------------------------------

bool canonical_less(const Alphabet& alph, const TheorySpec& theory, const SeriesTerm& a, const SeriesTerm& b) {
  const int da = alph.degree(a.mono), db = alph.degree(b.mono);
  if (da != db) return da < db;
  if (a.mono != b.mono) return b.mono < a.mono;
  return GenOrder{&theory}(a.gen, b.gen);
}

// GradedSeries -----------------------------------------------------------------

GradedSeries::GradedSeries(const TheorySpec& theory, AlphabetPtr alphabet)
    : theory_(theory), alphabet_(std::move(alphabet)), caps_(no_caps()) {
  if (!alphabet_) throw std::invalid_argument("null alphabet");
}

GradedSeries GradedSeries::constant(const TheorySpec& theory, AlphabetPtr alphabet, const CoeffElement& c) {
  return monomial(theory, std::move(alphabet), Monomial{}, c);
}

GradedSeries GradedSeries::constant(const TheorySpec& theory, AlphabetPtr alphabet, const Rational& c) {
  return constant(theory, std::move(alphabet), CoeffElement(theory, c));
}

GradedSeries GradedSeries::variable(const TheorySpec& theory, AlphabetPtr alphabet, const std::string& name) {
  const int i = alphabet->index_of(name);
  return variable(theory, std::move(alphabet), i);
}

GradedSeries GradedSeries::variable(const TheorySpec& theory, AlphabetPtr alphabet, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= alphabet->size())
    throw std::out_of_range("variable index out of range");
  Monomial m;
  m.set(index, 1);
  return monomial(theory, std::move(alphabet), m, CoeffElement(theory, Rational(1)));
}

GradedSeries GradedSeries::monomial(const TheorySpec& theory, AlphabetPtr alphabet, const Monomial& m,
                                    const CoeffElement& c) {
  if (!(c.theory() == theory)) throw std::invalid_argument("coefficient belongs to a different theory");
  GradedSeries s(theory, std::move(alphabet));
  for (const auto& [g, q] : c.terms()) s.terms_.push_back({m, g, q});
  s.normalize();
  return s;
}

GradedSeries GradedSeries::from_terms(const TheorySpec& theory, AlphabetPtr alphabet, std::vector<SeriesTerm> terms,
                                      const CapArray& caps) {
  GradedSeries s(theory, std::move(alphabet));
  s.terms_ = std::move(terms);
  s.caps_ = caps;
  s.normalize();
  return s;
}

namespace {

// Byte string whose lexicographic order is the canonical term order.
struct SortKey {
  std::array<unsigned char, 32> bytes;
  std::uint32_t index;
};

SortKey make_key(int degree, const Monomial& mono, int depth, const GenMonomial& gen, std::uint32_t index) {
  SortKey k{};
  const int d = degree + 32768;
  k.bytes[0] = static_cast<unsigned char>(d >> 8);
  k.bytes[1] = static_cast<unsigned char>(d & 0xff);
  for (std::size_t i = 0; i < kMaxVariables; ++i) k.bytes[2 + i] = static_cast<unsigned char>(127 - mono[i]);
  k.bytes[2 + kMaxVariables] = static_cast<unsigned char>(depth);
  for (std::size_t i = 0; i < kMaxGenerators; ++i) k.bytes[3 + kMaxVariables + i] = static_cast<unsigned char>(255 - gen[i]);
  k.index = index;
  return k;
}

bool key_less(const SortKey& a, const SortKey& b) {
  return std::memcmp(a.bytes.data(), b.bytes.data(), a.bytes.size()) < 0;
}

}  // namespace

void GradedSeries::normalize() {
  const int T = theory_.trunc();
  const std::size_t nv = alphabet_->size();
  bool capped = false;
  for (std::size_t v = 0; v < nv; ++v) capped = capped || caps_[v] != kNoCap;
  std::vector<SortKey> keys;
  keys.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const SeriesTerm& t = terms_[i];
    if (t.coeff == 0) continue;
    const int depth = theory_.depth(t.gen);
    if (depth > T) continue;
    if (capped) {
      bool over = false;
      for (std::size_t v = 0; v < nv && !over; ++v) over = caps_[v] != kNoCap && t.mono[v] > caps_[v];
      if (over) continue;
    }
    keys.push_back(make_key(alphabet_->degree(t.mono), t.mono, depth, t.gen, static_cast<std::uint32_t>(i)));
  }
  std::sort(keys.begin(), keys.end(), key_less);
  std::vector<SeriesTerm> merged;
  merged.reserve(keys.size());
  for (const auto& k : keys) {
    SeriesTerm& t = terms_[k.index];
    if (!merged.empty() && merged.back().mono == t.mono && merged.back().gen == t.gen)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const SeriesTerm& t) { return t.coeff == 0; });
  terms_ = std::move(merged);
}

void GradedSeries::check_compatible(const GradedSeries& o, const char* op) const {
  if (!(theory_ == o.theory_)) throw std::invalid_argument(std::string(op) + ": theory or truncation mismatch");
  if (alphabet_ != o.alphabet_ && !(*alphabet_ == *o.alphabet_))
    throw std::invalid_argument(std::string(op) + ": alphabet mismatch");
}

GradedSeries GradedSeries::with_cap(int var, int cap) const {
  GradedSeries s = *this;
  if (var < 0 || static_cast<std::size_t>(var) >= alphabet_->size()) throw std::out_of_range("cap variable");
  s.caps_[var] = std::min(s.caps_[var], cap);
  s.normalize();
  return s;
}

GradedSeries GradedSeries::without_caps() const {
  GradedSeries s = *this;
  s.caps_ = no_caps();
  return s;
}

std::optional<int> GradedSeries::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  auto deg = [&](const SeriesTerm& t) { return alphabet_->degree(t.mono) - theory_.depth(t.gen); };
  const int d = deg(terms_.front());
  for (const auto& t : terms_)
    if (deg(t) != d) return std::nullopt;
  return d;
}

CoeffElement GradedSeries::coefficient_of(const Monomial& m) const {
  for (std::size_t v = 0; v < alphabet_->size(); ++v)
    if (caps_[v] != kNoCap && m[v] > caps_[v])
      throw std::out_of_range("coefficient requested above the cap of variable '" + (*alphabet_)[v].name + "'");
  CoeffElement c(theory_);
  std::vector<SeriesTerm> hits;
  for (const auto& t : terms_)
    if (t.mono == m) c += CoeffElement(theory_, t.gen, t.coeff);
  return c;
}

std::optional<int> GradedSeries::min_exponent(int var) const {
  std::optional<int> r;
  for (const auto& t : terms_) r = r ? std::min(*r, int{t.mono[var]}) : int{t.mono[var]};
  return r;
}

std::optional<int> GradedSeries::max_exponent(int var) const {
  std::optional<int> r;
  for (const auto& t : terms_) r = r ? std::max(*r, int{t.mono[var]}) : int{t.mono[var]};
  return r;
}

bool GradedSeries::is_power_series() const {
  for (const auto& t : terms_)
    for (std::size_t v = 0; v < alphabet_->size(); ++v)
      if (t.mono[v] < 0) return false;
  return true;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  check_compatible(o, "add");
  for (std::size_t v = 0; v < kMaxVariables; ++v) caps_[v] = std::min(caps_[v], o.caps_[v]);
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o) {
  check_compatible(o, "sub");
  for (std::size_t v = 0; v < kMaxVariables; ++v) caps_[v] = std::min(caps_[v], o.caps_[v]);
  for (const auto& t : o.terms_) terms_.push_back({t.mono, t.gen, -t.coeff});
  normalize();
  return *this;
}

GradedSeries operator-(const GradedSeries& a) {
  GradedSeries r = a;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

int product_cap(const GradedSeries& a, const GradedSeries& b, int v) {
  const long long ca = a.caps()[v], cb = b.caps()[v];
  if (ca == kNoCap && cb == kNoCap) return kNoCap;
  long long cap = kNoCap;
  if (ca != kNoCap) cap = std::min(cap, ca + b.min_exponent(v).value_or(0));
  if (cb != kNoCap) cap = std::min(cap, cb + a.min_exponent(v).value_or(0));
  return static_cast<int>(std::clamp<long long>(cap, INT_MIN / 2, kNoCap));
}

}  // namespace

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  a.check_compatible(b, "mul");
  GradedSeries r(a.theory_, a.alphabet_);
  for (std::size_t v = 0; v < a.alphabet_->size(); ++v) r.caps_[v] = product_cap(a, b, static_cast<int>(v));
  kernels::ProductSpec spec{&a.theory_, r.caps_};
  r.terms_ = kernels::multiply(a.terms_, b.terms_, spec);
  r.normalize();
  return r;
}

GradedSeries operator*(const GradedSeries& a, const CoeffElement& c) {
  return a * GradedSeries::constant(a.theory_, a.alphabet_, c);
}

GradedSeries operator*(const GradedSeries& a, const Rational& c) {
  GradedSeries r = a;
  if (c == 0) {
    r.terms_.clear();
    return r;
  }
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

GradedSeries GradedSeries::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power of a series; use inverse()");
  GradedSeries result = constant(theory_, alphabet_, Rational(1));
  GradedSeries base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool operator==(const GradedSeries& a, const GradedSeries& b) {
  if (!(a.theory_ == b.theory_)) return false;
  if (a.alphabet_ != b.alphabet_ && !(*a.alphabet_ == *b.alphabet_)) return false;
  return a.caps_ == b.caps_ && a.terms_ == b.terms_;
}

bool GradedSeries::same_terms(const GradedSeries& o) const {
  if (!(theory_ == o.theory_)) return false;
  if (alphabet_ != o.alphabet_ && !(*alphabet_ == *o.alphabet_)) return false;
  return terms_ == o.terms_;
}

namespace {

std::string monomial_text(const Alphabet& alph, const Monomial& m, bool latex) {
  std::string s;
  for (std::size_t i = 0; i < alph.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += latex ? " " : "*";
    s += alph[i].name;
    if (m[i] != 1) s += latex ? "^{" + std::to_string(m[i]) + "}" : "^" + std::to_string(m[i]);
  }
  return s;
}

template <typename CoeffFmt>
std::string format_series(const GradedSeries& s, bool latex, CoeffFmt fmt) {
  if (s.is_zero()) return "0";
  std::string out;
  const auto& terms = s.terms();
  std::size_t i = 0;
  while (i < terms.size()) {
    CoeffElement c(s.theory());
    const Monomial m = terms[i].mono;
    for (; i < terms.size() && terms[i].mono == m; ++i) c += CoeffElement(s.theory(), terms[i].gen, terms[i].coeff);
    const std::string mono = monomial_text(*s.alphabet(), m, latex);
    std::string coeff = fmt(c);
    const bool compound = c.terms().size() > 1;
    std::string piece;
    if (mono.empty()) {
      piece = compound ? "(" + coeff + ")" : coeff;
    } else if (coeff == "1") {
      piece = mono;
    } else if (coeff == "-1") {
      piece = "-" + mono;
    } else {
      piece = (compound ? "(" + coeff + ")" : coeff) + (latex ? " " : "*") + mono;
    }
    if (out.empty())
      out = piece;
    else if (piece.front() == '-' && !compound)
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out;
}

}  // namespace

std::string GradedSeries::to_string() const {
  std::string s = format_series(*this, false, [](const CoeffElement& c) { return c.to_string(); });
  for (std::size_t v = 0; v < alphabet_->size(); ++v)
    if (caps_[v] != kNoCap) s += " + O(" + (*alphabet_)[v].name + "^" + std::to_string(caps_[v] + 1) + ")";
  return s;
}

std::string GradedSeries::to_latex() const {
  return format_series(*this, true, [](const CoeffElement& c) { return c.to_latex(); });
}

std::ostream& operator<<(std::ostream& os, const GradedSeries& s) { return os << s.to_string(); }

// Free operations --------------------------------------------------------------

GradedSeries add(const GradedSeries& a, const GradedSeries& b) { return a + b; }
GradedSeries mul(const GradedSeries& a, const GradedSeries& b) { return a * b; }
GradedSeries scale(const GradedSeries& a, const CoeffElement& c) { return a * c; }

namespace {

// Single monomial with coefficient +-1 and no generators.
std::optional<std::pair<Monomial, int>> unit_monomial(const GradedSeries& s) {
  if (s.size() != 1) return std::nullopt;
  const auto& t = s.terms().front();
  if (!t.gen.is_zero() || (t.coeff != 1 && t.coeff != -1)) return std::nullopt;
  return std::make_pair(t.mono, t.coeff == 1 ? 1 : -1);
}

}  // namespace

GradedSeries evaluate(const GradedSeries& f, const std::vector<GradedSeries>& args) {
  const std::size_t nv = f.alphabet()->size();
  if (args.size() != nv) throw std::invalid_argument("evaluate: need one argument per variable");
  if (nv == 0) return f;
  const TheorySpec& th = f.theory();
  const AlphabetPtr& target = args.front().alphabet();
  for (const auto& a : args) {
    if (!(a.theory() == th)) throw std::invalid_argument("evaluate: theory mismatch");
    if (a.alphabet() != target && !(*a.alphabet() == *target))
      throw std::invalid_argument("evaluate: arguments over different alphabets");
  }

  CapArray result_caps = no_caps();
  for (std::size_t v = 0; v < nv; ++v) {
    if (f.caps()[v] == kNoCap) continue;
    auto um = unit_monomial(args[v]);
    int single = -1;
    if (um && um->second == 1 && um->first.sum(target->size()) == 1) {
      for (std::size_t j = 0; j < target->size(); ++j)
        if (um->first[j] == 1) single = static_cast<int>(j);
    }
    if (single < 0)
      throw std::domain_error("evaluate: capped variable '" + (*f.alphabet())[v].name +
                              "' may only be renamed to another variable");
    result_caps[single] = std::min(result_caps[single], f.caps()[v]);
  }

  std::map<std::pair<std::size_t, int>, GradedSeries> cache;
  auto power = [&](std::size_t v, int e) -> const GradedSeries& {
    auto key = std::make_pair(v, e);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    GradedSeries p(th, target);
    if (e >= 0) {
      if (e == 0)
        p = GradedSeries::constant(th, target, Rational(1));
      else if (e == 1)
        p = args[v];
      else {
        auto prev = cache.find({v, e - 1});
        p = prev != cache.end() ? prev->second * args[v] : args[v].pow(e);
      }
    } else {
      auto um = unit_monomial(args[v]);
      if (!um)
        throw std::domain_error("evaluate: negative power of '" + (*f.alphabet())[v].name +
                                "' needs a unit monomial argument");
      Monomial inv;
      for (std::size_t j = 0; j < target->size(); ++j) inv.set(j, -int{um->first[j]} * (-e));
      const int sign = (um->second == -1 && (e % 2 != 0)) ? -1 : 1;
      p = GradedSeries::monomial(th, target, inv, CoeffElement(th, Rational(sign)));
    }
    return cache.emplace(key, std::move(p)).first->second;
  };

  GradedSeries result(th, target);
  const auto& terms = f.terms();
  std::vector<SeriesTerm> acc;
  std::size_t i = 0;
  while (i < terms.size()) {
    const Monomial m = terms[i].mono;
    std::vector<SeriesTerm> coeff_terms;
    for (; i < terms.size() && terms[i].mono == m; ++i) coeff_terms.push_back({Monomial{}, terms[i].gen, terms[i].coeff});
    GradedSeries piece = GradedSeries::from_terms(th, target, std::move(coeff_terms));
    for (std::size_t v = 0; v < nv && !piece.is_zero(); ++v)
      if (m[v] != 0) piece = piece * power(v, m[v]);
    result += piece;
  }
  if (result_caps != no_caps()) result = GradedSeries::from_terms(th, target, result.terms(), [&] {
    CapArray c = result.caps();
    for (std::size_t v = 0; v < kMaxVariables; ++v) c[v] = std::min(c[v], result_caps[v]);
    return c;
  }());
  return result;
}

GradedSeries substitute(const GradedSeries& f, const std::string& var, const GradedSeries& replacement) {
  const int idx = f.alphabet()->index_of(var);
  if (f.caps()[idx] != kNoCap && !replacement.constant_term().is_zero())
    throw std::domain_error("substitute: replacement for capped variable '" + var + "' has a nonzero constant term");
  if (!(replacement.theory() == f.theory())) throw std::invalid_argument("substitute: theory mismatch");
  if (replacement.alphabet() != f.alphabet() && !(*replacement.alphabet() == *f.alphabet()))
    throw std::invalid_argument("substitute: replacement must live over the same alphabet");
  if (f.caps()[idx] != kNoCap) {
    // Safe only for renaming; otherwise the dropped tail could contribute.
    auto um = unit_monomial(replacement);
    if (!um || um->second != 1 || um->first.sum(f.alphabet()->size()) != 1)
      throw std::domain_error("substitute: capped variable '" + var + "' may only be renamed");
  }
  if (auto um = unit_monomial(replacement)) {
    // Monomial replacement: exponents are remapped directly.
    std::vector<SeriesTerm> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
      const int e = t.mono[idx];
      Monomial m = t.mono;
      m.set(idx, 0);
      for (std::size_t v = 0; v < f.alphabet()->size(); ++v)
        if (um->first[v] != 0) m.add(v, e * um->first[v]);
      terms.push_back({m, t.gen, (um->second == -1 && e % 2 != 0) ? Rational(-t.coeff) : t.coeff});
    }
    CapArray caps = f.caps();
    if (caps[idx] != kNoCap) {
      for (std::size_t v = 0; v < f.alphabet()->size(); ++v)
        if (um->first[v] == 1) caps[v] = std::min(caps[v], caps[idx]);
      caps[idx] = kNoCap;
    }
    return GradedSeries::from_terms(f.theory(), f.alphabet(), std::move(terms), caps);
  }
  std::vector<GradedSeries> args;
  for (std::size_t v = 0; v < f.alphabet()->size(); ++v)
    args.push_back(static_cast<int>(v) == idx ? replacement
                                              : GradedSeries::variable(f.theory(), f.alphabet(), static_cast<int>(v)));
  return evaluate(f, args);
}

GradedSeries set_zero(const GradedSeries& f, const std::vector<std::string>& vars) {
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(f.alphabet()->index_of(v));
  std::vector<SeriesTerm> kept;
  for (const auto& t : f.terms()) {
    bool zero = false;
    for (int i : idx) {
      if (t.mono[i] < 0) throw std::domain_error("set_zero: negative power of a variable set to zero");
      if (t.mono[i] > 0) zero = true;
    }
    if (!zero) kept.push_back(t);
  }
  CapArray caps = f.caps();
  for (int i : idx) caps[i] = kNoCap;
  return GradedSeries::from_terms(f.theory(), f.alphabet(), std::move(kept), caps);
}

GradedSeries embed(const GradedSeries& f, const AlphabetPtr& target) {
  std::vector<std::pair<std::string, std::string>> id;
  for (const auto& v : f.alphabet()->variables()) id.emplace_back(v.name, v.name);
  return rename(f, id, target);
}

GradedSeries rename(const GradedSeries& f, const std::vector<std::pair<std::string, std::string>>& mapping,
                    const AlphabetPtr& target) {
  const Alphabet& src = *f.alphabet();
  std::vector<int> map(src.size(), -1);
  for (const auto& [from, to] : mapping) map[src.index_of(from)] = target->index_of(to);
  for (std::size_t v = 0; v < src.size(); ++v) {
    if (map[v] >= 0) continue;
    // Unmapped variables must not occur.
    for (const auto& t : f.terms())
      if (t.mono[v] != 0) throw std::invalid_argument("rename: variable '" + src[v].name + "' has no image");
  }
  for (std::size_t v = 0; v < src.size(); ++v)
    for (std::size_t w = 0; w < v; ++w)
      if (map[v] >= 0 && map[v] == map[w]) throw std::invalid_argument("rename: two variables map to one");
  std::vector<SeriesTerm> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < src.size(); ++v)
      if (map[v] >= 0) m.set(map[v], t.mono[v]);
    terms.push_back({m, t.gen, t.coeff});
  }
  CapArray caps = no_caps();
  for (std::size_t v = 0; v < src.size(); ++v)
    if (map[v] >= 0) caps[map[v]] = f.caps()[v];
  return GradedSeries::from_terms(f.theory(), target, std::move(terms), caps);
}

namespace {

CoeffElement coeff_inverse(const CoeffElement& c) {
  const Rational a = c.scalar_part();
  if (a == 0) throw std::domain_error("constant term is not a unit of the coefficient ring");
  const TheorySpec& th = c.theory();
  const Rational ainv = 1 / a;
  CoeffElement n = c * ainv - CoeffElement(th, Rational(1));  // nilpotent
  CoeffElement sum(th, Rational(1)), term(th, Rational(1));
  for (int k = 1; k <= th.trunc() && !n.is_zero(); ++k) {
    term = term * (-n);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * ainv;
}

}  // namespace

GradedSeries inverse(const GradedSeries& den) {
  const TheorySpec& th = den.theory();
  const CoeffElement c0 = den.constant_term();
  const CoeffElement c0inv = coeff_inverse(c0);
  GradedSeries r = (den - GradedSeries::constant(th, den.alphabet(), c0)) * c0inv;
  const std::size_t nv = den.alphabet()->size();
  for (const auto& t : r.terms()) {
    if (th.depth(t.gen) >= 1) continue;
    bool capped_nonneg = true, grows = false;
    for (std::size_t v = 0; v < nv; ++v) {
      if (den.caps()[v] == kNoCap) continue;
      if (t.mono[v] < 0) capped_nonneg = false;
      if (t.mono[v] > 0) grows = true;
    }
    if (!capped_nonneg || !grows)
      throw std::domain_error("inverse: geometric series does not terminate under the truncation (term " +
                              GradedSeries::from_terms(th, den.alphabet(), {t}).to_string() + ")");
  }
  GradedSeries neg = -r;
  GradedSeries sum = GradedSeries::constant(th, den.alphabet(), Rational(1));
  GradedSeries power = sum;
  for (int k = 1;; ++k) {
    power = power * neg;
    for (std::size_t v = 0; v < nv; ++v)
      if (den.caps()[v] != kNoCap) power = power.with_cap(static_cast<int>(v), den.caps()[v]);
    if (power.is_zero()) break;
    sum += power;
    if (k > 100000) throw std::domain_error("inverse: no termination");
  }
  // Carry the denominator's caps so the exactness range is explicit.
  CapArray caps = sum.caps();
  for (std::size_t v = 0; v < kMaxVariables; ++v) caps[v] = std::min(caps[v], den.caps()[v]);
  return GradedSeries::from_terms(th, den.alphabet(), sum.terms(), caps) * c0inv;
}

GradedSeries divide_exact(const GradedSeries& num, const GradedSeries& den) { return num * inverse(den); }

GradedSeries divide_by_difference(const GradedSeries& f, const std::string& z, const std::string& x) {
  const int iz = f.alphabet()->index_of(z), ix = f.alphabet()->index_of(x);
  if (iz == ix) throw std::invalid_argument("divide_by_difference: z and x must differ");
  if (f.caps()[iz] != kNoCap || f.caps()[ix] != kNoCap)
    throw std::domain_error("divide_by_difference: capped variables are not supported");
  const GradedSeries rem = substitute(f, z, GradedSeries::variable(f.theory(), f.alphabet(), ix));
  if (!rem.is_zero()) {
    const auto& t = rem.terms().front();
    throw VerificationError("divide_by_difference: series does not vanish at " + z + " = " + x +
                            "; first remainder term " +
                            GradedSeries::from_terms(f.theory(), f.alphabet(), {t}).to_string());
  }
  std::vector<SeriesTerm> q;
  for (const auto& t : f.terms()) {
    const int j = t.mono[iz];
    if (j < 0) throw std::domain_error("divide_by_difference: negative power of " + z);
    for (int i = 0; i < j; ++i) {
      Monomial m = t.mono;
      m.set(iz, j - 1 - i);
      m.add(ix, i);
      q.push_back({m, t.gen, t.coeff});
    }
  }
  return GradedSeries::from_terms(f.theory(), f.alphabet(), std::move(q), f.caps());
}

GradedSeries extract_in(const GradedSeries& f, const std::string& var, int k) {
  const int iv = f.alphabet()->index_of(var);
  if (f.caps()[iv] != kNoCap && k > f.caps()[iv])
    throw std::out_of_range("extract_in: exponent " + std::to_string(k) + " of '" + var + "' lies above its cap");
  std::vector<SeriesTerm> out;
  for (const auto& t : f.terms()) {
    if (t.mono[iv] != k) continue;
    Monomial m = t.mono;
    m.set(iv, 0);
    out.push_back({m, t.gen, t.coeff});
  }
  CapArray caps = f.caps();
  caps[iv] = kNoCap;
  return GradedSeries::from_terms(f.theory(), f.alphabet(), std::move(out), caps);
}

CoeffElement coefficient_of(const GradedSeries& f, const Monomial& m) { return f.coefficient_of(m); }

GradedSeries truncate_degree(const GradedSeries& f, const std::vector<std::string>& vars, int max_degree) {
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(f.alphabet()->index_of(v));
  std::vector<SeriesTerm> kept;
  for (const auto& t : f.terms()) {
    int d = 0;
    for (int i : idx) d += t.mono[i];
    if (d <= max_degree) kept.push_back(t);
  }
  return GradedSeries::from_terms(f.theory(), f.alphabet(), std::move(kept), f.caps());
}

namespace {

GradedSeries swap_vars(const GradedSeries& f, int a, int b) {
  std::vector<SeriesTerm> terms = f.terms();
  for (auto& t : terms) {
    const int ea = t.mono[a], eb = t.mono[b];
    t.mono.set(a, eb);
    t.mono.set(b, ea);
  }
  CapArray caps = f.caps();
  std::swap(caps[a], caps[b]);
  return GradedSeries::from_terms(f.theory(), f.alphabet(), std::move(terms), caps);
}

}  // namespace

bool is_symmetric(const GradedSeries& f, const std::vector<std::string>& vars) {
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(f.alphabet()->index_of(v));
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (!swap_vars(f, idx[i], idx[i + 1]).same_terms(f)) return false;
  return true;
}

GradedSeries elementary(const TheorySpec& theory, const AlphabetPtr& alph, const std::vector<std::string>& vars,
                        int k) {
  const int n = static_cast<int>(vars.size());
  if (k < 0 || k > n) return GradedSeries(theory, alph);
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(alph->index_of(v));
  std::vector<SeriesTerm> terms;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    Monomial m;
    for (int i = 0; i < n; ++i)
      if (pick[i]) m.set(idx[i], 1);
    terms.push_back({m, GenMonomial{}, Rational(1)});
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return GradedSeries::from_terms(theory, alph, std::move(terms));
}

GradedSeries complete(const TheorySpec& theory, const AlphabetPtr& alph, const std::vector<std::string>& vars,
                      int k) {
  if (k < 0) return GradedSeries(theory, alph);
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(alph->index_of(v));
  std::vector<SeriesTerm> terms;
  if (idx.empty()) {
    if (k == 0) terms.push_back({Monomial{}, GenMonomial{}, Rational(1)});
    return GradedSeries::from_terms(theory, alph, std::move(terms));
  }
  std::vector<int> e(idx.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == idx.size()) {
      e[pos] = left;
      Monomial m;
      for (std::size_t i = 0; i < idx.size(); ++i) m.set(idx[i], e[i]);
      terms.push_back({m, GenMonomial{}, Rational(1)});
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[pos] = a;
      self(self, pos + 1, left - a);
    }
  };
  rec(rec, 0, k);
  return GradedSeries::from_terms(theory, alph, std::move(terms));
}

GradedSeries symmetric_reduce(const GradedSeries& f, const std::vector<std::string>& vars,
                              const std::vector<std::string>& names, const AlphabetPtr& target) {
  if (names.size() != vars.size()) throw std::invalid_argument("symmetric_reduce: need one name per variable");
  if (!is_symmetric(f, vars)) throw std::invalid_argument("symmetric_reduce: input is not symmetric");
  const TheorySpec& th = f.theory();
  const AlphabetPtr& src = f.alphabet();
  std::vector<int> idx;
  for (const auto& v : vars) {
    idx.push_back(src->index_of(v));
    if (f.caps()[idx.back()] != kNoCap) throw std::domain_error("symmetric_reduce: capped variable " + v);
  }
  const std::size_t k = idx.size();
  std::vector<int> eidx;
  for (const auto& nm : names) eidx.push_back(target->index_of(nm));
  std::vector<GradedSeries> e;
  for (std::size_t j = 0; j <= k; ++j) e.push_back(elementary(th, src, vars, static_cast<int>(j)));

  // Other variables carried over by name.
  std::vector<std::pair<std::string, std::string>> carry;
  for (std::size_t v = 0; v < src->size(); ++v)
    if (std::find(idx.begin(), idx.end(), static_cast<int>(v)) == idx.end())
      carry.emplace_back((*src)[v].name, (*src)[v].name);

  GradedSeries residual = f;
  std::vector<SeriesTerm> out;
  while (!residual.is_zero()) {
    // Lex-largest exponent vector in the symmetric variables.
    std::vector<int> lead;
    for (const auto& t : residual.terms()) {
      std::vector<int> a(k);
      for (std::size_t j = 0; j < k; ++j) a[j] = t.mono[idx[j]];
      if (lead.empty() || a > lead) lead = a;
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (lead[j] < 0) throw std::domain_error("symmetric_reduce: negative exponent");
      if (j + 1 < k && lead[j] < lead[j + 1]) throw std::invalid_argument("symmetric_reduce: input is not symmetric");
    }
    std::vector<SeriesTerm> cterms;
    for (const auto& t : residual.terms()) {
      bool match = true;
      for (std::size_t j = 0; j < k && match; ++j) match = t.mono[idx[j]] == lead[j];
      if (!match) continue;
      Monomial m = t.mono;
      for (std::size_t j = 0; j < k; ++j) m.set(idx[j], 0);
      cterms.push_back({m, t.gen, t.coeff});
    }
    GradedSeries c = GradedSeries::from_terms(th, src, std::move(cterms), residual.caps());
    GradedSeries prod = c;
    Monomial emono;
    for (std::size_t j = 0; j < k; ++j) {
      const int p = lead[j] - (j + 1 < k ? lead[j + 1] : 0);
      if (p > 0) prod = prod * e[j + 1].pow(p);
      emono.set(eidx[j], p);
    }
    residual -= prod;
    const GradedSeries moved = rename(c, carry, target);
    for (const auto& t : moved.terms()) out.push_back({t.mono + emono, t.gen, t.coeff});
  }
  CapArray caps = no_caps();
  for (const auto& [from, to] : carry) caps[target->index_of(to)] = f.caps()[src->index_of(from)];
  return GradedSeries::from_terms(th, target, std::move(out), caps);
}

GradedSeries symmetric_reduce(const GradedSeries& f, const std::vector<std::string>& vars,
                              const std::vector<std::string>& names) {
  std::vector<Variable> v;
  int deg = 1;
  for (const auto& var : f.alphabet()->variables()) {
    if (std::find(vars.begin(), vars.end(), var.name) == vars.end())
      v.push_back(var);
    else
      deg = var.degree;
  }
  for (std::size_t j = 0; j < names.size(); ++j) v.push_back({names[j], static_cast<int>(j + 1) * deg});
  return symmetric_reduce(f, vars, names, Alphabet::make(std::move(v)));
}

ConeResult cone_check(const GradedSeries& f, const std::vector<std::string>& vars) {
  const std::size_t r = vars.size();
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(f.alphabet()->index_of(v));
  ConeResult res;
  res.shift.assign(r, 0);
  if (f.is_zero() || r == 0) {
    res.member = true;
    return res;
  }
  std::vector<int> min_partial(r, INT_MAX);
  for (const auto& t : f.terms()) {
    int s = 0;
    for (std::size_t j = 0; j < r; ++j) {
      s += t.mono[idx[j]];
      min_partial[j] = std::min(min_partial[j], s);
    }
  }
  if (min_partial[r - 1] < 0) return res;
  std::vector<int> N(r, 0);
  for (std::size_t j = 0; j + 1 < r; ++j) N[j] = std::max(0, -min_partial[j]);
  int prev = 0;
  for (std::size_t j = 0; j < r; ++j) {
    res.shift[j] = N[j] - prev;
    prev = N[j];
  }
  res.member = true;
  return res;
}

bool in_cone_ring(const GradedSeries& f, const std::vector<std::string>& vars, int i) {
  if (!cone_check(f, vars).member) return false;
  for (int j = 0; j + 1 < i && j < static_cast<int>(vars.size()); ++j) {
    const auto lo = f.min_exponent(f.alphabet()->index_of(vars[j]));
    if (lo && *lo < 0) return false;
  }
  return true;
}

}  // namespace cobord
