#include <cobord/grassmann.hpp>

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cobord {

int Partition::size() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition Partition::conjugate() const {
  Partition c;
  for (int j = 0; j < (*this)[0]; ++j) {
    int len = 0;
    while (len < length() && parts[len] > j) ++len;
    c.parts.push_back(len);
  }
  return c;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ")";
}

std::vector<int> parse_parts(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view piece = text.substr(pos, comma - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size())
      throw std::invalid_argument("bad partition '" + std::string(text) + "'");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

Partition validate_partition(const std::vector<int>& parts, int d, int n) {
  if (d < 1 || d >= n) throw std::invalid_argument("need 1 <= d < n");
  Partition p{parts};
  while (!p.parts.empty() && p.parts.back() == 0) p.parts.pop_back();
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (p.parts[i] <= 0) throw std::invalid_argument("partition parts must be positive: " + p.to_string());
    if (i > 0 && p.parts[i] > p.parts[i - 1])
      throw std::invalid_argument("partition must be weakly decreasing: " + p.to_string());
  }
  if (p.length() > d)
    throw std::invalid_argument("partition " + p.to_string() + " has more than d = " + std::to_string(d) + " parts");
  if (!p.parts.empty() && p.parts[0] > n - d)
    throw std::invalid_argument("partition " + p.to_string() + ": lambda_1 > n-d = " + std::to_string(n - d));
  return p;
}

std::vector<Partition> partitions_in_box(int rows, int cols) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int maxpart) {
    out.push_back(Partition{cur});
    if (static_cast<int>(cur.size()) == rows) return;
    for (int p = 1; p <= maxpart; ++p) {
      cur.push_back(p);
      rec(p);
      cur.pop_back();
    }
  };
  rec(cols);
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.parts > b.parts;
  });
  return out;
}

bool SchurClass::has_integer_coefficients() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second.has_integer_coefficients(); });
}

std::string SchurClass::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mu, c] : coeffs) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*s" << mu.to_string();
  }
  return os.str();
}

bool operator==(const SchurClass& a, const SchurClass& b) {
  if (a.coeffs.size() != b.coeffs.size()) return false;
  for (auto ia = a.coeffs.begin(), ib = b.coeffs.begin(); ia != a.coeffs.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

GrassmannRing::GrassmannRing(const TheorySpec& theory, int d, int n) : theory_(theory), d_(d), n_(n) {
  if (d < 1 || d >= n) throw std::invalid_argument("GrassmannRing: need 1 <= d < n");
  for (int i = 1; i <= d; ++i) roots_.push_back("y" + std::to_string(i));
  alph_ = Alphabet::of(roots_);
}

GradedSeries GrassmannRing::schur(const Partition& mu) const {
  GradedSeries out(theory_, alph_);
  if (mu.length() > d_) return out;
  std::vector<SeriesTerm> terms;
  // Fill cells row by row; rows weakly increase, columns strictly increase.
  std::vector<std::vector<int>> tab(mu.length());
  for (int r = 0; r < mu.length(); ++r) tab[r].assign(mu.parts[r], 0);
  std::function<void(int, int)> fill = [&](int r, int c) {
    if (r == mu.length()) {
      Monomial m;
      for (const auto& row : tab)
        for (int v : row) m.add(v, 1);
      terms.push_back({m, GenMonomial{}, Rational(1)});
      return;
    }
    if (c == mu.parts[r]) return fill(r + 1, 0);
    int lo = 0;
    if (c > 0) lo = std::max(lo, tab[r][c - 1]);
    if (r > 0) lo = std::max(lo, tab[r - 1][c] + 1);
    for (int v = lo; v < d_; ++v) {
      tab[r][c] = v;
      fill(r, c + 1);
    }
  };
  fill(0, 0);
  return GradedSeries::from_terms(theory_, alph_, std::move(terms));
}

GradedSeries GrassmannRing::complete(int k) const { return cobord::complete(theory_, alph_, roots_, k); }

SchurClass GrassmannRing::reduce(const GradedSeries& f) const {
  if (!(*f.alphabet() == *alph_)) throw std::invalid_argument("GrassmannRing::reduce: series over a foreign alphabet");
  if (!is_symmetric(f, roots_)) throw std::invalid_argument("GrassmannRing::reduce: input is not symmetric");
  GradedSeries rest = truncate_degree(f, roots_, dimension());
  SchurClass out;
  while (!rest.is_zero()) {
    Monomial lead = rest.terms().front().mono;
    for (const auto& t : rest.terms())
      if (t.mono > lead) lead = t.mono;
    Partition mu;
    for (int i = 0; i < d_; ++i)
      if (lead[i] > 0) mu.parts.push_back(lead[i]);
    const CoeffElement c = coefficient_of(rest, lead);
    rest -= schur(mu) * c;
    if (mu[0] <= n_ - d_) out.coeffs.emplace(mu, c);
  }
  return out;
}

GradedSeries GrassmannRing::lift(const SchurClass& c) const {
  GradedSeries out(theory_, alph_);
  for (const auto& [mu, a] : c.coeffs) out += schur(mu) * a;
  return out;
}

GradedSeries GrassmannRing::to_chern(const SchurClass& c) const {
  std::vector<std::string> names;
  for (int i = 1; i <= d_; ++i) names.push_back("c" + std::to_string(i) + "(S^vee)");
  return symmetric_reduce(lift(c), roots_, names);
}

}  // namespace cobord
