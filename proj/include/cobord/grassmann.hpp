#pragma once

// Partitions and the cohomology ring of a Grassmannian over a point.
//
// Omega*(Gr(d,n)) = L[y_1..y_d]^Sym / (h_k(y) : k > n-d), where y are the
// Chern roots of S^vee. Elements are stored in the Schur basis s_mu(y),
// mu inside the d x (n-d) box.

#include <cobord/coeff.hpp>
#include <cobord/series.hpp>

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cobord {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, all positive

  int length() const noexcept { return static_cast<int>(parts.size()); }
  int size() const noexcept;
  int operator[](int i) const { return i < length() ? parts[i] : 0; }
  bool empty() const noexcept { return parts.empty(); }
  Partition conjugate() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// Parses "2,1" (or "" / "0" for the empty partition) without validation
/// against a Grassmannian. Throws std::invalid_argument on bad syntax.
std::vector<int> parse_parts(std::string_view text);

/// Checks monotonicity, length <= d and lambda_1 <= n-d; trailing zeros are
/// dropped. Throws std::invalid_argument.
Partition validate_partition(const std::vector<int>& parts, int d, int n);

/// All partitions with at most `rows` parts, each at most `cols`, ordered
/// by size and then lexicographically.
std::vector<Partition> partitions_in_box(int rows, int cols);

/// A class of Omega*(Gr(d,n)) in the Schur basis.
struct SchurClass {
  std::map<Partition, CoeffElement> coeffs;  // no zero entries

  bool is_zero() const noexcept { return coeffs.empty(); }
  bool has_integer_coefficients() const;
  std::string to_string() const;
  friend bool operator==(const SchurClass& a, const SchurClass& b);
};

class GrassmannRing {
 public:
  GrassmannRing(const TheorySpec& theory, int d, int n);

  int d() const noexcept { return d_; }
  int n() const noexcept { return n_; }
  int dimension() const noexcept { return d_ * (n_ - d_); }
  const TheorySpec& theory() const noexcept { return theory_; }
  /// {y1..yd}, the roots of S^vee.
  const AlphabetPtr& alphabet() const noexcept { return alph_; }
  const std::vector<std::string>& roots() const noexcept { return roots_; }

  /// s_mu(y) from semistandard tableaux; zero when mu has more than d parts.
  GradedSeries schur(const Partition& mu) const;
  GradedSeries complete(int k) const;

  /// Reduces a series over alphabet() symmetric in y. Throws
  /// std::invalid_argument for asymmetric input.
  SchurClass reduce(const GradedSeries& f) const;
  /// The representative sum_mu a_mu s_mu(y).
  GradedSeries lift(const SchurClass& c) const;
  /// The class as a polynomial in c_i(S^vee), i = 1..d.
  GradedSeries to_chern(const SchurClass& c) const;

 private:
  TheorySpec theory_;
  int d_, n_;
  std::vector<std::string> roots_;
  AlphabetPtr alph_;
};

}  // namespace cobord
