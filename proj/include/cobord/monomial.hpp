#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace cobord {

/// Fixed-capacity exponent vector. Unused slots stay zero so that
/// comparisons and hashing can work on the whole array.
template <typename Int, std::size_t N>
class ExponentVector {
 public:
  static constexpr std::size_t capacity = N;

  constexpr ExponentVector() noexcept : e_{} {}

  Int operator[](std::size_t i) const noexcept { return e_[i]; }

  void set(std::size_t i, int value) {
    if (i >= N) throw std::out_of_range("exponent index beyond capacity");
    e_[i] = checked(value);
  }

  void add(std::size_t i, int delta) { set(i, int{e_[i]} + delta); }

  ExponentVector& operator+=(const ExponentVector& o) {
    for (std::size_t i = 0; i < N; ++i) e_[i] = checked(int{e_[i]} + int{o.e_[i]});
    return *this;
  }

  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }

  bool is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](Int v) { return v == 0; });
  }

  int sum(std::size_t n = N) const noexcept {
    int s = 0;
    for (std::size_t i = 0; i < n; ++i) s += e_[i];
    return s;
  }

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) noexcept { return a.e_ == b.e_; }
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) noexcept { return a.e_ <=> b.e_; }

  std::size_t hash() const noexcept {
    // FNV-1a over the raw bytes.
    std::size_t h = 1469598103934665603ULL;
    const auto* p = reinterpret_cast<const unsigned char*>(e_.data());
    for (std::size_t i = 0; i < sizeof(e_); ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
    return h;
  }

 private:
  static Int checked(int v) {
    if (v < std::numeric_limits<Int>::min() || v > std::numeric_limits<Int>::max())
      throw std::overflow_error("exponent out of representable range: " + std::to_string(v));
    return static_cast<Int>(v);
  }

  std::array<Int, N> e_;
};

inline constexpr std::size_t kMaxVariables = 16;
inline constexpr std::size_t kMaxGenerators = 12;

/// Exponents of the formal variables of a series (Laurent: may be negative).
using Monomial = ExponentVector<std::int8_t, kMaxVariables>;
/// Exponents of the coefficient-ring generators (beta, or m_1..m_T).
using GenMonomial = ExponentVector<std::uint8_t, kMaxGenerators>;

struct ExponentHash {
  template <typename Int, std::size_t N>
  std::size_t operator()(const ExponentVector<Int, N>& v) const noexcept {
    return v.hash();
  }
};

}  // namespace cobord
