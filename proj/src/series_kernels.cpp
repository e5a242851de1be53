#include <cobord/series_kernels.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cobord::kernels {

namespace {

struct Key {
  Monomial mono;
  GenMonomial gen;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept { return k.mono.hash() * 31u ^ k.gen.hash(); }
};

using Accumulator = std::unordered_map<Key, Rational, KeyHash>;

struct Prepared {
  std::vector<int> depth_a;
  std::vector<std::size_t> order_b;  // b indices sorted by depth
  std::vector<int> depth_b;          // aligned with order_b
  std::vector<int> capped;           // variables carrying a cap
};

Prepared prepare(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b, const ProductSpec& spec) {
  Prepared p;
  p.depth_a.reserve(a.size());
  for (const auto& t : a) p.depth_a.push_back(spec.theory->depth(t.gen));
  std::vector<int> db;
  db.reserve(b.size());
  for (const auto& t : b) db.push_back(spec.theory->depth(t.gen));
  p.order_b.resize(b.size());
  std::iota(p.order_b.begin(), p.order_b.end(), std::size_t{0});
  std::stable_sort(p.order_b.begin(), p.order_b.end(), [&](std::size_t i, std::size_t j) { return db[i] < db[j]; });
  p.depth_b.reserve(b.size());
  for (auto i : p.order_b) p.depth_b.push_back(db[i]);
  for (std::size_t v = 0; v < kMaxVariables; ++v)
    if (spec.caps[v] != kNoCap) p.capped.push_back(static_cast<int>(v));
  return p;
}

void accumulate_row(std::size_t ia, const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b,
                    const Prepared& p, const ProductSpec& spec, Accumulator& acc, Rational& scratch) {
  const SeriesTerm& ta = a[ia];
  const int budget = spec.theory->trunc() - p.depth_a[ia];
  for (std::size_t jb = 0; jb < p.order_b.size(); ++jb) {
    if (p.depth_b[jb] > budget) break;
    const SeriesTerm& tb = b[p.order_b[jb]];
    bool keep = true;
    for (int v : p.capped) {
      if (int{ta.mono[v]} + int{tb.mono[v]} > spec.caps[v]) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    Key key{ta.mono + tb.mono, ta.gen + tb.gen};
    mpq_mul(scratch.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
    auto [it, inserted] = acc.try_emplace(key);
    if (inserted)
      it->second = scratch;
    else
      it->second += scratch;
  }
}

std::vector<SeriesTerm> drain(Accumulator& acc) {
  std::vector<SeriesTerm> out;
  out.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (c != 0) out.push_back(SeriesTerm{k.mono, k.gen, std::move(c)});
  return out;
}

}  // namespace

std::vector<SeriesTerm> multiply_serial(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b,
                                        const ProductSpec& spec) {
  if (a.empty() || b.empty()) return {};
  const Prepared p = prepare(a, b, spec);
  Accumulator acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
  Rational scratch;
  for (std::size_t i = 0; i < a.size(); ++i) accumulate_row(i, a, b, p, spec, acc, scratch);
  return drain(acc);
}

std::vector<SeriesTerm> multiply_parallel(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b,
                                          const ProductSpec& spec) {
  if (a.empty() || b.empty()) return {};
  const Prepared p = prepare(a, b, spec);
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::vector<Accumulator> partial(static_cast<std::size_t>(threads));
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel num_threads(threads)
  {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    Accumulator& acc = partial[static_cast<std::size_t>(tid)];
    Rational scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) accumulate_row(static_cast<std::size_t>(i), a, b, p, spec, acc, scratch);
  }
  Accumulator& total = partial.front();
  for (std::size_t t = 1; t < partial.size(); ++t) {
    for (auto& [k, c] : partial[t]) {
      auto [it, inserted] = total.try_emplace(k);
      if (inserted)
        it->second = std::move(c);
      else
        it->second += c;
    }
  }
  return drain(total);
}

std::vector<SeriesTerm> multiply(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b,
                                 const ProductSpec& spec) {
#ifdef _OPENMP
  if (a.size() * b.size() >= kParallelThreshold && omp_get_max_threads() > 1) return multiply_parallel(a, b, spec);
#endif
  return multiply_serial(a, b, spec);
}

}  // namespace cobord::kernels
