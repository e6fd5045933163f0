#pragma once

// Morphism spaces in the homotopy category of graded matrix factorizations.
//
// For factorizations K, X over the same W, the degree-0 chain space
// C(K, X) consists of pairs f0 : P0 -> Q0, f1 : P1 -> Q1 of degree-preserving
// maps, and d(f) = (e0 f0 - f1 d0, e1 f1 - f0 d1) lands in C(K, X[1]).
// Hom(K, H[k]) is the cohomology of C(K, H[k-1]) -> C(K, H[k]) -> C(K, H[k+1]).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "hmskit/linalg.hpp"
#include "hmskit/matfac.hpp"

namespace hmskit {

/// Monomials of a fixed degree in a positively graded ring, by degree.
class MonomialCache {
 public:
  struct Basis {
    std::vector<Exponent> monomials;
    std::map<Exponent, std::size_t> index;
  };

  explicit MonomialCache(const GradingContext& g) : g_(g) {
    if (!g.positively_graded())
      fail(ErrorKind::unsupported,
           "hom spaces need a rank-one grading with positive variable degrees");
    for (const auto& d : g.deg_x()) weights_.push_back(d.free[0]);
  }

  const Basis& get(const LElement& d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    Basis b;
    if (d.free[0] >= 0) {
      Exponent e(weights_.size(), 0);
      enumerate(0, d.free[0], e, [&](const Exponent& m) {
        if (g_.monomial_degree(m) == d) b.monomials.push_back(m);
      });
      std::sort(b.monomials.begin(), b.monomials.end());
      for (std::size_t i = 0; i < b.monomials.size(); ++i) b.index.emplace(b.monomials[i], i);
    }
    return cache_.emplace(d, std::move(b)).first->second;
  }

 private:
  template <class Fn>
  void enumerate(std::size_t i, std::int64_t rest, Exponent& e, Fn&& fn) {
    if (i == weights_.size()) {
      if (rest == 0) fn(e);
      return;
    }
    for (std::int64_t k = 0; k * weights_[i] <= rest; ++k) {
      e[i] = static_cast<std::uint32_t>(k);
      enumerate(i + 1, rest - k * weights_[i], e, fn);
    }
    e[i] = 0;
  }

  const GradingContext& g_;
  std::vector<std::int64_t> weights_;
  std::map<LElement, Basis> cache_;
};

namespace detail {

struct Block {
  const MonomialCache::Basis* basis = nullptr;
  std::size_t offset = 0;
};

/// Blocks of C(K, X): component 0 indexed (t in Q0, s in P0), component 1
/// indexed (t in Q1, s in P1), row major.
struct ChainLayout {
  std::vector<Block> comp[2];
  std::size_t cols[2] = {0, 0};
  std::size_t dim = 0;

  const Block& at(int c, std::size_t t, std::size_t s) const { return comp[c][t * cols[c] + s]; }
};

template <ExactField F>
ChainLayout layout(const MatrixFactorization<F>& K, const MatrixFactorization<F>& X, MonomialCache& cache) {
  const GradingContext& g = K.grading();
  ChainLayout L;
  const GradedFreeModule* src[2] = {&K.P0(), &K.P1()};
  const GradedFreeModule* dst[2] = {&X.P0(), &X.P1()};
  for (int c : {0, 1}) {
    L.cols[c] = src[c]->rank();
    for (const auto& qt : dst[c]->shifts)
      for (const auto& ps : src[c]->shifts) {
        Block b{&cache.get(g.sub(qt, ps)), L.dim};
        L.dim += b.basis->monomials.size();
        L.comp[c].push_back(b);
      }
  }
  return L;
}

template <ExactField F>
void add_product(std::map<std::size_t, F>& row, const Block& target, const Poly<F>& p, const Exponent& m,
                 const F& sign) {
  Exponent e(m.size());
  for (const auto& [pe, pc] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = pe[i] + m[i];
    auto it = target.basis->index.find(e);
    if (it == target.basis->index.end()) invariant_failure("hom differential leaves its graded piece");
    F& v = row[target.offset + it->second];
    v = v + sign * pc;
  }
}

}  // namespace detail

/// dim C(K, X) and the rank of d : C(K, X) -> C(K, X[1]).
struct ChainStep {
  std::size_t dim = 0;
  std::size_t rank = 0;
};

template <ExactField F>
ChainStep chain_step(const MatrixFactorization<F>& K, const MatrixFactorization<F>& X, MonomialCache& cache) {
  const MatrixFactorization<F> X1 = translate_mf(X);
  const detail::ChainLayout src = detail::layout(K, X, cache);
  const detail::ChainLayout dst = detail::layout(K, X1, cache);
  const std::size_t kp0 = K.P0().rank(), kp1 = K.P1().rank();
  const std::size_t xq0 = X.P0().rank(), xq1 = X.P1().rank();
  const F one(1), minus(-1);
  SparseEliminator<F> elim;
  std::map<std::size_t, F> acc;
  auto flush = [&] {
    typename SparseEliminator<F>::Row row;
    row.reserve(acc.size());
    for (auto& [col, v] : acc)
      if (!is_zero(v)) row.emplace_back(col, std::move(v));
    acc.clear();
    elim.add(std::move(row));
  };
  // f0 = m at (t, s): X.d0 f0 into (u, s) of component 0, -f0 K.d1 into (t, v) of component 1.
  for (std::size_t t = 0; t < xq0; ++t)
    for (std::size_t s = 0; s < kp0; ++s)
      for (const auto& m : src.at(0, t, s).basis->monomials) {
        for (std::size_t u = 0; u < xq1; ++u)
          if (!X.d0()(u, t).is_zero()) detail::add_product(acc, dst.at(0, u, s), X.d0()(u, t), m, one);
        for (std::size_t v = 0; v < kp1; ++v)
          if (!K.d1()(s, v).is_zero()) detail::add_product(acc, dst.at(1, t, v), K.d1()(s, v), m, minus);
        flush();
      }
  // f1 = m at (t, s): -f1 K.d0 into (t, v) of component 0, X.d1 f1 into (u, s) of component 1.
  for (std::size_t t = 0; t < xq1; ++t)
    for (std::size_t s = 0; s < kp1; ++s)
      for (const auto& m : src.at(1, t, s).basis->monomials) {
        for (std::size_t v = 0; v < kp0; ++v)
          if (!K.d0()(s, v).is_zero()) detail::add_product(acc, dst.at(0, t, v), K.d0()(s, v), m, minus);
        for (std::size_t u = 0; u < xq0; ++u)
          if (!X.d1()(u, t).is_zero()) detail::add_product(acc, dst.at(1, u, s), X.d1()(u, t), m, one);
        flush();
      }
  return {src.dim, elim.rank()};
}

/// H[k] = H(q c) or H[1](q c) with k = 2q or 2q + 1.
template <ExactField F>
MatrixFactorization<F> translate_power(const MatrixFactorization<F>& H, std::int64_t k) {
  const std::int64_t q = k >= 0 ? k / 2 : -((-k + 1) / 2);
  const GradingContext& g = H.grading();
  const MatrixFactorization<F> base = (k - 2 * q) ? translate_mf(H) : H;
  return shift_mf(base, g.scale(g.deg_c(), q));
}

template <ExactField F>
void check_same_ring(const MatrixFactorization<F>& K, const MatrixFactorization<F>& H) {
  if (!(K.W() == H.W())) fail(ErrorKind::domain, "factorizations of different polynomials");
  if (K.grading_ptr() != H.grading_ptr() && !same_grading(K.grading(), H.grading()))
    fail(ErrorKind::domain, "factorizations graded by different groups");
}

/// dim Hom(K, H[k]) in the homotopy category of graded factorizations.
template <ExactField F>
std::size_t hom_dim(const MatrixFactorization<F>& K, const MatrixFactorization<F>& H, std::int64_t k,
                    MonomialCache* cache = nullptr) {
  check_same_ring(K, H);
  MonomialCache local(K.grading());
  MonomialCache& mc = cache ? *cache : local;
  ChainStep here = chain_step(K, translate_power(H, k), mc);
  ChainStep before = chain_step(K, translate_power(H, k - 1), mc);
  return here.dim - here.rank - before.rank;
}

/// dims[i][j][k - kmin] = dim Hom(G_i, G_j[k]).
struct ExtTable {
  std::vector<std::string> objects;
  std::int64_t kmin = 0, kmax = -1;
  std::vector<std::vector<std::vector<std::size_t>>> dims;

  std::size_t size() const { return objects.size(); }
  std::size_t at(std::size_t i, std::size_t j, std::int64_t k) const {
    if (k < kmin || k > kmax) return 0;
    return dims.at(i).at(j).at(static_cast<std::size_t>(k - kmin));
  }
  bool operator==(const ExtTable&) const = default;
};

/// Runs fn(0), ..., fn(count - 1) on up to `threads` workers; the first
/// exception is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

template <ExactField F>
ExtTable ext_table(const std::vector<MatrixFactorization<F>>& objects, const std::vector<std::string>& labels,
                   std::int64_t kmin, std::int64_t kmax, unsigned threads = 1) {
  if (labels.size() != objects.size()) fail(ErrorKind::domain, "one label per object required");
  if (kmin > kmax) fail(ErrorKind::domain, "empty shift window");
  for (const auto& K : objects) check_same_ring(objects.front(), K);
  ExtTable t;
  t.objects = labels;
  t.kmin = kmin;
  t.kmax = kmax;
  const std::size_t n = objects.size();
  const auto width = static_cast<std::size_t>(kmax - kmin + 1);
  t.dims.assign(n, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(width, 0)));
  parallel_for(n * n, threads, [&](std::size_t cell) {
    const std::size_t i = cell / n, j = cell % n;
    MonomialCache cache(objects[i].grading());
    std::vector<ChainStep> steps;
    for (std::int64_t k = kmin - 1; k <= kmax; ++k)
      steps.push_back(chain_step(objects[i], translate_power(objects[j], k), cache));
    for (std::size_t w = 0; w < width; ++w) t.dims[i][j][w] = steps[w + 1].dim - steps[w + 1].rank - steps[w].rank;
  });
  return t;
}

/// Sum of dim Hom(E, E[k]) over one period in k, for E the direct sum of
/// K(l), l running over representatives of L / Zc. Each summand pair
/// reduces to h(lambda, e) = dim Hom(K, K(lambda)[e]) with e in {0, 1}.
/// h vanishes below the degree where the chain spaces become non-zero; above,
/// the scan runs to a bound past the dual of that degree and requires the
/// last full period to vanish, failing with a resource error otherwise.
template <ExactField F>
std::size_t periodic_end_total(const MatrixFactorization<F>& K) {
  const GradingContext& g = K.grading();
  MonomialCache cache(g);
  const std::int64_t c = g.deg_c().free[0];
  std::vector<std::int64_t> p;
  for (const auto* m : {&K.P0(), &K.P1()})
    for (const auto& s : m->shifts) p.push_back(s.free[0]);
  // C(K, K(lambda)[e]) needs some target shift minus source shift >= 0; the
  // translated target only adds c to P0 slots.
  const std::int64_t spread = *std::max_element(p.begin(), p.end()) - *std::min_element(p.begin(), p.end());
  const std::int64_t lo = -spread - c;
  std::int64_t sumdeg = 0;
  for (const auto& d : g.deg_x()) sumdeg += d.free[0];
  const std::int64_t a = c - sumdeg;
  const std::int64_t hi = -lo + (a < 0 ? -a : a) + static_cast<std::int64_t>(g.nvars() + 1) * c;

  std::vector<LElement> torsion_classes;
  {
    std::vector<LElement> reps = lbar_representatives(g);
    for (const auto& r : reps)
      if (r.free[0] == 0) torsion_classes.push_back(r);
  }
  std::map<LElement, std::size_t> memo;
  auto h = [&](const LElement& lambda) {
    auto it = memo.find(lambda);
    if (it != memo.end()) return it->second;
    std::size_t v = 0;
    const MatrixFactorization<F> T = shift_mf(K, lambda);
    for (std::int64_t e : {0, 1}) v += hom_dim(K, T, e, &cache);
    memo.emplace(lambda, v);
    return v;
  };
  std::size_t per_class = 0, tail = 0;
  for (std::int64_t f = lo; f <= hi; ++f)
    for (const auto& tc : torsion_classes) {
      LElement lambda = tc;
      lambda.free[0] = f;
      std::size_t v = h(lambda);
      per_class += v;
      if (f > hi - c) tail += v;
    }
  if (tail != 0) fail(ErrorKind::resource, "endomorphism total did not vanish at the end of the scan window");
  // Pairs (l, l') with l' - l + qc = lambda cover every lambda once per l.
  return lbar_representatives(g).size() * per_class;
}

}  // namespace hmskit
