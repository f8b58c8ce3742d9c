#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "staircase/errors.hpp"
#include "staircase/random.hpp"
#include "staircase/rational.hpp"
#include "staircase/tableau.hpp"

namespace staircase {

/// Inverse weights a = 1/alpha, b = 1/beta on [0, inf], plus the tie rule rho used
/// when both are zero (alpha = beta = inf) or both infinite (alpha = beta = 0).
struct Params {
  ExtRational a = ExtRational::finite(1);
  ExtRational b = ExtRational::finite(1);
  Rational rho = Rational(1, 2);

  static Params from_ab(Rational a, Rational b, Rational rho = Rational(1, 2)) {
    return {ExtRational::finite(std::move(a)), ExtRational::finite(std::move(b)), std::move(rho)};
  }
  /// alpha, beta in [0, inf]; 0 and inf map to inf and 0.
  static Params from_weights(const ExtRational& alpha, const ExtRational& beta,
                             Rational rho = Rational(1, 2)) {
    return {alpha.reciprocal(), beta.reciprocal(), std::move(rho)};
  }

  void check() const {
    if (!a.infinite)
      require_nonnegative(a.value, "a");
    if (!b.infinite)
      require_nonnegative(b.value, "b");
    if (rho < 0 || rho > 1)
      throw ParameterError("rho must lie in [0,1], got " + rho.get_str());
  }
};

/// Precomputed per-step coins of the sequential sampler for one (n, params).
///
/// Step m grows the top-right size-(m-1) subtableau to size m by filling column
/// n+1-m in rows 1..m. With b_m = b + n - m, each alpha-indexed row is marked with
/// probability 1/(1+b_m), and the new top symbol is alpha with probability
/// b_m/(a+b_m). Unmarked: the top symbol sits alone in the bottom box. Marked: beta
/// at the bottom, the top symbol in the highest marked row, beta in the others.
class SamplerPlan {
public:
  SamplerPlan(int n, const Params& p) : n_(n), params_(p) {
    p.check();
    if (n < 0)
      throw DomainError("n must be nonnegative");
    if (p.a.infinite || p.b.infinite) {
      // alpha = 0 or beta = 0: only the bare diagonal survives
      mode_ = Mode::Diagonal;
      Rational pa = p.b.infinite ? (p.a.infinite ? p.rho : Rational(1)) : Rational(0);
      diag_alpha_ = ExactBernoulli(pa);
      return;
    }
    const Rational& a = p.a.value;
    mark_.resize(static_cast<std::size_t>(n) + 1);
    top_alpha_.resize(static_cast<std::size_t>(n) + 1);
    for (int m = 1; m <= n; ++m) {
      Rational bm = p.b.value + (n - m);
      mark_[m] = ExactBernoulli(Rational(1) / (1 + bm));
      top_alpha_[m] = ExactBernoulli(a + bm == 0 ? p.rho : bm / (a + bm));
    }
  }

  int size() const { return n_; }
  const Params& params() const { return params_; }

  Tableau sample(Rng& rng) const {
    Tableau t(n_);
    if (mode_ == Mode::Diagonal) {
      for (int i = 1; i <= n_; ++i)
        t.set(i, n_ + 1 - i, diag_alpha_(rng) ? Symbol::Alpha : Symbol::Beta);
      return t;
    }
    std::vector<int> alpha_rows; // ascending
    std::vector<int> marked;
    std::vector<int> keep;
    for (int m = 1; m <= n_; ++m) {
      const int col = n_ + 1 - m;
      marked.clear();
      keep.clear();
      for (int row : alpha_rows)
        (mark_[m](rng) ? marked : keep).push_back(row);
      const Symbol top = top_alpha_[m](rng) ? Symbol::Alpha : Symbol::Beta;
      if (marked.empty()) {
        t.set(m, col, top);
        if (top == Symbol::Alpha)
          alpha_rows.push_back(m);
        continue;
      }
      t.set(m, col, Symbol::Beta);
      t.set(marked.front(), col, top);
      for (std::size_t k = 1; k < marked.size(); ++k)
        t.set(marked[k], col, Symbol::Beta);
      if (top == Symbol::Alpha) {
        keep.push_back(marked.front());
        std::sort(keep.begin(), keep.end());
      }
      alpha_rows.swap(keep);
    }
    return t;
  }

private:
  enum class Mode { Sequential, Diagonal };
  int n_;
  Params params_;
  Mode mode_ = Mode::Sequential;
  ExactBernoulli diag_alpha_;
  std::vector<ExactBernoulli> mark_;
  std::vector<ExactBernoulli> top_alpha_;
};

inline Tableau sample_ab(int n, const Params& p, Rng& rng) { return SamplerPlan(n, p).sample(rng); }

inline Tableau sample_ab(int n, const Params& p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_ab(n, p, rng);
}

/// Four-symbol sampler: an alpha/beta tableau with weights (alpha+gamma, beta+delta),
/// then each alpha becomes gamma w.p. gamma/(alpha+gamma) and each beta becomes
/// delta w.p. delta/(beta+delta).
class FourSamplerPlan {
public:
  FourSamplerPlan(int n, const Rational& alpha, const Rational& beta, const Rational& gamma,
                  const Rational& delta)
      : base_(n, base_params(alpha, beta, gamma, delta)), to_gamma_(gamma / (alpha + gamma)),
        to_delta_(delta / (beta + delta)) {}

  Tableau sample(Rng& rng) const {
    Tableau t = base_.sample(rng);
    for (const Cell& c : t.cells()) {
      if (c.sym == Symbol::Alpha && to_gamma_(rng))
        t.set(c.row, c.col, Symbol::Gamma);
      else if (c.sym == Symbol::Beta && to_delta_(rng))
        t.set(c.row, c.col, Symbol::Delta);
    }
    return t;
  }

private:
  static Params base_params(const Rational& alpha, const Rational& beta, const Rational& gamma,
                            const Rational& delta) {
    for (const Rational* x : {&alpha, &beta, &gamma, &delta})
      require_nonnegative(*x, "weight parameter");
    if (alpha + gamma == 0 || beta + delta == 0)
      throw ParameterError("four-symbol sampling needs alpha+gamma > 0 and beta+delta > 0");
    return Params::from_ab(1 / (alpha + gamma), 1 / (beta + delta));
  }

  SamplerPlan base_;
  ExactBernoulli to_gamma_;
  ExactBernoulli to_delta_;
};

inline Tableau sample_four(int n, const Rational& alpha, const Rational& beta,
                           const Rational& gamma, const Rational& delta, std::uint64_t seed) {
  Rng rng(seed);
  return FourSamplerPlan(n, alpha, beta, gamma, delta).sample(rng);
}

// --- urn -----------------------------------------------------------------------

struct UrnPath {
  int A = 0;               ///< white balls added
  int B = 0;               ///< black balls added
  std::vector<bool> white; ///< white[k]: the k-th draw was white (so a black ball was added)
};

/// Friedman urn started from weights (a, b): each draw adds one ball of the other
/// colour. With a = b = 0 the first draw is a fair coin.
class UrnPlan {
public:
  UrnPlan(int n, const Rational& a, const Rational& b) : n_(n), a_(a), b_(b) {
    require_nonnegative(a, "a");
    require_nonnegative(b, "b");
    if (n < 0)
      throw DomainError("n must be nonnegative");
  }

  UrnPath run(Rng& rng) const {
    UrnPath p;
    p.white.reserve(n_);
    for (int k = 0; k < n_; ++k) {
      Rational total = a_ + b_ + k;
      Rational pw = total == 0 ? Rational(1, 2) : (a_ + p.A) / total;
      bool w = bernoulli(rng, pw);
      p.white.push_back(w);
      if (w)
        ++p.B;
      else
        ++p.A;
    }
    return p;
  }

private:
  int n_;
  Rational a_, b_;
};

/// Exact law of A_n from the urn transition probabilities, no sampling:
/// P_{k+1}(j) = P_k(j) (a+j)/(a+b+k) + P_k(j-1) (b+k-j+1)/(a+b+k).
inline std::vector<Rational> urn_law(int n, const Rational& a, const Rational& b) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (n < 0)
    throw DomainError("n must be nonnegative");
  std::vector<Rational> p{Rational(1)};
  for (int k = 0; k < n; ++k) {
    const Rational total = a + b + k;
    std::vector<Rational> q(k + 2, Rational(0));
    for (int j = 0; j <= k; ++j) {
      if (p[j] == 0)
        continue;
      Rational stay = total == 0 ? Rational(1, 2) : (a + j) / total;
      q[j] += p[j] * stay;
      q[j + 1] += p[j] * (1 - stay);
    }
    p.swap(q);
  }
  return p;
}

inline UrnPath urn_sample(int n, const Rational& a, const Rational& b, std::uint64_t seed) {
  Rng rng(seed);
  return UrnPlan(n, a, b).run(rng);
}

// --- batches -------------------------------------------------------------------

inline constexpr std::size_t kShardSize = 1024;

/// Runs fn(rng, begin, end) over fixed-size shards of [0, count). Shard k always
/// gets Rng::for_shard(seed, k), so results do not depend on the worker count.
template <class F>
void run_shards(std::size_t count, std::uint64_t seed, unsigned workers, F&& fn) {
  const std::size_t shards = (count + kShardSize - 1) / kShardSize;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(shards, 1))));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < shards;) {
      Rng rng = Rng::for_shard(seed, k);
      fn(rng, k * kShardSize, std::min(count, (k + 1) * kShardSize));
    }
  };
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(work);
  for (auto& th : pool)
    th.join();
}

struct TableauSummary {
  int A = 0;
  int B = 0;
  int n_alpha = 0;
  int n_beta = 0;
  int r = 0;
  std::string diagonal; ///< diagonal symbols by row, e.g. "aab"

  bool operator==(const TableauSummary&) const = default;
};

inline TableauSummary summarize(const Tableau& t) {
  SymbolCounts c = counts(t);
  TableauSummary s{c.A, c.B, c.n_alpha, c.n_beta, c.r, {}};
  for (int i = 1; i <= t.size(); ++i)
    s.diagonal.push_back(symbol_letter(*t.at(i, t.size() + 1 - i)));
  return s;
}

/// Exact running sums of A; merging two stats is addition.
struct BatchStats {
  std::uint64_t count = 0;
  Integer sum_A = 0;
  Integer sum_A2 = 0;

  void add(const TableauSummary& s) {
    ++count;
    sum_A += s.A;
    sum_A2 += s.A * s.A;
  }
  BatchStats& merge(const BatchStats& o) {
    count += o.count;
    sum_A += o.sum_A;
    sum_A2 += o.sum_A2;
    return *this;
  }
  Rational mean_A() const { return ratio(sum_A, count); }
  /// Unbiased sample variance.
  Rational var_A() const {
    if (count < 2)
      return 0;
    Rational m = mean_A();
    return (Rational(sum_A2) - m * m * count) / (count - 1);
  }
};

template <class Plan>
std::vector<Tableau> sample_many(const Plan& plan, std::size_t count, std::uint64_t seed,
                                 unsigned workers = 1) {
  std::vector<Tableau> out(count);
  run_shards(count, seed, workers, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k)
      out[k] = plan.sample(rng);
  });
  return out;
}

struct Batch {
  std::vector<TableauSummary> samples;
  BatchStats stats;
};

inline Batch sample_batch(int n, const Params& p, std::uint64_t seed, std::size_t count,
                          unsigned workers = 1) {
  if (count < 1)
    throw DomainError("batch needs at least one sample");
  SamplerPlan plan(n, p);
  Batch b;
  b.samples.resize(count);
  run_shards(count, seed, workers, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k)
      b.samples[k] = summarize(plan.sample(rng));
  });
  for (const auto& s : b.samples)
    b.stats.add(s);
  return b;
}

} // namespace staircase
