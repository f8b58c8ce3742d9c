#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "staircase/enumerate.hpp"
#include "staircase/errors.hpp"
#include "staircase/eulerian.hpp"
#include "staircase/rational.hpp"
#include "staircase/sampler.hpp"
#include "staircase/tableau.hpp"

namespace staircase {

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

/// Pearson chi-square of observed counts against exact cell probabilities (same
/// order). Cells expecting fewer than `min_expected` hits are pooled into one cell.
/// A nonzero count on a zero-probability cell gives p = 0.
inline ChiSquare chi_square(const std::vector<Rational>& probs,
                            const std::vector<std::uint64_t>& observed, double min_expected = 5) {
  if (probs.size() != observed.size())
    throw DomainError("chi-square needs one count per cell");
  std::uint64_t total = 0;
  for (auto o : observed)
    total += o;
  ChiSquare r;
  int cells = 0;
  double pool_e = 0, pool_o = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] == 0) {
      if (observed[k] != 0)
        return {std::numeric_limits<double>::infinity(), 0, 0.0};
      continue;
    }
    const double e = to_double(probs[k]) * static_cast<double>(total);
    if (e < min_expected) {
      pool_e += e;
      pool_o += static_cast<double>(observed[k]);
      continue;
    }
    ++cells;
    const double d = static_cast<double>(observed[k]) - e;
    r.statistic += d * d / e;
  }
  if (pool_e > 0) {
    ++cells;
    r.statistic += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
  }
  r.dof = cells - 1;
  r.p_value = r.dof <= 0 ? 1.0 : boost::math::gamma_q(r.dof / 2.0, r.statistic / 2.0);
  return r;
}

/// Chi-square for laws keyed by arbitrary values (e.g. tableau keys). Observed keys
/// outside the support make the test fail outright.
template <class K>
ChiSquare chi_square(const std::map<K, Rational>& law, const std::map<K, std::uint64_t>& observed) {
  std::vector<Rational> p;
  std::vector<std::uint64_t> o;
  for (const auto& [k, q] : law) {
    p.push_back(q);
    auto it = observed.find(k);
    o.push_back(it == observed.end() ? 0 : it->second);
  }
  for (const auto& [k, c] : observed)
    if (!law.contains(k) && c > 0)
      return {std::numeric_limits<double>::infinity(), 0, 0.0};
  return chi_square(p, o);
}

/// Finitely supported law on offset, offset+1, ... with exact probabilities.
class DiscreteDist {
public:
  DiscreteDist() = default;
  DiscreteDist(int offset, std::vector<Rational> p) : offset_(offset), p_(std::move(p)) {}

  static DiscreteDist point(int k) { return DiscreteDist(k, {Rational(1)}); }

  int offset() const { return offset_; }
  int max_value() const { return offset_ + static_cast<int>(p_.size()) - 1; }
  const std::vector<Rational>& probs() const { return p_; }

  Rational operator()(int k) const {
    if (k < offset_ || k > max_value())
      return 0;
    return p_[k - offset_];
  }

  Rational total() const { return raw_moment(0); }
  Rational mean() const { return raw_moment(1); }
  Rational variance() const {
    Rational m = mean();
    return raw_moment(2) - m * m;
  }

  /// sum_k k^r p_k, accumulated over a common denominator (much cheaper than
  /// repeated rational addition when denominators are large).
  Rational raw_moment(int r) const {
    Integer den = 1;
    for (const auto& q : p_)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    Integer num = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (p_[i] == 0)
        continue;
      Integer kr = 1;
      for (int e = 0; e < r; ++e)
        kr *= offset_ + static_cast<long>(i);
      num += kr * p_[i].get_num() * (den / p_[i].get_den());
    }
    return ratio(num, den);
  }

  DiscreteDist shifted(int by) const { return DiscreteDist(offset_ + by, p_); }

  /// Same law with leading and trailing zero cells removed.
  DiscreteDist trimmed() const {
    std::size_t lo = 0, hi = p_.size();
    while (lo < hi && p_[lo] == 0)
      ++lo;
    while (hi > lo && p_[hi - 1] == 0)
      --hi;
    return DiscreteDist(offset_ + static_cast<int>(lo),
                        std::vector<Rational>(p_.begin() + lo, p_.begin() + hi));
  }

  Rational total_variation(const DiscreteDist& o) const {
    const int lo = std::min(offset_, o.offset_);
    const int hi = std::max(max_value(), o.max_value());
    Rational s = 0;
    for (int k = lo; k <= hi; ++k)
      s += abs((*this)(k) - o(k));
    return s / 2;
  }

  bool is_log_concave() const {
    for (std::size_t k = 1; k + 1 < p_.size(); ++k)
      if (p_[k] * p_[k] < p_[k - 1] * p_[k + 1])
        return false;
    return true;
  }

  /// Nondecreasing then nonincreasing.
  bool is_unimodal() const {
    std::size_t k = 1;
    while (k < p_.size() && p_[k] >= p_[k - 1])
      ++k;
    while (k < p_.size() && p_[k] <= p_[k - 1])
      ++k;
    return k >= p_.size();
  }

  ChiSquare chi_square_against(const std::vector<std::uint64_t>& counts_by_value) const {
    // counts_by_value[k] counts the value k; values outside the support must be 0
    std::vector<Rational> probs;
    std::vector<std::uint64_t> obs;
    const int hi = std::max(max_value(), static_cast<int>(counts_by_value.size()) - 1);
    for (int k = std::min(offset_, 0); k <= hi; ++k) {
      probs.push_back((*this)(k));
      obs.push_back(k >= 0 && k < static_cast<int>(counts_by_value.size()) ? counts_by_value[k] : 0);
    }
    return chi_square(probs, obs);
  }

  /// Equality of laws, ignoring zero padding.
  bool operator==(const DiscreteDist& o) const {
    DiscreteDist x = trimmed(), y = o.trimmed();
    return x.offset_ == y.offset_ && x.p_ == y.p_;
  }

private:
  int offset_ = 0;
  std::vector<Rational> p_;
};

// --- law of A ------------------------------------------------------------------

/// Law of A read off row n of a stored triangle (a + b > 0).
inline DiscreteDist dist_A(const EulerTriangle& t, int n) {
  const auto& row = t.scaled_row(n);
  Integer total = 0;
  for (const auto& w : row)
    total += w;
  if (total == 0)
    throw DomainError("a = b = 0 needs the tilde law");
  std::vector<Rational> p;
  for (const auto& w : row)
    p.push_back(ratio(w, total));
  return DiscreteDist(0, std::move(p));
}

/// P(A = k) = v_{a,b}(n,k) / (a+b)^{rise n}; for a = b = 0 (n >= 2) the tilde
/// numbers over (n-1)! are used instead.
inline DiscreteDist dist_A(int n, const Rational& a, const Rational& b) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (n < 0)
    throw DomainError("n must be nonnegative");
  if (a == 0 && b == 0) {
    if (n < 2)
      throw DomainError("the a = b = 0 law of A needs n >= 2");
    // tilde_v(n, k) = v_{1,1}(n-2, k-1), summing to (n-1)!
    EulerRowStream row(1, 1);
    row.advance_to(n - 2);
    std::vector<Rational> p(n + 1, Rational(0));
    const Rational f(factorial(n - 1));
    for (int k = 1; k < n; ++k)
      p[k] = row.value(k - 1) / f;
    return DiscreteDist(0, std::move(p));
  }
  return dist_A(EulerTriangle(n, a, b), n);
}

/// Law of A with possibly infinite a or b: a = inf (alpha = 0) forces A = 0,
/// b = inf forces A = n, and both infinite give Binomial(n, rho).
inline DiscreteDist dist_A(int n, const Params& p) {
  p.check();
  if (!p.a.infinite && !p.b.infinite)
    return dist_A(n, p.a.value, p.b.value);
  if (!p.a.infinite)
    return DiscreteDist::point(n);
  if (!p.b.infinite)
    return DiscreteDist::point(0);
  std::vector<Rational> q;
  for (int k = 0; k <= n; ++k) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    q.push_back(Rational(c) * pow(p.rho, k) * pow(1 - p.rho, n - k));
  }
  return DiscreteDist(0, std::move(q));
}

struct Moments {
  Rational mean;
  Rational variance;
  bool operator==(const Moments&) const = default;
};

/// Mean and variance of the law proportional to the integer weights w_0..w_n.
inline Moments row_moments(const std::vector<Integer>& w) {
  Integer s0 = 0, s1 = 0, s2 = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Integer kk = static_cast<unsigned long>(k);
    s0 += w[k];
    s1 += kk * w[k];
    s2 += kk * kk * w[k];
  }
  if (s0 == 0)
    throw DomainError("zero total weight");
  Rational m = ratio(s1, s0);
  return {m, ratio(s2, s0) - m * m};
}

/// Closed forms for E A and Var A.
inline Moments moments_A(int n, const Rational& a, const Rational& b) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (n < 0)
    throw DomainError("n must be nonnegative");
  if (n == 0)
    return {0, 0};
  const Rational s = a + b;
  if (n == 1) {
    if (s == 0)
      throw DomainError("a = b = 0 needs n >= 2");
    return {b / s, a * b / (s * s)};
  }
  const Rational d1 = n + s - 1;
  const Rational d2 = n + s - 2;
  Moments m;
  m.mean = Rational(n) * (n + 2 * b - 1) / (2 * d1);
  if (d2 == 0) {
    m.variance = 0; // n = 2, a = b = 0: A = 1
    return m;
  }
  Rational num = Rational(n - 1) * (n - 2) * (n + 4 * s - 1) + 6 * Rational(n - 1) * s * s +
                 12 * a * b * (s - 1);
  m.variance = Rational(n) * num / (12 * d1 * d1 * d2);
  return m;
}

// --- Bernoulli decomposition ------------------------------------------------------

struct BernoulliDecomp {
  std::vector<double> p;  ///< success probabilities, one per step
  std::vector<double> xi; ///< xi_i with roots -xi_i; +inf for p = 0
  /// Convolution of the Bernoulli laws, P(sum = k) for k = 0..n.
  std::vector<double> reconstruct() const {
    std::vector<double> d{1.0};
    for (double q : p) {
      std::vector<double> nd(d.size() + 1, 0.0);
      for (std::size_t k = 0; k < d.size(); ++k) {
        nd[k] += d[k] * (1 - q);
        nd[k + 1] += d[k] * q;
      }
      d.swap(nd);
    }
    return d;
  }
  double sum() const {
    double s = 0;
    for (double q : p)
      s += q;
    return s;
  }
  double total_variation(const DiscreteDist& law) const {
    auto r = reconstruct();
    double s = 0;
    const int hi = std::max(static_cast<int>(r.size()) - 1, law.max_value());
    for (int k = std::min(0, law.offset()); k <= hi; ++k) {
      double x = (k >= 0 && k < static_cast<int>(r.size())) ? r[k] : 0.0;
      s += std::abs(x - to_double(law(k)));
    }
    return s / 2;
  }
};

namespace detail {

/// Sign of sum_k c[k] x^k at x = num/den (den > 0), evaluated exactly on the
/// homogenized form den^d P(num/den).
inline int poly_sign(const std::vector<Integer>& c, const Rational& x) {
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = c.back();
  Integer dpow = 1;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dpow *= den;
    acc = acc * num + c[k] * dpow;
  }
  return sgn(acc);
}

/// A dyadic rational in [lo, hi] near the midpoint; keeps denominators short as the
/// ladder climbs.
inline Rational dyadic_inside(const Rational& lo, const Rational& hi) {
  const Rational width = hi - lo;
  if (width == 0)
    return lo;
  Integer q = 2 * width.get_den() / width.get_num() + 1; // q > 2 / width
  const std::size_t k = mpz_sizeinbase(q.get_mpz_t(), 2);
  const Rational mid = (lo + hi) / 2;
  Integer scaled = mid.get_num();
  scaled <<= k;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_mpz_t(), mid.get_den_mpz_t());
  Integer den = 1;
  den <<= k;
  Rational r(fl, den);
  r.canonicalize();
  return r;
}

/// Roots of a real-rooted polynomial with integer coefficients whose roots interlace
/// with `prev_roots` (roots of the previous ladder member), all negative.
inline std::vector<Rational> interlaced_roots(const std::vector<Integer>& c,
                                              const std::vector<Rational>& prev_roots) {
  const std::size_t d = c.size() - 1;
  // Cauchy bound 1 + max |c_k / c_d|, rounded up to a power of two
  Rational bound = 0;
  for (std::size_t k = 0; k < d; ++k)
    bound = std::max(bound, Rational(Rational(abs(c[k])) / abs(c[d])));
  Integer pw = 1;
  while (Rational(pw) < bound + 1)
    pw *= 2;
  std::vector<Rational> ends{Rational(-pw)};
  for (const auto& r : prev_roots)
    ends.push_back(r);
  ends.push_back(Rational(0));
  if (ends.size() != d + 1)
    throw NumericalFailure("interlacing ladder lost track of the root count");
  const Rational tol(1, Integer("10000000000000"));
  std::vector<Rational> roots;
  for (std::size_t i = 0; i < d; ++i) {
    Rational lo = ends[i], hi = ends[i + 1];
    int slo = poly_sign(c, lo), shi = poly_sign(c, hi);
    if (slo == 0 || shi == 0 || slo == shi)
      throw NumericalFailure("no sign change on bracket " + std::to_string(i) + " of degree " +
                             std::to_string(d));
    while (hi - lo > tol * abs(hi) && hi - lo > tol * abs(lo)) {
      Rational mid = (lo + hi) / 2;
      int sm = poly_sign(c, mid);
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      (sm == slo ? lo : hi) = mid;
    }
    roots.push_back(dyadic_inside(lo, hi));
  }
  return roots;
}

} // namespace detail

/// Writes A as a sum of independent Bernoulli(p_i) through the negative real roots
/// of P_{n,a,b}. Degenerate parameters are reduced first: b = 0 drops a degree and
/// contributes p = 0, a = 0 contributes a root at 0 (p = 1).
inline BernoulliDecomp bernoulli_decomposition(int n, Rational a, Rational b) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (n < 0)
    throw DomainError("n must be nonnegative");
  BernoulliDecomp out;
  const double inf = std::numeric_limits<double>::infinity();
  if (a == 0 && b == 0) {
    if (n < 2)
      throw DomainError("a = b = 0 needs n >= 2");
    out.p.push_back(1);
    out.xi.push_back(0);
    n -= 2;
    a = b = 1;
    out.p.push_back(0); // the extra step of the tilde law never succeeds
    out.xi.push_back(inf);
  }
  while (n > 0 && (a == 0 || b == 0)) {
    if (b == 0) {
      out.p.push_back(0);
      out.xi.push_back(inf);
      b = 1;
    } else {
      out.p.push_back(1);
      out.xi.push_back(0);
      a = 1;
    }
    --n;
  }
  if (n == 0)
    return out;
  EulerRowStream s(a, b);
  std::vector<Rational> roots{-a / b};
  s.advance();
  for (int m = 2; m <= n; ++m) {
    s.advance();
    roots = detail::interlaced_roots(s.scaled_row(), roots);
  }
  for (const auto& r : roots) {
    double x = -to_double(r);
    out.xi.push_back(x);
    out.p.push_back(1.0 / (1.0 + x));
  }
  return out;
}

// --- N_alpha, N_beta ------------------------------------------------------------

/// Law of the i-th independent pair (I_i, J_i); N_alpha = sum I_i, N_beta = sum J_i.
struct PairLaw {
  Rational p10, p01, p11;
};

inline std::vector<PairLaw> dist_N_pairs(int n, const Rational& a, const Rational& b) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  std::vector<PairLaw> out;
  for (int i = 0; i < n; ++i) {
    const Rational d = a + b + i;
    if (d == 0)
      out.push_back({Rational(1, 2), Rational(1, 2), Rational(0)});
    else
      out.push_back({b / d, a / d, i / d});
  }
  return out;
}

/// Joint law of (N_alpha, N_beta) as a polynomial in x^{N_alpha} y^{N_beta}.
inline JointPoly joint_law_N(int n, const Rational& a, const Rational& b) {
  JointPoly acc;
  acc.add(0, 0, 1);
  for (const auto& pr : dist_N_pairs(n, a, b)) {
    JointPoly f;
    f.add(1, 0, pr.p10);
    f.add(0, 1, pr.p01);
    f.add(1, 1, pr.p11);
    acc = acc * f;
  }
  return acc;
}

struct NMoments {
  Rational mean_alpha;
  Rational var_alpha;
  Rational mean_beta;
  Rational var_beta;
  Rational cov;
};

inline NMoments moments_N(int n, const Rational& a, const Rational& b) {
  NMoments m{0, 0, 0, 0, 0};
  for (const auto& pr : dist_N_pairs(n, a, b)) {
    const Rational qa = pr.p01; // P(I = 0)
    const Rational qb = pr.p10; // P(J = 0)
    m.mean_alpha += 1 - qa;
    m.var_alpha += qa * (1 - qa);
    m.mean_beta += 1 - qb;
    m.var_beta += qb * (1 - qb);
    m.cov -= qa * qb;
  }
  return m;
}

// --- positions ------------------------------------------------------------------

/// Row index of the diagonal box in column j.
inline int diag_row_of_column(int n, int j) { return n + 1 - j; }
inline int diag_column_of_row(int n, int i) { return n + 1 - i; }

/// P(diagonal box of row i holds alpha) = (n-i+b)/(n+a+b-1).
inline Rational diag_prob(int n, const Rational& a, const Rational& b, int i) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (i < 1 || i > n)
    throw DomainError("diagonal row " + std::to_string(i) + " outside 1.." + std::to_string(n));
  const Rational d = n + a + b - 1;
  if (d == 0)
    throw DomainError("a = b = 0 with n = 1 has no rho-free law");
  return (n - i + b) / d;
}

struct CellProb {
  Rational alpha;
  Rational beta;
  Rational filled;
  bool operator==(const CellProb&) const = default;
};

/// Occupation probabilities of the non-diagonal box (i, j), i + j <= n.
inline CellProb cell_prob(int n, const Rational& a, const Rational& b, int i, int j) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (i < 1 || j < 1 || i + j > n)
    throw DomainError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                      ") is not a non-diagonal box of size " + std::to_string(n));
  const Rational d1 = i + j + a + b - 1;
  const Rational d2 = i + j + a + b - 2;
  if (d2 == 0) // a = b = 0 at (1,1)
    return {Rational(1, 2), Rational(1, 2), Rational(1)};
  return {(j - 1 + b) / (d1 * d2), (i - 1 + a) / (d1 * d2), 1 / d1};
}

/// P(the diagonal boxes in columns j_1 < ... < j_l all hold alpha).
inline Rational joint_diag_alpha(int n, const Rational& a, const Rational& b,
                                 const std::vector<int>& columns) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] < 1 || columns[k] > n)
      throw DomainError("diagonal column out of range");
    if (k > 0 && columns[k] <= columns[k - 1])
      throw DomainError("diagonal columns must be strictly increasing");
  }
  Rational p = 1;
  for (std::size_t k = 1; k <= columns.size(); ++k)
    if (columns[k - 1] - static_cast<int>(k) + b == 0)
      return 0;
  for (std::size_t k = 1; k <= columns.size(); ++k) {
    const Rational d = n - static_cast<int>(k) + a + b;
    if (d == 0)
      throw DomainError("a = b = 0 with n = 1 has no rho-free law");
    p *= (columns[k - 1] - static_cast<int>(k) + b) / d;
  }
  return p;
}

/// Cov of the alpha indicators of the diagonal boxes in columns j < k.
inline Rational diag_cov(int n, const Rational& a, const Rational& b, int j, int k) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (j < 1 || k > n || j >= k)
    throw DomainError("diag_cov needs 1 <= j < k <= n");
  const Rational s = n + a + b;
  const Rational den = (s - 1) * (s - 1) * (s - 2);
  const Rational num = (j - 1 + b) * (n - k + a);
  if (den == 0) // n = 2, a = b = 0: the diagonal is deterministic up to the (1,1) box
    return 0;
  return -num / den;
}

// --- exact tableau laws -----------------------------------------------------------

using TableauLaw = std::map<std::string, Rational>; // keyed by Tableau::key()

/// Exact law of S_{n,alpha,beta} by enumeration, weights a^{n-N_alpha} b^{n-N_beta}
/// (proportional to alpha^{N_alpha} beta^{N_beta}, and finite at a = 0 or b = 0).
/// For a = b = 0 it is the maximal-tableau law with rho on box (1,1).
inline TableauLaw tableau_law(int n, const Rational& a, const Rational& b,
                              const Rational& rho = Rational(1, 2), int cap = kDefaultAbCap) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  TableauLaw law;
  Rational total = 0;
  AbTableauStream s(n, cap);
  const bool limit = (a == 0 && b == 0);
  for_each_tableau(s, [&](const Tableau& t) {
    auto c = counts(t);
    Rational w;
    if (limit) {
      if (c.total() != 2 * n - 1)
        return;
      w = *t.at(1, 1) == Symbol::Alpha ? rho : 1 - rho;
    } else {
      w = pow(a, n - c.n_alpha) * pow(b, n - c.n_beta);
    }
    if (w == 0)
      return;
    law[t.key()] += w;
    total += w;
  });
  for (auto& [k, p] : law)
    p /= total;
  return law;
}

struct SubLawReport {
  bool equal = false;
  std::size_t support = 0;
  std::string first_difference; ///< empty when equal
};

/// Compares the law of the subtableau S[i,j] with S_{n-i-j+2, a+i-1, b+j-1}.
inline SubLawReport subtableau_law_check(int n, const Rational& a, const Rational& b, int i, int j,
                                         int cap = kDefaultAbCap) {
  if (i < 1 || j < 1 || i + j > n + 1)
    throw DomainError("subtableau corner outside the shape");
  const int m = n - i - j + 2;
  TableauLaw sub;
  {
    TableauLaw full = tableau_law(n, a, b, Rational(1, 2), cap);
    AbTableauStream s(n, cap);
    for_each_tableau(s, [&](const Tableau& t) {
      auto it = full.find(t.key());
      if (it != full.end())
        sub[subtableau(t, i, j).key()] += it->second;
    });
  }
  TableauLaw target = tableau_law(m, a + i - 1, b + j - 1, Rational(1, 2), cap);
  SubLawReport r;
  r.support = sub.size();
  r.equal = (sub == target);
  if (!r.equal) {
    for (const auto& [k, p] : sub) {
      auto it = target.find(k);
      if (it == target.end() || it->second != p) {
        r.first_difference = k + ": " + p.get_str() + " vs " +
                             (it == target.end() ? std::string("0") : it->second.get_str());
        break;
      }
    }
    if (r.first_difference.empty())
      for (const auto& [k, p] : target)
        if (!sub.contains(k)) {
          r.first_difference = k + ": 0 vs " + p.get_str();
          break;
        }
  }
  return r;
}

// --- limit diagnostics --------------------------------------------------------------

struct CltReport {
  int n = 0;
  double mean = 0;
  double sd = 0;
  double ks_to_normal = 0;
  double llt_max_residual = 0;
};

inline double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Kolmogorov distance of the standardized exact law of A to N(0,1), and the scaled
/// local residual max_k |P(A=k) - sqrt(6/(pi n)) exp(-6(k-n/2)^2/n)| sqrt(n).
inline CltReport clt_diagnostics(int n, const Rational& a, const Rational& b) {
  if (n < 10)
    throw DomainError("CLT diagnostics need n >= 10");
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  std::vector<double> p;
  if (a == 0 && b == 0) {
    for (const auto& q : dist_A(n, a, b).probs())
      p.push_back(to_double(q));
  } else {
    EulerRowStream s(a, b);
    s.advance_to(n);
    Integer total = 0;
    for (const auto& w : s.scaled_row())
      total += w;
    for (const auto& w : s.scaled_row())
      p.push_back(ratio_to_double(w, total));
  }
  Moments m = moments_A(n, a, b);
  CltReport r;
  r.n = n;
  r.mean = to_double(m.mean);
  r.sd = std::sqrt(to_double(m.variance));
  double cdf = 0;
  const double c = std::sqrt(6.0 / (std::numbers::pi * n));
  for (int k = 0; k <= n; ++k) {
    const double z = (k - r.mean) / r.sd;
    const double phi = standard_normal_cdf(z);
    r.ks_to_normal = std::max(r.ks_to_normal, std::abs(cdf - phi)); // left limit
    cdf += p[k];
    r.ks_to_normal = std::max(r.ks_to_normal, std::abs(cdf - phi));
    const double dk = k - n / 2.0;
    const double local = c * std::exp(-6.0 * dk * dk / n);
    r.llt_max_residual = std::max(r.llt_max_residual, std::abs(p[k] - local) * std::sqrt(double(n)));
  }
  return r;
}

struct GrowthRow {
  int n = 0;
  NMoments exact;
  double mean_deviation = 0; ///< E N_alpha - (n - a log n)
  double var_deviation = 0;  ///< Var N_alpha - a log n
};

inline std::vector<GrowthRow> n_alpha_growth_check(const std::vector<int>& ns, const Rational& a,
                                                   const Rational& b) {
  std::vector<GrowthRow> out;
  for (int n : ns) {
    if (n < 1)
      throw DomainError("n must be positive");
    GrowthRow g;
    g.n = n;
    g.exact = moments_N(n, a, b);
    const double al = to_double(a) * std::log(double(n));
    g.mean_deviation = to_double(g.exact.mean_alpha - n) + al;
    g.var_deviation = to_double(g.exact.var_alpha) - al;
    out.push_back(g);
  }
  return out;
}

} // namespace staircase
