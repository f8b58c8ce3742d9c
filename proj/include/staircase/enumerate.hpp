#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "staircase/errors.hpp"
#include "staircase/rational.hpp"
#include "staircase/tableau.hpp"

namespace staircase {

inline constexpr int kDefaultAbCap = 8;
inline constexpr int kDefaultFourCap = 5;

namespace detail {

inline void check_cap(int n, int cap, const char* what) {
  if (n < 0)
    throw DomainError("n must be nonnegative");
  if (n > cap)
    throw CapExceeded(std::string(what) + " of size " + std::to_string(n) +
                      " refused: cap is " + std::to_string(cap));
  if (n > 62)
    throw CapExceeded("enumeration beyond n = 62 is not supported");
}

/// Subsets of {0..r-1} ordered by size, then by mask value.
inline const std::vector<std::uint64_t>& subsets_by_size(int r) {
  static thread_local std::map<int, std::vector<std::uint64_t>> cache;
  auto it = cache.find(r);
  if (it != cache.end())
    return it->second;
  std::vector<std::uint64_t> v(std::uint64_t{1} << r);
  for (std::uint64_t m = 0; m < v.size(); ++m)
    v[m] = m;
  std::stable_sort(v.begin(), v.end(), [](std::uint64_t x, std::uint64_t y) {
    return std::popcount(x) < std::popcount(y);
  });
  return cache.emplace(r, std::move(v)).first->second;
}

} // namespace detail

/// How one new left column is filled when a size-(m-1) tableau grows to size m.
/// `marked` holds rows (1-based bitmask) among the alpha-indexed rows that receive
/// a symbol above the bottom box.
struct ColumnExtension {
  std::uint64_t marked = 0;
  Symbol top = Symbol::Alpha; ///< symbol in the topmost filled box of the column
};

/// The 2^{r+1} extensions for a given alpha-indexed row set, in stream order:
/// alpha at the bottom; then all-beta columns by number of extra betas; then the
/// columns topped by an alpha over at least one extra row.
inline ColumnExtension extension_at(std::uint64_t alpha_rows, std::size_t index) {
  const int r = std::popcount(alpha_rows);
  const auto& subsets = detail::subsets_by_size(r);
  auto spread = [&](std::uint64_t compact) {
    std::uint64_t out = 0;
    std::uint64_t rows = alpha_rows;
    for (int bit = 0; rows; ++bit) {
      std::uint64_t low = rows & (~rows + 1);
      if (compact >> bit & 1)
        out |= low;
      rows ^= low;
    }
    return out;
  };
  if (index == 0)
    return {0, Symbol::Alpha};
  index -= 1;
  if (index < subsets.size())
    return {spread(subsets[index]), Symbol::Beta};
  index -= subsets.size();
  return {spread(subsets[index + 1]), Symbol::Alpha};
}

inline std::size_t extension_count(std::uint64_t alpha_rows) {
  return std::size_t{2} << std::popcount(alpha_rows);
}

/// Writes extension `e` into column `col` (rows 1..m, bottom box (m, col)) and
/// returns the alpha-indexed row set of the grown tableau.
inline std::uint64_t apply_extension(Tableau& t, int m, int col, std::uint64_t alpha_rows,
                                     const ColumnExtension& e) {
  for (int i = 1; i <= m; ++i)
    t.set(i, col, std::nullopt);
  const std::uint64_t bottom = std::uint64_t{1} << (m - 1);
  if (e.marked == 0) {
    t.set(m, col, e.top);
    return e.top == Symbol::Alpha ? (alpha_rows | bottom) : alpha_rows;
  }
  t.set(m, col, Symbol::Beta);
  const int top_row = std::countr_zero(e.marked) + 1;
  for (std::uint64_t rest = e.marked; rest; rest &= rest - 1) {
    int row = std::countr_zero(rest) + 1;
    t.set(row, col, row == top_row ? e.top : Symbol::Beta);
  }
  std::uint64_t out = alpha_rows & ~e.marked;
  if (e.top == Symbol::Alpha)
    out |= std::uint64_t{1} << (top_row - 1);
  return out;
}

/// All alpha/beta tableaux of size n, each exactly once, built column by column from
/// the right: level m fills column n+1-m, which is the new left column of the
/// size-m subtableau in the top right corner.
class AbTableauStream {
public:
  explicit AbTableauStream(int n, int cap = kDefaultAbCap) : n_(n), t_(std::max(n, 0)) {
    detail::check_cap(n, cap, "alpha/beta enumeration");
    choice_.assign(static_cast<std::size_t>(n) + 1, 0);
    rows_.assign(static_cast<std::size_t>(n) + 1, 0);
  }

  int size() const { return n_; }

  std::optional<Tableau> next() {
    if (done_)
      return std::nullopt;
    if (!started_) {
      started_ = true;
      for (int m = 1; m <= n_; ++m)
        apply(m);
      if (n_ == 0)
        done_ = true;
      return t_;
    }
    int m = n_;
    while (m >= 1 && choice_[m] + 1 >= extension_count(rows_[m - 1]))
      --m;
    if (m < 1) {
      done_ = true;
      return std::nullopt;
    }
    ++choice_[m];
    apply(m);
    for (int k = m + 1; k <= n_; ++k) {
      choice_[k] = 0;
      apply(k);
    }
    return t_;
  }

  /// Rows (bitmask) of the current tableau whose leftmost symbol is alpha.
  std::uint64_t alpha_rows() const { return rows_[n_]; }

private:
  void apply(int m) {
    rows_[m] = apply_extension(t_, m, n_ + 1 - m, rows_[m - 1],
                               extension_at(rows_[m - 1], choice_[m]));
  }

  int n_;
  Tableau t_;
  std::vector<std::size_t> choice_;
  std::vector<std::uint64_t> rows_;
  bool started_ = false;
  bool done_ = false;
};

/// All four-symbol tableaux: every alpha/beta tableau with each subset of its alphas
/// turned into gammas and its betas into deltas.
class FourTableauStream {
public:
  explicit FourTableauStream(int n, int cap = kDefaultFourCap)
      : base_((detail::check_cap(n, cap, "four-symbol enumeration"), n), 64) {}

  std::optional<Tableau> next() {
    while (true) {
      if (current_ && mask_ < (std::uint64_t{1} << cells_.size())) {
        Tableau t = *current_;
        for (std::size_t k = 0; k < cells_.size(); ++k)
          if (mask_ >> k & 1)
            t.set(cells_[k].row, cells_[k].col,
                  cells_[k].sym == Symbol::Alpha ? Symbol::Gamma : Symbol::Delta);
        ++mask_;
        return t;
      }
      current_ = base_.next();
      if (!current_)
        return std::nullopt;
      cells_ = current_->cells();
      mask_ = 0;
    }
  }

private:
  AbTableauStream base_;
  std::optional<Tableau> current_;
  std::vector<Cell> cells_;
  std::uint64_t mask_ = 0;
};

/// Independent oracle: every assignment of {empty, a, b, g, d} to every box, kept
/// if it passes validate. Only feasible for tiny n.
inline std::vector<Tableau> naive_tableaux(int n, bool four_symbols) {
  if (n < 0 || n > 3)
    throw CapExceeded("naive generator supports n <= 3 only");
  Tableau t(n);
  std::vector<std::pair<int, int>> boxes;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n + 1 - i; ++j)
      boxes.emplace_back(i, j);
  const int choices = four_symbols ? 5 : 3;
  std::vector<int> digit(boxes.size(), 0);
  std::vector<Tableau> out;
  while (true) {
    for (std::size_t k = 0; k < boxes.size(); ++k)
      t.set(boxes[k].first, boxes[k].second,
            digit[k] == 0 ? std::nullopt : std::optional<Symbol>(static_cast<Symbol>(digit[k])));
    if (is_valid(t))
      out.push_back(t);
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == choices)
      digit[k++] = 0;
    if (k == digit.size())
      break;
  }
  return out;
}

template <class Stream, class F>
void for_each_tableau(Stream& s, F&& f) {
  while (auto t = s.next())
    f(*t);
}

inline std::uint64_t count_ab(int n, int cap = kDefaultAbCap) {
  AbTableauStream s(n, cap);
  std::uint64_t c = 0;
  for_each_tableau(s, [&](const Tableau&) { ++c; });
  return c;
}

inline std::uint64_t count_four(int n, int cap = kDefaultFourCap) {
  FourTableauStream s(n, cap);
  std::uint64_t c = 0;
  for_each_tableau(s, [&](const Tableau&) { ++c; });
  return c;
}

/// Alpha/beta tableaux with the maximal 2n-1 symbols.
inline std::vector<Tableau> max_symbol_tableaux(int n, int cap = kDefaultAbCap) {
  if (n < 1)
    throw DomainError("maximal tableaux need n >= 1");
  AbTableauStream s(n, cap);
  std::vector<Tableau> out;
  for_each_tableau(s, [&](const Tableau& t) {
    if (counts(t).total() == 2 * n - 1)
      out.push_back(t);
  });
  return out;
}

// --- partition functions -----------------------------------------------------

/// prod_{i<n} (alpha + beta + gamma + delta + i (alpha+gamma)(beta+delta)).
inline Rational z_product(int n, const Rational& alpha, const Rational& beta,
                          const Rational& gamma = 0, const Rational& delta = 0) {
  Rational z = 1;
  const Rational s = alpha + beta + gamma + delta;
  const Rational p = (alpha + gamma) * (beta + delta);
  for (int i = 0; i < n; ++i)
    z *= s + i * p;
  return z;
}

/// Sum of weights over the exhaustive four-symbol enumeration.
inline Rational partition_function(int n, const Rational& alpha, const Rational& beta,
                                   const Rational& gamma, const Rational& delta,
                                   int cap = kDefaultFourCap) {
  for (const Rational* x : {&alpha, &beta, &gamma, &delta})
    require_nonnegative(*x, "weight parameter");
  FourTableauStream s(n, cap);
  // tally exponent vectors first, so each distinct monomial is evaluated once
  std::map<std::array<int, 4>, Integer> tally;
  for_each_tableau(s, [&](const Tableau& t) { ++tally[exponents(t)]; });
  Rational z = 0;
  for (const auto& [e, c] : tally)
    z += Rational(c) * pow(alpha, e[0]) * pow(beta, e[1]) * pow(gamma, e[2]) * pow(delta, e[3]);
  return z;
}

/// Alpha/beta partition function by enumeration.
inline Rational partition_function_ab(int n, const Rational& alpha, const Rational& beta,
                                      int cap = kDefaultAbCap) {
  AbTableauStream s(n, cap);
  std::map<std::pair<int, int>, Integer> tally;
  for_each_tableau(s, [&](const Tableau& t) {
    auto c = counts(t);
    ++tally[{c.n_alpha, c.n_beta}];
  });
  Rational z = 0;
  for (const auto& [e, c] : tally)
    z += Rational(c) * pow(alpha, e.first) * pow(beta, e.second);
  return z;
}

// --- joint generating polynomials ---------------------------------------------

/// Sparse polynomial in two variables with exact rational coefficients, keyed by
/// the exponent pair.
class JointPoly {
public:
  using Key = std::pair<int, int>;

  void add(int i, int j, const Rational& c) {
    Rational& slot = c_[{i, j}];
    slot += c;
    if (slot == 0)
      c_.erase({i, j});
  }

  Rational coeff(int i, int j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? Rational(0) : it->second;
  }

  const std::map<Key, Rational>& terms() const { return c_; }

  Rational evaluate(const Rational& x, const Rational& y) const {
    Rational acc = 0;
    for (const auto& [k, c] : c_)
      acc += c * pow(x, k.first) * pow(y, k.second);
    return acc;
  }

  Rational total() const {
    Rational s = 0;
    for (const auto& [k, c] : c_)
      s += c;
    return s;
  }

  JointPoly normalized() const {
    const Rational s = total();
    if (s == 0)
      throw DomainError("cannot normalize a zero polynomial");
    JointPoly out;
    for (const auto& [k, c] : c_)
      out.c_[k] = c / s;
    return out;
  }

  bool all_nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second >= 0; });
  }

  /// Coefficients of x^i summed over the second exponent.
  std::map<int, Rational> first_marginal() const {
    std::map<int, Rational> m;
    for (const auto& [k, c] : c_)
      m[k.first] += c;
    return m;
  }

  JointPoly operator*(const JointPoly& o) const {
    JointPoly out;
    for (const auto& [k1, c1] : c_)
      for (const auto& [k2, c2] : o.c_)
        out.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return out;
  }

  bool operator==(const JointPoly& o) const { return c_ == o.c_; }

private:
  std::map<Key, Rational> c_;
};

/// D_n(x, z) = sum over alpha/beta tableaux of wt(S) x^{A(S)} z^{r(S)}.
inline JointPoly joint_poly_A_r(int n, const Rational& alpha, const Rational& beta,
                                int cap = kDefaultAbCap) {
  AbTableauStream s(n, cap);
  std::map<std::array<int, 4>, Integer> tally; // (A, r, N_alpha, N_beta)
  for_each_tableau(s, [&](const Tableau& t) {
    auto c = counts(t);
    ++tally[{c.A, c.r, c.n_alpha, c.n_beta}];
  });
  JointPoly d;
  for (const auto& [k, c] : tally)
    d.add(k[0], k[1], Rational(c) * pow(alpha, k[2]) * pow(beta, k[3]));
  return d;
}

/// Weighted tally over (N_alpha, N_beta); unnormalized.
inline JointPoly joint_poly_N(int n, const Rational& alpha, const Rational& beta,
                              int cap = kDefaultAbCap) {
  AbTableauStream s(n, cap);
  std::map<std::pair<int, int>, Integer> tally;
  for_each_tableau(s, [&](const Tableau& t) {
    auto c = counts(t);
    ++tally[{c.n_alpha, c.n_beta}];
  });
  JointPoly p;
  for (const auto& [k, c] : tally)
    p.add(k.first, k.second, Rational(c) * pow(alpha, k.first) * pow(beta, k.second));
  return p;
}

/// prod_{i<n} (alpha x + beta y + i alpha beta x y) / (alpha + beta + i alpha beta),
/// expanded in x^{N_alpha} y^{N_beta}.
inline JointPoly joint_poly_N_product(int n, const Rational& alpha, const Rational& beta) {
  JointPoly acc;
  acc.add(0, 0, 1);
  for (int i = 0; i < n; ++i) {
    const Rational den = alpha + beta + i * alpha * beta;
    JointPoly f;
    f.add(1, 0, alpha / den);
    f.add(0, 1, beta / den);
    f.add(1, 1, i * alpha * beta / den);
    acc = acc * f;
  }
  return acc;
}

} // namespace staircase
