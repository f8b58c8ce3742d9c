#pragma once

#include <algorithm>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "staircase/errors.hpp"
#include "staircase/rational.hpp"

namespace staircase {

// ---------------------------------------------------------------------------
// Generalized Eulerian numbers v_{a,b}(n,k):
//   v(0,0) = 1,  v(n,k) = (k + a) v(n-1,k) + (n - k + b) v(n-1,k-1).
// All arithmetic is exact. For rational a = A/D, b = B/D the kernel runs on the
// integers W(n,k) = D^n v(n,k), which obey the same recursion with integer
// multipliers (D k + A) and (D (n-k) + B).
// ---------------------------------------------------------------------------

struct ScaledParams {
  Integer denom = 1; ///< common denominator D
  Integer a_num = 0; ///< D * a
  Integer b_num = 0; ///< D * b

  ScaledParams() = default;
  ScaledParams(const Rational& a, const Rational& b) {
    require_nonnegative(a, "a");
    require_nonnegative(b, "b");
    mpz_lcm(denom.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    a_num = a.get_num() * (denom / a.get_den());
    b_num = b.get_num() * (denom / b.get_den());
  }

  Rational a() const { return ratio(a_num, denom); }
  Rational b() const { return ratio(b_num, denom); }
};

/// Row-by-row generator of the scaled triangle; keeps only the current row, so it
/// handles n far beyond what a stored triangle could.
class EulerRowStream {
public:
  EulerRowStream(const Rational& a, const Rational& b) : p_(a, b), row_{Integer(1)}, scale_(1) {}

  int n() const { return n_; }

  /// Moves from row n to row n + 1.
  void advance() {
    const int n = n_ + 1;
    std::vector<Integer> next(static_cast<std::size_t>(n) + 1);
    Integer mult;
    for (int k = 0; k <= n; ++k) {
      Integer& out = next[k];
      if (k <= n - 1) {
        mult = p_.denom * k + p_.a_num;
        out = mult * row_[k];
      }
      if (k >= 1) {
        mult = p_.denom * (n - k) + p_.b_num;
        out += mult * row_[k - 1];
      }
    }
    row_.swap(next);
    scale_ *= p_.denom;
    n_ = n;
  }

  void advance_to(int n) {
    while (n_ < n)
      advance();
  }

  /// D^n v(n, k) for k = 0..n.
  const std::vector<Integer>& scaled_row() const { return row_; }
  /// D^n.
  const Integer& scale() const { return scale_; }

  Rational value(int k) const {
    if (k < 0 || k > n_)
      return 0;
    Rational q(row_[k], scale_);
    q.canonicalize();
    return q;
  }

  std::vector<Rational> row() const {
    std::vector<Rational> out;
    out.reserve(row_.size());
    for (int k = 0; k <= n_; ++k)
      out.push_back(value(k));
    return out;
  }

  const ScaledParams& params() const { return p_; }

private:
  ScaledParams p_;
  int n_ = 0;
  std::vector<Integer> row_;
  Integer scale_;
};

/// Stored triangle v_{a,b}(n,k), 0 <= k <= n <= n_max.
class EulerTriangle {
public:
  EulerTriangle(int n_max, const Rational& a, const Rational& b) : a_(a), b_(b), n_max_(n_max) {
    if (n_max < 0)
      throw DomainError("n_max must be nonnegative");
    EulerRowStream s(a, b);
    rows_.push_back(s.scaled_row());
    scales_.push_back(s.scale());
    for (int n = 1; n <= n_max; ++n) {
      s.advance();
      rows_.push_back(s.scaled_row());
      scales_.push_back(s.scale());
    }
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  int n_max() const { return n_max_; }

  /// v(n,k); zero outside 0 <= k <= n.
  Rational v(int n, int k) const {
    check_row(n);
    if (k < 0 || k > n)
      return 0;
    Rational q(rows_[n][k], scales_[n]);
    q.canonicalize();
    return q;
  }

  std::vector<Rational> row(int n) const {
    std::vector<Rational> out;
    for (int k = 0; k <= n; ++k)
      out.push_back(v(n, k));
    return out;
  }

  /// Integer row D^n v(n, .); same ratios as the rational row.
  const std::vector<Integer>& scaled_row(int n) const {
    check_row(n);
    return rows_[n];
  }
  const Integer& scale(int n) const {
    check_row(n);
    return scales_[n];
  }

  Rational row_sum(int n) const {
    check_row(n);
    Integer s = 0;
    for (const Integer& w : rows_[n])
      s += w;
    Rational q(s, scales_[n]);
    q.canonicalize();
    return q;
  }

private:
  void check_row(int n) const {
    if (n < 0 || n > n_max_)
      throw DomainError("row " + std::to_string(n) + " outside triangle of size " +
                        std::to_string(n_max_));
  }

  Rational a_, b_;
  int n_max_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<Integer> scales_;
};

inline EulerTriangle v_triangle(int n_max, const Rational& a, const Rational& b) {
  return EulerTriangle(n_max, a, b);
}

/// "k,v" CSV of one triangle row, values as exact rationals.
inline std::string row_csv(const EulerTriangle& t, int n) {
  std::ostringstream os;
  os << "k,v\n";
  for (int k = 0; k <= n; ++k)
    os << k << ',' << t.v(n, k).get_str() << '\n';
  return os.str();
}

// --- dense univariate helpers ----------------------------------------------

/// Horner evaluation of sum_k c[k] x^k.
inline Rational poly_eval(std::span<const Rational> c, const Rational& x) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

inline std::vector<Rational> poly_derivative(std::span<const Rational> c) {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c.size(); ++k)
    d.push_back(c[k] * static_cast<unsigned long>(k));
  return d;
}

/// Coefficients of P_{n,a,b}(x) = sum_k v_{a,b}(n,k) x^k.
inline std::vector<Rational> p_coefficients(int n, const Rational& a, const Rational& b) {
  EulerRowStream s(a, b);
  s.advance_to(n);
  return s.row();
}

inline Rational p_eval(int n, const Rational& a, const Rational& b, const Rational& x) {
  auto c = p_coefficients(n, a, b);
  return poly_eval(c, x);
}

// --- (a,b) = (0,0) substitutes --------------------------------------------

/// tilde-v(n,k) = v_{1,1}(n-2, k-1), defined for n >= 2.
inline Rational tilde_v(int n, int k) {
  if (n < 2)
    throw DomainError("tilde quantities need n >= 2");
  EulerRowStream s(1, 1);
  s.advance_to(n - 2);
  return s.value(k - 1);
}

inline std::vector<Rational> tilde_p_coefficients(int n) {
  if (n < 2)
    throw DomainError("tilde quantities need n >= 2");
  EulerRowStream s(1, 1);
  s.advance_to(n - 2);
  std::vector<Rational> c{Rational(0)};
  for (const Rational& v : s.row())
    c.push_back(v);
  return c;
}

/// tilde-P(x) = x P_{n-2,1,1}(x).
inline Rational tilde_p_eval(int n, const Rational& x) {
  auto c = tilde_p_coefficients(n);
  return poly_eval(c, x);
}

// --- values at x = 1 ------------------------------------------------------

struct AtOne {
  Rational value;  ///< P(1)
  Rational first;  ///< P'(1)
  Rational second; ///< P''(1)

  bool operator==(const AtOne&) const = default;
};

/// Closed forms for P(1), P'(1), P''(1).
inline AtOne p_at_one(int n, const Rational& a, const Rational& b) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  if (n < 0)
    throw DomainError("n must be nonnegative");
  const Rational s = a + b;
  AtOne r;
  r.value = rising_factorial(s, static_cast<unsigned>(n));
  r.first = 0;
  r.second = 0;
  if (n >= 1)
    r.first = Rational(n) * (n + 2 * b - 1) / 2 * rising_factorial(s, static_cast<unsigned>(n - 1));
  if (n >= 2) {
    Rational poly = 3 * Rational(n) * n + (12 * b - 11) * n + 12 * b * b - 24 * b + 10;
    r.second = Rational(n) * (n - 1) * poly / 12 * rising_factorial(s, static_cast<unsigned>(n - 2));
  }
  return r;
}

/// The same three numbers summed directly off the triangle row.
inline AtOne p_at_one_by_sums(const std::vector<Rational>& row) {
  AtOne r{0, 0, 0};
  for (std::size_t k = 0; k < row.size(); ++k) {
    r.value += row[k];
    r.first += row[k] * static_cast<unsigned long>(k);
    if (k >= 2)
      r.second += row[k] * static_cast<unsigned long>(k * (k - 1));
  }
  return r;
}

// --- c-table ----------------------------------------------------------------

/// c[0][0] = 1, c[n+1][l] = (l + b) c[n][l] + c[n][l-1].
class CTable {
public:
  CTable(int n_max, const Rational& b) : b_(b), n_max_(n_max) {
    require_nonnegative(b, "b");
    c_.push_back({Rational(1)});
    for (int n = 0; n < n_max; ++n) {
      std::vector<Rational> next(static_cast<std::size_t>(n) + 2, Rational(0));
      for (int l = 0; l <= n + 1; ++l) {
        if (l <= n)
          next[l] += (l + b) * c_[n][l];
        if (l >= 1)
          next[l] += c_[n][l - 1];
      }
      c_.push_back(std::move(next));
    }
  }

  Rational operator()(int n, int l) const {
    if (n < 0 || n > n_max_)
      throw DomainError("c-table row out of range");
    if (l < 0 || l > n)
      return 0;
    return c_[n][l];
  }

  int n_max() const { return n_max_; }
  const Rational& b() const { return b_; }

private:
  Rational b_;
  int n_max_;
  std::vector<std::vector<Rational>> c_;
};

inline CTable c_table(int n_max, const Rational& b) { return CTable(n_max, b); }

/// sum_l c[n][l] (a+b)^{rise l} (x-1)^{n-l}; agrees with P_{n,a,b}(x).
inline Rational c_expansion_eval(const CTable& c, int n, const Rational& a, const Rational& x) {
  Rational acc = 0;
  for (int l = 0; l <= n; ++l)
    acc += c(n, l) * rising_factorial(a + c.b(), static_cast<unsigned>(l)) *
           pow(x - 1, static_cast<unsigned>(n - l));
  return acc;
}

// --- classical Eulerian numbers --------------------------------------------

/// Eulerian numbers <n, k> for k = 0..n (row 0 is {1}); computed with their own
/// integer recursion <n,k> = (k+1)<n-1,k> + (n-k)<n-1,k-1>.
inline std::vector<Integer> eulerian_row(int n) {
  if (n < 0)
    throw DomainError("n must be nonnegative");
  std::vector<Integer> row{Integer(1)};
  for (int m = 1; m <= n; ++m) {
    std::vector<Integer> next(static_cast<std::size_t>(m) + 1, Integer(0));
    for (int k = 0; k <= m; ++k) {
      if (k <= m - 1)
        next[k] += (k + 1) * row[k];
      if (k >= 1)
        next[k] += (m - k) * row[k - 1];
    }
    row.swap(next);
  }
  // <n, n> is 0 for n >= 1 but kept so that index k stays valid for 0..n
  return row;
}

inline Integer eulerian(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  return eulerian_row(n)[k];
}

// --- symbolic coefficients ---------------------------------------------------

/// Polynomial in a and b with integer coefficients, stored densely: coeff(i, j) is
/// the coefficient of a^i b^j.
class BivarPoly {
public:
  BivarPoly() = default;
  explicit BivarPoly(int max_degree)
      : deg_(max_degree), c_(static_cast<std::size_t>(max_degree + 1) * (max_degree + 1)) {}

  static BivarPoly constant(int max_degree, long v) {
    BivarPoly p(max_degree);
    p.coeff_ref(0, 0) = v;
    return p;
  }

  int capacity_degree() const { return deg_; }

  Integer coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > deg_ || j > deg_)
      return 0;
    return c_[idx(i, j)];
  }
  Integer& coeff_ref(int i, int j) { return c_[idx(i, j)]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& z) { return z == 0; });
  }

  /// Largest i + j with a nonzero coefficient; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (int i = 0; i <= deg_; ++i)
      for (int j = 0; j <= deg_; ++j)
        if (c_[idx(i, j)] != 0)
          d = std::max(d, i + j);
    return d;
  }

  bool all_nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& z) { return z >= 0; });
  }

  Rational evaluate(const Rational& a, const Rational& b) const {
    Rational acc = 0;
    for (int i = 0; i <= deg_; ++i)
      for (int j = 0; j <= deg_; ++j)
        if (c_[idx(i, j)] != 0)
          acc += Rational(c_[idx(i, j)]) * pow(a, i) * pow(b, j);
    return acc;
  }

  /// (k + a) * p, truncated to this capacity.
  BivarPoly times_linear(long constant, bool var_is_a) const {
    BivarPoly out(deg_);
    for (int i = 0; i <= deg_; ++i)
      for (int j = 0; j <= deg_; ++j) {
        const Integer& z = c_[idx(i, j)];
        if (z == 0)
          continue;
        out.coeff_ref(i, j) += constant * z;
        if (var_is_a) {
          if (i + 1 <= deg_)
            out.coeff_ref(i + 1, j) += z;
        } else if (j + 1 <= deg_) {
          out.coeff_ref(i, j + 1) += z;
        }
      }
    return out;
  }

  BivarPoly& operator+=(const BivarPoly& o) {
    for (std::size_t k = 0; k < c_.size(); ++k)
      c_[k] += o.c_[k];
    return *this;
  }

  bool operator==(const BivarPoly& o) const {
    const int d = std::max(deg_, o.deg_);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j)
        if (coeff(i, j) != o.coeff(i, j))
          return false;
    return true;
  }

  /// Monomials by increasing total degree, higher powers of a first, e.g.
  /// "a + b + 2ab".
  std::string to_string() const {
    std::string out;
    for (int d = 0; d <= 2 * deg_; ++d)
      for (int i = std::min(d, deg_); i >= 0 && d - i <= deg_; --i) {
        const int j = d - i;
        Integer z = coeff(i, j);
        if (z == 0)
          continue;
        if (!out.empty())
          out += z < 0 ? " - " : " + ";
        else if (z < 0)
          out += "-";
        Integer mag = abs(z);
        if (mag != 1 || d == 0)
          out += mag.get_str();
        out += monomial(i, 'a') + monomial(j, 'b');
      }
    return out.empty() ? "0" : out;
  }

private:
  static std::string monomial(int e, char v) {
    if (e == 0)
      return "";
    if (e == 1)
      return std::string(1, v);
    return std::string(1, v) + "^" + std::to_string(e);
  }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * (deg_ + 1) + j; }

  int deg_ = 0;
  std::vector<Integer> c_{Integer(0)};
};

/// v_{a,b}(n, k) for k = 0..n as polynomials in a and b.
inline std::vector<BivarPoly> v_symbolic_row(int n) {
  if (n < 0)
    throw DomainError("n must be nonnegative");
  std::vector<BivarPoly> row{BivarPoly::constant(n, 1)};
  for (int m = 1; m <= n; ++m) {
    std::vector<BivarPoly> next(static_cast<std::size_t>(m) + 1, BivarPoly(n));
    for (int k = 0; k <= m; ++k) {
      if (k <= m - 1)
        next[k] += row[k].times_linear(k, /*var_is_a=*/true);
      if (k >= 1)
        next[k] += row[k - 1].times_linear(m - k, /*var_is_a=*/false);
    }
    row.swap(next);
  }
  return row;
}

inline BivarPoly v_symbolic(int n, int k) {
  if (k < 0 || k > n)
    return BivarPoly(std::max(n, 0));
  return v_symbolic_row(n)[k];
}

} // namespace staircase
