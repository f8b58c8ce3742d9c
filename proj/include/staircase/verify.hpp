#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "staircase/asep.hpp"
#include "staircase/distributions.hpp"
#include "staircase/enumerate.hpp"
#include "staircase/eulerian.hpp"
#include "staircase/fixtures.hpp"
#include "staircase/sampler.hpp"

namespace staircase {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail; ///< first failures, or a short summary when passing
  double seconds = 0;
};

namespace verify_detail {

using AB = std::pair<Rational, Rational>;

/// Collects failed expectations; keeps the first few messages.
class Probe {
public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok)
      return;
    ++failures_;
    if (msgs_.size() < 3)
      msgs_.push_back(what);
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    if (ok())
      return std::to_string(checks_) + " checks" + (notes_.empty() ? "" : "; " + notes_);
    std::string s = std::to_string(failures_) + "/" + std::to_string(checks_) + " failed: ";
    for (std::size_t i = 0; i < msgs_.size(); ++i)
      s += (i ? " | " : "") + msgs_[i];
    return s;
  }

private:
  std::size_t checks_ = 0, failures_ = 0;
  std::vector<std::string> msgs_;
  std::string notes_;
};

inline std::string str(const Rational& x) { return x.get_str(); }

inline std::string at(int n, const AB& p) { return "n=" + std::to_string(n) + " a=" + str(p.first) + " b=" + str(p.second); }

/// (a, b) points; a = 0 is alpha = inf, b = 0 is beta = inf.
inline const std::vector<AB>& ab_grid() {
  static const std::vector<AB> g{{1, 1},           {Rational(1, 2), 1}, {Rational(1, 2), Rational(1, 2)},
                                 {3, Rational(1, 5)}, {0, 1},            {1, 0},
                                 {2, Rational(3, 7)}};
  return g;
}

/// (alpha, beta, gamma, delta) points with zero entries.
inline const std::vector<std::array<Rational, 4>>& four_grid() {
  static const std::vector<std::array<Rational, 4>> g{
      {1, 1, 1, 1}, {2, 1, 0, 0}, {0, 1, 1, 0}, {Rational(1, 2), 0, 3, 2}, {0, 0, 1, 1},
      {Rational(2, 3), Rational(5, 4), Rational(1, 3), 0}};
  return g;
}

/// Exhaustive weighted tableau list at (a, b) with normalized weights.
struct Weighted {
  std::vector<Tableau> t;
  std::vector<Rational> w;
};

inline Weighted weighted_tableaux(int n, const Rational& a, const Rational& b) {
  Weighted out;
  Rational den = 0;
  AbTableauStream s(n);
  for_each_tableau(s, [&](const Tableau& t) {
    auto c = counts(t);
    Rational w = pow(a, n - c.n_alpha) * pow(b, n - c.n_beta);
    if (w == 0)
      return;
    out.t.push_back(t);
    out.w.push_back(w);
    den += w;
  });
  for (auto& w : out.w)
    w /= den;
  return out;
}

template <class F>
Rational expect(const Weighted& wt, F f) {
  Rational s = 0;
  for (std::size_t k = 0; k < wt.t.size(); ++k)
    if (f(wt.t[k]))
      s += wt.w[k];
  return s;
}

inline std::map<std::string, std::uint64_t> tally(const std::vector<Tableau>& ts) {
  std::map<std::string, std::uint64_t> m;
  for (const auto& t : ts)
    ++m[t.key()];
  return m;
}

constexpr double kAlpha = 1e-3; // chi-square significance
constexpr std::size_t kSamples = 100000;

// --- criteria -----------------------------------------------------------------

inline void counting(Probe& p) {
  for (int n = 1; n <= 7; ++n)
    p.expect(Integer(count_ab(n)) == factorial(n + 1), "ab count n=" + std::to_string(n));
  for (int n = 1; n <= 4; ++n)
    p.expect(Integer(count_four(n)) == factorial(n) * (Integer(1) << (2 * n)), "four count n=" + std::to_string(n));
  for (int n = 1; n <= 7; ++n) {
    auto m = max_symbol_tableaux(n);
    std::size_t top = 0, next = 0;
    for (const auto& t : m) {
      int na = counts(t).n_alpha;
      top += na == n;
      next += na == n - 1;
    }
    const Integer f = factorial(n - 1);
    p.expect(Integer(m.size()) == 2 * f && Integer(top) == f && Integer(next) == f,
             "maximal split n=" + std::to_string(n));
  }
}

inline void partition_functions(Probe& p) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : four_grid()) {
      Rational z = partition_function(n, g[0], g[1], g[2], g[3]);
      p.expect(z == z_product(n, g[0], g[1], g[2], g[3]), "product form n=" + std::to_string(n));
      p.expect(z == z_product(n, g[0] + g[2], g[1] + g[3]), "merged form n=" + std::to_string(n));
    }
  for (int n = 1; n <= 7; ++n)
    p.expect(partition_function_ab(n, 2, 1) == Rational(odd_double_factorial(n)),
             "Z(2,1) n=" + std::to_string(n));
}

inline void triangle(Probe& p) {
  const std::vector<std::vector<std::string>> table{
      {"1"},
      {"a", "b"},
      {"a^2", "a + b + 2ab", "b^2"},
      {"a^3", "a + b + 3a^2 + 3ab + 3a^2b", "a + b + 3ab + 3b^2 + 3ab^2", "b^3"}};
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      std::string got = v_symbolic(n, k).to_string();
      p.expect(got == table[n][k], "v(" + std::to_string(n) + "," + std::to_string(k) + ") = " + got);
    }
  std::vector<AB> g = ab_grid();
  g.push_back({0, 0});
  for (const auto& ab : g) {
    auto t = v_triangle(200, ab.first, ab.second);
    for (int n = 0; n <= 200; ++n)
      p.expect(t.row_sum(n) == rising_factorial(ab.first + ab.second, n), "row sum " + at(n, ab));
  }
}

inline void law_of_A(Probe& p) {
  for (const auto& ab : ab_grid())
    for (int n = 1; n <= 6; ++n) {
      auto wt = weighted_tableaux(n, ab.first, ab.second);
      std::vector<Rational> e(n + 1, Rational(0));
      for (std::size_t k = 0; k < wt.t.size(); ++k)
        e[counts(wt.t[k]).A] += wt.w[k];
      p.expect(dist_A(n, ab.first, ab.second) == DiscreteDist(0, e), "enumerated law " + at(n, ab));
    }
  for (int n = 1; n <= 7; ++n) {
    auto d11 = dist_A(n, 1, 1), d01 = dist_A(n, 0, 1);
    for (int k = 0; k <= n; ++k) {
      p.expect(d11(k) == Rational(eulerian(n + 1, k)) / Rational(factorial(n + 1)), "Eulerian a=b=1");
      Rational e = k == 0 ? Rational(0) : Rational(eulerian(n, k - 1)) / Rational(factorial(n));
      p.expect(d01(k) == e, "Eulerian a=0 b=1");
    }
  }
  auto t11 = v_triangle(50, 1, 1);
  auto t01 = v_triangle(50, 0, 1);
  for (int n = 1; n <= 50; ++n) {
    p.expect(dist_A(t01, n) == dist_A(t11, n - 1).shifted(1), "a=0 shift n=" + std::to_string(n));
    if (n >= 2)
      p.expect(dist_A(n, 0, 0) == dist_A(t11, n - 2).shifted(1), "a=b=0 shift n=" + std::to_string(n));
  }
}

inline void moments(Probe& p) {
  for (const auto& ab : ab_grid()) {
    auto t = v_triangle(200, ab.first, ab.second);
    for (int n = 0; n <= 200; ++n)
      p.expect(moments_A(n, ab.first, ab.second) == row_moments(t.scaled_row(n)), "moments " + at(n, ab));
  }
  for (int n = 2; n <= 200; ++n) {
    auto d = dist_A(n, 0, 0);
    p.expect(moments_A(n, 0, 0) == Moments{d.mean(), d.variance()}, "moments a=b=0 n=" + std::to_string(n));
  }
  const Rational h(1, 2);
  for (int n = 2; n <= 200; ++n) {
    p.expect(moments_A(n, h, h).variance == ratio(n + 1, 12), "a=b=1/2 variance n=" + std::to_string(n));
    p.expect(moments_A(n, 1, 1).variance == ratio(n + 2, 12), "a=b=1 variance n=" + std::to_string(n));
  }
}

inline void recursion_chain(Probe& p) {
  const std::vector<AB> weights{{1, 1}, {2, 1}, {Rational(1, 3), 5}, {Rational(3, 2), Rational(2, 7)}};
  for (const auto& [al, be] : weights) {
    JointPoly prev;
    prev.add(0, 0, 1);
    for (int n = 1; n <= 5; ++n) {
      JointPoly d = joint_poly_A_r(n, al, be);
      bool rec = true;
      // degree <= n in each variable, so an (n+2)^2 grid decides the identity
      for (int i = 0; i < n + 2 && rec; ++i)
        for (int j = 0; j < n + 2 && rec; ++j) {
          Rational x = ratio(2 * i - 3, 3), z = ratio(j + 1, 2);
          Rational rhs = al * z * (x - 1) * prev.evaluate(x, z) + (al * z + be) * prev.evaluate(x, z + be);
          rec = d.evaluate(x, z) == rhs;
        }
      p.expect(rec, "D_n recursion n=" + std::to_string(n));
      for (Rational x : {Rational(0), Rational(1), Rational(-7, 4), Rational(5, 2)})
        p.expect(d.evaluate(x, 1) == pow(al * be, n) * p_eval(n, 1 / al, 1 / be, x),
                 "D_n(x,1) n=" + std::to_string(n));
      prev = d;
    }
  }
  for (Rational b : {Rational(0), Rational(1), Rational(3, 4), Rational(5, 2)}) {
    auto c = c_table(50, b);
    for (int n = 0; n <= 50; ++n) {
      p.expect(c(n, n) == 1, "c[n][n]");
      if (n >= 1)
        p.expect(c(n, n - 1) == Rational(n) * (n + 2 * b - 1) / 2, "c[n][n-1]");
    }
  }
}

inline void sampler_exactness(Probe& p) {
  std::uint64_t seed = 0x5eed;
  for (const AB& w : std::vector<AB>{{1, 1}, {2, 1}, {2, 2}}) {
    const int n = 4;
    TableauLaw law = tableau_law(n, 1 / w.first, 1 / w.second);
    p.expect(law.size() == 120, "law support");
    SamplerPlan plan(n, Params::from_weights(ExtRational::finite(w.first), ExtRational::finite(w.second)));
    auto r = chi_square(law, tally(sample_many(plan, kSamples, seed++)));
    std::ostringstream os;
    os << "alpha=" << str(w.first) << " beta=" << str(w.second) << " p=" << r.p_value;
    p.expect(r.p_value > kAlpha, os.str());
    p.note(os.str());
  }
}

inline void urn(Probe& p) {
  for (const auto& ab : ab_grid()) {
    auto t = v_triangle(50, ab.first, ab.second);
    for (int n = 0; n <= 50; ++n)
      p.expect(DiscreteDist(0, urn_law(n, ab.first, ab.second)) == dist_A(t, n), "urn law " + at(n, ab));
  }
  std::uint64_t seed = 0x0b0e;
  for (const AB& ab : std::vector<AB>{{1, 1}, {Rational(1, 2), 1}, {Rational(1, 2), Rational(1, 2)}}) {
    const int n = 4;
    UrnPlan plan(n, ab.first, ab.second);
    std::vector<std::uint64_t> c(n + 1, 0);
    Rng rng(seed++);
    for (std::size_t k = 0; k < kSamples; ++k)
      ++c[plan.run(rng).A];
    auto r = dist_A(n, ab.first, ab.second).chi_square_against(c);
    std::ostringstream os;
    os << "urn a=" << str(ab.first) << " b=" << str(ab.second) << " p=" << r.p_value;
    p.expect(r.p_value > kAlpha, os.str());
  }
}

inline void decomposition(Probe& p) {
  std::vector<AB> g = ab_grid();
  g.push_back({0, 0});
  double worst = 0;
  for (const auto& ab : g)
    for (int n = (ab.first + ab.second > 0 ? 1 : 2); n <= 30; ++n) {
      BernoulliDecomp bd;
      try {
        bd = bernoulli_decomposition(n, ab.first, ab.second);
      } catch (const NumericalFailure& e) {
        p.expect(false, "root isolation " + at(n, ab) + ": " + e.what());
        continue;
      }
      p.expect(bd.p.size() == static_cast<std::size_t>(n), "root count " + at(n, ab));
      std::vector<double> fin;
      bool nonneg = true;
      for (double x : bd.xi) {
        nonneg &= x >= 0;
        if (std::isfinite(x) && x > 0)
          fin.push_back(x);
      }
      std::sort(fin.begin(), fin.end());
      bool simple = std::adjacent_find(fin.begin(), fin.end()) == fin.end();
      p.expect(nonneg && simple, "roots real, nonpositive, simple " + at(n, ab));
      double tv = bd.total_variation(dist_A(n, ab.first, ab.second));
      worst = std::max(worst, tv);
      p.expect(tv < 1e-9, "reconstruction " + at(n, ab));
    }
  std::ostringstream os;
  os << "max TV " << worst;
  p.note(os.str());
  for (const auto& ab : g) {
    auto t = v_triangle(200, ab.first, ab.second);
    for (int n = 1; n <= 200; ++n) {
      const auto& r = t.scaled_row(n);
      bool lc = true;
      for (int k = 1; k < n && lc; ++k)
        lc = r[k] * r[k] >= r[k - 1] * r[k + 1];
      p.expect(lc, "log-concave " + at(n, ab));
    }
  }
}

inline void positions(Probe& p) {
  p.expect(diag_cov(2, 1, 1, 1, 2) == Rational(-1, 18), "cov at n=2, a=b=1");
  for (const auto& ab : ab_grid()) {
    const auto& [a, b] = ab;
    for (int n = 1; n <= 5; ++n) {
      auto wt = weighted_tableaux(n, a, b);
      for (int i = 1; i <= n; ++i) {
        const int col = diag_column_of_row(n, i);
        Rational f = expect(wt, [&](const Tableau& t) { return t.at(i, col) == Symbol::Alpha; });
        p.expect(diag_prob(n, a, b, i) == f, "diagonal " + at(n, ab));
      }
      for (int i = 1; i < n; ++i)
        for (int j = 1; i + j <= n; ++j) {
          auto c = cell_prob(n, a, b, i, j);
          p.expect(c.alpha == expect(wt, [&](const Tableau& t) { return t.at(i, j) == Symbol::Alpha; }) &&
                       c.beta == expect(wt, [&](const Tableau& t) { return t.at(i, j) == Symbol::Beta; }) &&
                       c.filled == expect(wt, [&](const Tableau& t) { return t.at(i, j).has_value(); }),
                   "cell " + at(n, ab));
        }
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> cols;
        for (int j = 1; j <= n; ++j)
          if (mask >> (j - 1) & 1)
            cols.push_back(j);
        Rational f = expect(wt, [&](const Tableau& t) {
          for (int j : cols)
            if (t.at(diag_row_of_column(n, j), j) != Symbol::Alpha)
              return false;
          return true;
        });
        p.expect(joint_diag_alpha(n, a, b, cols) == f, "joint diagonal " + at(n, ab));
      }
      for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          auto both = [&](const Tableau& t) {
            return t.at(diag_row_of_column(n, j), j) == Symbol::Alpha &&
                   t.at(diag_row_of_column(n, k), k) == Symbol::Alpha;
          };
          auto one = [&](int c) {
            return expect(wt, [&](const Tableau& t) { return t.at(diag_row_of_column(n, c), c) == Symbol::Alpha; });
          };
          p.expect(diag_cov(n, a, b, j, k) == expect(wt, both) - one(j) * one(k), "covariance " + at(n, ab));
        }
    }
  }
}

inline void subtableaux(Probe& p) {
  for (const auto& ab : ab_grid())
    for (int n = 1; n <= 5; ++n)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; i + j <= n + 1; ++j) {
          auto r = subtableau_law_check(n, ab.first, ab.second, i, j);
          p.expect(r.equal, "S[" + std::to_string(i) + "," + std::to_string(j) + "] " + at(n, ab) + " " +
                                r.first_difference);
        }
}

inline void pair_laws(Probe& p) {
  const std::vector<AB> weights{{1, 1}, {2, 1}, {Rational(1, 3), 5}, {Rational(3, 2), Rational(2, 7)}};
  for (const auto& [al, be] : weights)
    for (int n = 1; n <= 5; ++n)
      p.expect(joint_law_N(n, 1 / al, 1 / be) == joint_poly_N(n, al, be).normalized(),
               "joint N law n=" + std::to_string(n));
  // a = b = 1: n - N_alpha is a sum of independent Be(1/i), i = 2..n+1
  for (int n = 1; n <= 20; ++n) {
    auto marg = joint_law_N(n, 1, 1).first_marginal();
    std::vector<Rational> conv{Rational(1)};
    for (int i = 2; i <= n + 1; ++i) {
      std::vector<Rational> nx(conv.size() + 1, Rational(0));
      for (std::size_t k = 0; k < conv.size(); ++k) {
        nx[k] += conv[k] * (1 - ratio(1, i));
        nx[k + 1] += conv[k] * ratio(1, i);
      }
      conv.swap(nx);
    }
    bool same = true;
    for (int k = 0; k <= n; ++k)
      same &= marg[n - k] == conv[k];
    p.expect(same, "Be(1/i) representation n=" + std::to_string(n));
  }
}

inline void asep(Probe& p) {
  FilledTableau f = fill_uq(fixtures::showcase_size8());
  p.expect(wtx(f) == WeightVector{5, 2, 3, 3, 13, 10}, "showcase exponents");
  p.expect(render_rows(f) == fixtures::showcase_size8_filled_rows(), "showcase rendering");
  for (int n = 1; n <= 4; ++n) {
    FourTableauStream s(n);
    bool ok = true;
    for_each_tableau(s, [&](const Tableau& t) {
      auto e = wtx(t);
      ok &= std::accumulate(e.begin(), e.end(), 0) == n * (n + 1) / 2;
    });
    p.expect(ok, "degree identity n=" + std::to_string(n));
    for (const auto& g : four_grid())
      p.expect(z_full(n, g[0], g[1], g[2], g[3], 1, 1) == z_product(n, g[0], g[1], g[2], g[3]),
               "z_full at q=u=1 n=" + std::to_string(n));
  }
}

inline void limits(Probe& p) {
  const Rational h(1, 2);
  auto c2000 = clt_diagnostics(2000, h, h);
  auto c100 = clt_diagnostics(100, h, h);
  auto c1000 = clt_diagnostics(1000, h, h);
  std::ostringstream os;
  os << "KS(2000)=" << c2000.ks_to_normal << " LLT(100)=" << c100.llt_max_residual
     << " LLT(1000)=" << c1000.llt_max_residual;
  p.expect(c2000.ks_to_normal < 0.02, os.str());
  p.expect(c1000.llt_max_residual < c100.llt_max_residual, os.str());
  double worst = 0;
  for (const auto& row : n_alpha_growth_check({10, 100, 1000, 10000}, 1, 1))
    worst = std::max(worst, std::abs(row.var_deviation));
  os << " max|Var N - log n|=" << worst;
  p.expect(worst <= 2, os.str());
  p.note(os.str());
}

inline void maximal(Probe& p) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& t : max_symbol_tableaux(n)) {
      bool filled = t.at(1, 1).has_value();
      p.expect(filled, "box (1,1) empty n=" + std::to_string(n));
      if (!filled)
        continue;
      Tableau rest = t;
      rest.set(1, 1, std::nullopt);
      auto c = counts(rest);
      bool ok = c.n_alpha == n - 1 && c.n_beta == n - 1;
      for (int k = 2; k <= n; ++k) {
        int col_alpha = 0, row_beta = 0;
        for (int i = 1; i + k <= n + 1; ++i)
          col_alpha += rest.at(i, k) == Symbol::Alpha;
        for (int j = 1; j + k <= n + 1; ++j)
          row_beta += rest.at(k, j) == Symbol::Beta;
        ok &= col_alpha == 1 && row_beta == 1;
      }
      p.expect(ok, "one alpha per column, one beta per row n=" + std::to_string(n));
    }
  const Rational rho(1, 3);
  SamplerPlan plan(3, Params::from_ab(0, 0, rho));
  std::uint64_t hits = 0;
  for (const auto& t : sample_many(plan, kSamples, 0x3a7))
    hits += t.at(1, 1) == Symbol::Alpha;
  const double r = to_double(rho);
  const double dev = std::abs(double(hits) / kSamples - r) / std::sqrt(r * (1 - r) / kSamples);
  std::ostringstream os;
  os << "rho=1/3 deviation " << dev << " sd";
  p.expect(dev <= 3, os.str());
  p.note(os.str());
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Probe&);
  double time_limit; ///< seconds; 0 means none
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "counting", counting, 60},
      {2, "partition functions", partition_functions, 0},
      {3, "triangle", triangle, 0},
      {4, "law of A", law_of_A, 0},
      {5, "moments", moments, 0},
      {6, "recursions", recursion_chain, 0},
      {7, "sampler exactness", sampler_exactness, 30},
      {8, "urn equivalence", urn, 0},
      {9, "bernoulli decomposition", decomposition, 0},
      {10, "positions", positions, 0},
      {11, "subtableaux", subtableaux, 0},
      {12, "pair laws", pair_laws, 0},
      {13, "asep", asep, 0},
      {14, "limit diagnostics", limits, 120},
      {15, "maximal case", maximal, 0},
  };
  return c;
}

} // namespace verify_detail

inline int acceptance_count() { return static_cast<int>(verify_detail::criteria().size()); }

inline CriterionResult run_criterion(int id) {
  for (const auto& c : verify_detail::criteria()) {
    if (c.id != id)
      continue;
    verify_detail::Probe p;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(p);
    } catch (const std::exception& e) {
      p.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0) {
      std::ostringstream os;
      os << "runtime " << secs << " s over limit " << c.time_limit << " s";
      p.expect(secs < c.time_limit, os.str());
    }
    return {c.id, c.title, p.ok(), p.detail(), secs};
  }
  throw DomainError("no acceptance criterion " + std::to_string(id));
}

/// Runs the criteria in `ids` (all when empty); `on_result` sees each result as it
/// finishes. Only the "desk" level exists.
inline std::vector<CriterionResult> run_acceptance(const std::string& level, std::vector<int> ids = {},
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
  if (level != "desk")
    throw ParameterError("unknown verification level '" + level + "' (expected desk)");
  if (ids.empty())
    for (const auto& c : verify_detail::criteria())
      ids.push_back(c.id);
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id));
    if (on_result)
      on_result(out.back());
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << "  ("
     << std::fixed;
  os.precision(2);
  os << r.seconds << " s)  " << r.detail;
  return os.str();
}

} // namespace staircase
