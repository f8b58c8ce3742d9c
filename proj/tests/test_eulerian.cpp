#include <catch_amalgamated.hpp>

#include "staircase/eulerian.hpp"

using namespace staircase;

namespace {

const std::vector<std::pair<Rational, Rational>>& grid() {
  static const std::vector<std::pair<Rational, Rational>> g{
      {0, 0}, {0, 1}, {1, 0}, {1, 1}, {Rational(1, 2), Rational(1, 2)}, {2, Rational(3, 7)}};
  return g;
}

// independent oracle: plain rational recursion, no integer scaling
std::vector<std::vector<Rational>> naive_triangle(int n_max, const Rational& a, const Rational& b) {
  std::vector<std::vector<Rational>> v{{Rational(1)}};
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Rational> row(n + 1, Rational(0));
    for (int k = 0; k <= n; ++k) {
      if (k < n)
        row[k] += (k + a) * v[n - 1][k];
      if (k > 0)
        row[k] += (n - k + b) * v[n - 1][k - 1];
    }
    v.push_back(row);
  }
  return v;
}

} // namespace

TEST_CASE("triangle spot values") {
  CHECK(v_triangle(2, 1, 1).row(2) == std::vector<Rational>{1, 4, 1});
  CHECK(v_triangle(3, 1, 0).v(3, 1) == 4);
  Rational h(1, 2);
  CHECK(v_triangle(2, h, h).v(2, 1) == Rational(3, 2));
  // type B Eulerian numbers 1, 23, 23, 1 in row 3
  auto t = v_triangle(3, h, h);
  CHECK(t.v(3, 1) * 8 == 23);
  CHECK(t.v(3, 0) * 8 == 1);
  CHECK(t.v(3, 4) == 0);
  CHECK(t.v(3, -1) == 0);
  CHECK_THROWS_AS(v_triangle(3, -1, 1), ParameterError);
  CHECK_THROWS_AS(t.v(4, 0), DomainError);
}

TEST_CASE("scaled kernel agrees with the plain recursion") {
  for (auto [a, b] : grid()) {
    auto t = v_triangle(40, a, b);
    auto o = naive_triangle(40, a, b);
    for (int n = 0; n <= 40; ++n)
      REQUIRE(t.row(n) == o[n]);
  }
}

TEST_CASE("row sums, boundary values, symmetry") {
  for (auto [a, b] : grid()) {
    auto t = v_triangle(200, a, b);
    auto ts = v_triangle(100, b, a);
    for (int n = 0; n <= 200; ++n) {
      REQUIRE(t.row_sum(n) == rising_factorial(a + b, n));
      REQUIRE(t.v(n, 0) == pow(a, n));
      REQUIRE(t.v(n, n) == pow(b, n));
    }
    for (int n = 0; n <= 100; ++n)
      for (int k = 0; k <= n; ++k)
        REQUIRE(t.v(n, k) == ts.v(n, n - k));
  }
}

TEST_CASE("reflected polynomial") {
  Rational a(2), b(3, 7);
  for (int n = 0; n <= 20; ++n)
    for (Rational x : {Rational(3), Rational(-2, 5), Rational(7, 11)})
      CHECK(p_eval(n, a, b, x) == pow(x, n) * p_eval(n, b, a, 1 / x));
}

TEST_CASE("log-concavity of rows") {
  for (auto [a, b] : grid()) {
    auto t = v_triangle(200, a, b);
    for (int n = 1; n <= 200; ++n)
      for (int k = 1; k < n; ++k)
        REQUIRE(t.v(n, k) * t.v(n, k) >= t.v(n, k - 1) * t.v(n, k + 1));
  }
}

TEST_CASE("zero-parameter specializations") {
  for (Rational a : {Rational(1), Rational(1, 2), Rational(5, 3)}) {
    auto t0 = v_triangle(50, a, 0);
    auto t1 = v_triangle(50, a, 1);
    auto s0 = v_triangle(50, 0, a);
    auto s1 = v_triangle(50, 1, a);
    for (int n = 1; n <= 50; ++n)
      for (int k = 0; k <= n; ++k) {
        REQUIRE(t0.v(n, k) == a * t1.v(n - 1, k));
        REQUIRE(s0.v(n, k) == a * s1.v(n - 1, k - 1));
      }
  }
}

TEST_CASE("polynomial recursion at rational points") {
  // P_n(x) = (a + b x + (n-1) x) P_{n-1}(x) + x (1 - x) P'_{n-1}(x) in coefficient form
  for (auto [a, b] : grid()) {
    for (int n = 1; n <= 100; n += 11) {
      auto prev = p_coefficients(n - 1, a, b);
      auto dprev = poly_derivative(prev);
      for (Rational x : {Rational(2, 3), Rational(-5, 2), Rational(13, 7)}) {
        Rational lhs = p_eval(n, a, b, x);
        Rational rhs = (a + b * x + (n - 1) * x) * poly_eval(prev, x) +
                       x * (1 - x) * poly_eval(dprev, x);
        REQUIRE(lhs == rhs);
      }
    }
  }
}

TEST_CASE("p_eval") {
  CHECK(p_eval(2, 1, 1, 2) == 13);
  for (auto [a, b] : grid())
    for (int n = 0; n <= 12; ++n) {
      CHECK(p_eval(n, a, b, 1) == rising_factorial(a + b, n));
      CHECK(p_eval(n, a, b, 0) == pow(a, n));
    }
}

TEST_CASE("symbolic coefficients") {
  CHECK(v_symbolic(1, 0).to_string() == "a");
  CHECK(v_symbolic(1, 1).to_string() == "b");
  CHECK(v_symbolic(2, 0).to_string() == "a^2");
  CHECK(v_symbolic(2, 1).to_string() == "a + b + 2ab");
  CHECK(v_symbolic(2, 2).to_string() == "b^2");
  CHECK(v_symbolic(3, 1).to_string() == "a + b + 3a^2 + 3ab + 3a^2b");
  CHECK(v_symbolic(3, 2).to_string() == "a + b + 3ab + 3b^2 + 3ab^2");
  CHECK(v_symbolic(0, 0).to_string() == "1");
  CHECK(v_symbolic(3, 5).is_zero());

  for (int n = 0; n <= 10; ++n) {
    auto row = v_symbolic_row(n);
    for (int k = 0; k <= n; ++k) {
      CHECK(row[k].total_degree() == n);
      CHECK(row[k].all_nonnegative());
      for (auto [a, b] : grid())
        CHECK(row[k].evaluate(a, b) == v_triangle(n, a, b).v(n, k));
    }
    BivarPoly an(n);
    an.coeff_ref(n, 0) = 1;
    CHECK(row[0] == an);
  }
}

TEST_CASE("tilde substitutes") {
  CHECK(tilde_v(2, 1) == 1);
  CHECK(tilde_v(2, 0) == 0);
  CHECK(tilde_v(2, 2) == 0);
  CHECK(tilde_v(3, 1) == 1);
  CHECK(tilde_v(3, 2) == 1);
  CHECK_THROWS_AS(tilde_v(1, 0), DomainError);
  CHECK_THROWS_AS(tilde_p_eval(1, 1), DomainError);
  for (int n = 2; n <= 15; ++n) {
    CHECK(tilde_p_eval(n, 1) == Rational(factorial(n - 1)));
    // same recursion as v with a = b = 0, started from tilde-v(2,1) = 1
    if (n >= 3)
      for (int k = 0; k <= n; ++k)
        CHECK(tilde_v(n, k) == k * tilde_v(n - 1, k) + (n - k) * tilde_v(n - 1, k - 1));
  }
}

TEST_CASE("small a = b approach the tilde values") {
  for (int n = 2; n <= 10; ++n)
    for (int k = 0; k <= n; ++k) {
      Rational prev_err = -1;
      for (int m = 1; m <= 20; ++m) {
        Rational a(1, Integer(1) << m);
        Rational err = abs(v_triangle(n, a, a).v(n, k) / (2 * a) - tilde_v(n, k));
        if (prev_err >= 0)
          REQUIRE(err <= prev_err);
        prev_err = err;
      }
      CHECK(prev_err < Rational(factorial(n - 1), 10000));
    }
}

TEST_CASE("rising factorial") {
  for (unsigned n = 0; n <= 10; ++n)
    CHECK(rising_factorial(2, n) == Rational(factorial(n + 1)));
  CHECK(rising_factorial(Rational(3, 2), 2) * 4 == 15);
  CHECK(rising_factorial(Rational(7, 3), 1) == Rational(7, 3));
  CHECK(rising_factorial(Rational(7, 3), 0) == 1);
}

TEST_CASE("values at one") {
  CHECK(p_at_one(2, 1, 1) == AtOne{6, 6, 2});
  for (Rational b : {Rational(0), Rational(1), Rational(2, 9)})
    CHECK(p_at_one(1, 1, b).first == b);
  for (auto [a, b] : grid()) {
    auto t = v_triangle(60, a, b);
    for (int n = 0; n <= 60; ++n)
      REQUIRE(p_at_one(n, a, b) == p_at_one_by_sums(t.row(n)));
  }
}

TEST_CASE("c-table") {
  CHECK(c_table(1, 5).operator()(1, 0) == 5);
  CHECK(c_table(3, 1)(3, 2) == 6);
  for (Rational b : {Rational(0), Rational(1), Rational(3, 4)}) {
    auto c = c_table(50, b);
    for (int n = 0; n <= 50; ++n) {
      REQUIRE(c(n, n) == 1);
      if (n >= 1)
        REQUIRE(c(n, n - 1) == Rational(n) * (n + 2 * b - 1) / 2);
    }
    for (Rational a : {Rational(1), Rational(2, 5)})
      for (int n = 0; n <= 12; ++n)
        CHECK(c_expansion_eval(c, n, a, Rational(5, 3)) == p_eval(n, a, b, Rational(5, 3)));
  }
}

TEST_CASE("classical Eulerian numbers") {
  CHECK(eulerian(3, 1) == 4);
  CHECK(v_symbolic(3, 1).evaluate(1, 0) == 4);
  for (int n = 0; n <= 30; ++n) {
    CHECK(eulerian(n, 0) == 1);
    Integer s = 0;
    for (auto& e : eulerian_row(n))
      s += e;
    CHECK(s == factorial(n));
  }
  auto t10 = v_triangle(30, 1, 0);
  auto t01 = v_triangle(30, 0, 1);
  auto t11 = v_triangle(30, 1, 1);
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= n; ++k) {
      REQUIRE(t10.v(n, k) == Rational(eulerian(n, k)));
      if (n >= 1) // v(0,0) = 1 by definition
        REQUIRE(t01.v(n, k) == Rational(eulerian(n, k - 1)));
      REQUIRE(t11.v(n, k) == Rational(eulerian(n + 1, k)));
    }
}

TEST_CASE("row streaming matches the stored triangle") {
  EulerRowStream s(Rational(2), Rational(3, 7));
  auto t = v_triangle(30, 2, Rational(3, 7));
  for (int n = 0; n <= 30; ++n) {
    s.advance_to(n);
    REQUIRE(s.row() == t.row(n));
  }
  CHECK(row_csv(v_triangle(2, 1, 1), 2) == "k,v\n0,1\n1,4\n2,1\n");
}
