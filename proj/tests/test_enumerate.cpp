#include <catch_amalgamated.hpp>

#include <set>

#include "staircase/enumerate.hpp"
#include "staircase/eulerian.hpp"

using namespace staircase;

namespace {

std::set<std::string> keys_of(std::vector<Tableau> ts) {
  std::set<std::string> s;
  for (auto& t : ts)
    s.insert(t.key());
  return s;
}

template <class Stream>
std::vector<Tableau> drain(Stream s) {
  std::vector<Tableau> out;
  while (auto t = s.next())
    out.push_back(*t);
  return out;
}

Integer fact(int n) { return factorial(n); }

} // namespace

TEST_CASE("alpha/beta counts are (n+1)!") {
  CHECK(count_ab(1) == 2);
  CHECK(count_ab(3) == 24);
  CHECK(count_ab(6) == 5040);
  for (int n = 1; n <= 7; ++n)
    CHECK(Integer(count_ab(n)) == fact(n + 1));
}

TEST_CASE("four-symbol counts are 4^n n!") {
  CHECK(count_four(1) == 4);
  CHECK(count_four(3) == 384);
  for (int n = 1; n <= 5; ++n)
    CHECK(Integer(count_four(n)) == fact(n) * (Integer(1) << (2 * n)));
}

TEST_CASE("streams yield distinct valid tableaux") {
  for (int n = 1; n <= 6; ++n) {
    auto all = drain(AbTableauStream(n));
    for (auto& t : all)
      REQUIRE(is_valid(t));
    CHECK(keys_of(all).size() == all.size());
  }
  for (int n = 1; n <= 4; ++n) {
    auto all = drain(FourTableauStream(n));
    for (auto& t : all)
      REQUIRE(is_valid(t));
    CHECK(keys_of(all).size() == all.size());
  }
}

TEST_CASE("constructive and naive generators agree") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(keys_of(drain(AbTableauStream(n))) == keys_of(naive_tableaux(n, false)));
    CHECK(keys_of(drain(FourTableauStream(n))) == keys_of(naive_tableaux(n, true)));
  }
  CHECK_THROWS_AS(naive_tableaux(4, false), CapExceeded);
}

TEST_CASE("stream order is deterministic") {
  for (int n = 1; n <= 5; ++n) {
    auto first = drain(AbTableauStream(n));
    CHECK(first.front() == constant_diagonal(n, Symbol::Alpha));
    CHECK(first == drain(AbTableauStream(n)));
  }
  // size 1 then size 2: case (i), then all-beta columns, then alpha-topped ones
  auto two = drain(AbTableauStream(2));
  REQUIRE(two.size() == 6);
  CHECK(render_text(two[0]) == ".a\na\n");
  CHECK(render_text(two[1]) == ".a\nb\n");
  CHECK(render_text(two[2]) == "ba\nb\n");
  CHECK(render_text(two[3]) == "aa\nb\n");
  CHECK(render_text(two[4]) == ".b\na\n");
  CHECK(render_text(two[5]) == ".b\nb\n");
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(AbTableauStream(9), CapExceeded);
  CHECK_THROWS_AS(FourTableauStream(6), CapExceeded);
  CHECK_NOTHROW(AbTableauStream(9, 9));
  CHECK_THROWS_AS(AbTableauStream(-1), DomainError);
  CHECK(drain(AbTableauStream(0)).size() == 1);
}

TEST_CASE("partition functions") {
  CHECK(partition_function(3, 1, 1, 1, 1) == 384);
  CHECK(partition_function(3, 2, 1, 0, 0) == 105);
  CHECK(partition_function(4, 1, 1, 0, 0) == 120);
  const std::vector<std::array<Rational, 4>> grid{
      {1, 1, 1, 1}, {2, 1, 0, 0}, {0, 1, 1, 0}, {Rational(1, 2), 0, 3, 2}, {0, 0, 1, 1},
      {Rational(2, 3), Rational(5, 4), Rational(1, 3), 0}};
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : grid) {
      Rational z = partition_function(n, g[0], g[1], g[2], g[3]);
      REQUIRE(z == z_product(n, g[0], g[1], g[2], g[3]));
      REQUIRE(z == z_product(n, g[0] + g[2], g[1] + g[3]));
    }
  for (int n = 1; n <= 7; ++n)
    CHECK(partition_function_ab(n, 2, 1) == Rational(odd_double_factorial(n)));
}

TEST_CASE("D_n(x,z)") {
  JointPoly d1 = joint_poly_A_r(1, 1, 1);
  CHECK(d1.coeff(1, 1) == 1);
  CHECK(d1.coeff(0, 0) == 1);
  CHECK(d1.terms().size() == 2);

  const std::vector<std::pair<Rational, Rational>> params{
      {1, 1}, {2, 1}, {Rational(1, 3), 5}, {Rational(3, 2), Rational(2, 7)}};
  for (auto [al, be] : params) {
    JointPoly prev;
    prev.add(0, 0, 1);
    for (int n = 1; n <= 6; ++n) {
      JointPoly d = joint_poly_A_r(n, al, be);
      CHECK(d.all_nonnegative());
      CHECK(d.evaluate(1, 1) == z_product(n, al, be));
      // polynomial identity: degree <= n in each variable, so an (n+2)^2 grid decides it
      for (int i = 0; i < n + 2; ++i)
        for (int j = 0; j < n + 2; ++j) {
          Rational x = ratio(2 * i - 3, 3), z = ratio(j + 1, 2);
          Rational rhs = al * z * (x - 1) * prev.evaluate(x, z) + (al * z + be) * prev.evaluate(x, z + be);
          REQUIRE(d.evaluate(x, z) == rhs);
        }
      const Rational a = 1 / al, b = 1 / be;
      for (Rational x : {Rational(0), Rational(1), Rational(-7, 4), Rational(5, 2)})
        REQUIRE(d.evaluate(x, 1) == pow(al * be, n) * p_eval(n, a, b, x));
      prev = d;
    }
  }
  CHECK(joint_poly_A_r(2, 1, 1).evaluate(Rational(3), 1) == 1 + 4 * 3 + 9);
}

TEST_CASE("joint N polynomial") {
  JointPoly n1 = joint_poly_N(1, 1, 1);
  CHECK(n1.coeff(1, 0) == 1);
  CHECK(n1.coeff(0, 1) == 1);
  CHECK(n1.coeff(0, 0) == 0);
  CHECK(n1.coeff(1, 1) == 0);
  const std::vector<std::pair<Rational, Rational>> params{
      {1, 1}, {2, 1}, {Rational(1, 3), 5}, {Rational(3, 2), Rational(2, 7)}};
  for (auto [al, be] : params)
    for (int n = 1; n <= 5; ++n) {
      JointPoly p = joint_poly_N(n, al, be);
      CHECK(p.all_nonnegative());
      CHECK(p.normalized() == joint_poly_N_product(n, al, be));
      CHECK(p.normalized().total() == 1);
      CHECK(p.total() == z_product(n, al, be));
    }
}

TEST_CASE("maximal tableaux") {
  CHECK(max_symbol_tableaux(1).size() == 2);
  CHECK(max_symbol_tableaux(3).size() == 4);
  for (int n = 1; n <= 7; ++n) {
    auto m = max_symbol_tableaux(n);
    CHECK(Integer(m.size()) == 2 * fact(n - 1));
    std::size_t with_n = 0, with_n1 = 0;
    for (const auto& t : m) {
      int na = counts(t).n_alpha;
      with_n += (na == n);
      with_n1 += (na == n - 1);
    }
    CHECK(Integer(with_n) == fact(n - 1));
    CHECK(Integer(with_n1) == fact(n - 1));
    if (n > 6)
      continue;
    for (const auto& t : m) {
      REQUIRE(t.at(1, 1).has_value());
      Tableau rest = t;
      rest.set(1, 1, std::nullopt);
      auto c = counts(rest);
      CHECK(c.n_alpha == n - 1);
      CHECK(c.n_beta == n - 1);
      for (int k = 2; k <= n; ++k) {
        int alphas_in_col = 0, betas_in_row = 0;
        for (int i = 1; i + k <= n + 1; ++i)
          alphas_in_col += rest.at(i, k) == Symbol::Alpha;
        for (int j = 1; j + k <= n + 1; ++j)
          betas_in_row += rest.at(k, j) == Symbol::Beta;
        CHECK(alphas_in_col == 1);
        CHECK(betas_in_row == 1);
      }
    }
  }
}

TEST_CASE("tableaux with n alphas") {
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t c = 0;
    Rational sum = 0;
    Rational beta(3, 2);
    AbTableauStream s(n);
    for_each_tableau(s, [&](const Tableau& t) {
      auto k = counts(t);
      if (k.n_alpha == n) {
        ++c;
        sum += pow(beta, k.n_beta);
      }
    });
    CHECK(Integer(c) == fact(n));
    Rational prod = 1;
    for (int i = 0; i < n; ++i)
      prod *= 1 + i * beta;
    CHECK(sum == prod);
  }
}
