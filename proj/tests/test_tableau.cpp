#include <catch_amalgamated.hpp>

#include "staircase/enumerate.hpp"
#include "staircase/fixtures.hpp"
#include "staircase/tableau.hpp"

using namespace staircase;
using S = Symbol;

TEST_CASE("showcase tableau is valid with weight a^5 b^2 d^3 g^3") {
  Tableau t = fixtures::showcase_size8();
  CHECK(validate(t).empty());
  auto c = counts(t);
  CHECK(c.n_alpha == 5);
  CHECK(c.n_beta == 2);
  CHECK(c.n_gamma == 3);
  CHECK(c.n_delta == 3);
  CHECK(exponents(t) == std::array<int, 4>{5, 2, 3, 3});
  CHECK(weight(t, 1, 1, 1, 1) == 1);
  CHECK(weight(t, 2, 3, 5, 7) == Rational(32 * 9 * 125 * 343));
  // rows 1, 3 and 8 start with alpha
  CHECK(c.r == 3);
}

TEST_CASE("smallest tableaux") {
  Tableau t = Tableau::from_cells(1, std::vector<Cell>{{1, 1, S::Alpha}});
  CHECK(is_valid(t));
  Tableau empty(1);
  auto v = validate(empty);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == Rule::DiagonalFilled);
}

TEST_CASE("rule (iii) breach is reported with every other breach") {
  std::vector<Cell> cells{{1, 1, S::Beta}, {1, 2, S::Beta}, {2, 1, S::Alpha}};
  auto v = validate(2, cells);
  CHECK(std::find(v.begin(), v.end(), Violation{Rule::RowLeftEmpty, 1, 2}) != v.end());
  // the alpha at (2,1) sits under the beta at (1,1)
  CHECK(std::find(v.begin(), v.end(), Violation{Rule::ColumnAboveEmpty, 2, 1}) != v.end());
  CHECK(v.size() == 2);
}

TEST_CASE("cells outside the shape are structural errors") {
  std::vector<Cell> cells{{2, 2, S::Alpha}};
  CHECK_THROWS_AS(validate(2, cells), StructuralError);
  std::vector<Cell> twice{{1, 1, S::Alpha}, {1, 1, S::Beta}};
  CHECK_THROWS_AS(Tableau::from_cells(2, twice), StructuralError);
}

TEST_CASE("weight of a small tableau") {
  Tableau t = Tableau::from_cells(2, std::vector<Cell>{{2, 1, S::Alpha}, {1, 2, S::Beta}});
  CHECK(is_valid(t));
  CHECK(weight(t, 2, 3, 0, 0) == 6);
}

TEST_CASE("diagonal tableaux") {
  for (int n = 1; n <= 6; ++n) {
    Tableau t = constant_diagonal(n, S::Alpha);
    auto c = counts(t);
    CHECK(c.n_alpha == n);
    CHECK(c.A == n);
    CHECK(c.r == n);
    CHECK(c.total() == n);
    CHECK(dagger(t) == constant_diagonal(n, S::Beta));
  }
}

TEST_CASE("subtableau") {
  Tableau t = fixtures::showcase_size8();
  CHECK(subtableau(t, 1, 1) == t);
  Tableau s = subtableau(t, 1, 2);
  CHECK(s.size() == 7);
  CHECK(is_valid(s));
  CHECK_THROWS_AS(subtableau(t, 5, 5), DomainError);
  CHECK(subtableau(t, 4, 5).size() == 1);
}

TEST_CASE("structural properties over all small tableaux") {
  for (int n = 1; n <= 5; ++n) {
    FourTableauStream s(n);
    while (auto t = s.next()) {
      auto c = counts(*t);
      CHECK(c.total() >= n);
      CHECK(c.total() <= 2 * n - 1);
      CHECK(c.A + c.B + c.diag_gamma + c.diag_delta == n);
      for (int k = 1; k <= n; ++k) {
        int col_ag = 0, row_bd = 0;
        for (int i = 1; i + k <= n + 1; ++i)
          if (auto x = t->at(i, k); x && is_column_type(*x))
            ++col_ag;
        for (int j = 1; j + k <= n + 1; ++j)
          if (auto x = t->at(k, j); x && is_row_type(*x))
            ++row_bd;
        CHECK(col_ag <= 1);
        CHECK(row_bd <= 1);
      }
      for (int i = 1; i <= n; ++i)
        for (int j = 1; i + j <= n + 1; ++j)
          REQUIRE(is_valid(subtableau(*t, i, j)));
    }
  }
}

TEST_CASE("dagger is a validity-preserving involution") {
  for (int n = 1; n <= 4; ++n) {
    FourTableauStream s(n);
    while (auto t = s.next()) {
      Tableau d = dagger(*t);
      REQUIRE(is_valid(d));
      CHECK(dagger(d) == *t);
      auto c = counts(*t), cd = counts(d);
      CHECK(cd.n_alpha == c.n_beta);
      CHECK(cd.n_beta == c.n_alpha);
      CHECK(cd.n_gamma == c.n_delta);
      CHECK(cd.n_delta == c.n_gamma);
      CHECK(cd.A == c.B);
      CHECK(cd.B == c.A);
      CHECK(cd.total() == c.total());
    }
  }
}

TEST_CASE("r = n - N_beta on alpha/beta tableaux") {
  for (int n = 1; n <= 6; ++n) {
    AbTableauStream s(n);
    while (auto t = s.next()) {
      auto c = counts(*t);
      REQUIRE(c.r == n - c.n_beta);
      REQUIRE(c.A + c.B == n);
    }
  }
}

TEST_CASE("serialization round trip") {
  for (int n = 1; n <= 4; ++n) {
    FourTableauStream s(n);
    while (auto t = s.next())
      REQUIRE(parse(serialize(*t)) == *t);
  }
  Tableau t = fixtures::showcase_size8();
  CHECK(parse(serialize(t)) == t);
  CHECK(serialize(Tableau::from_cells(1, std::vector<Cell>{{1, 1, S::Beta}})) ==
        R"({"cells":[{"col":1,"row":1,"sym":"beta"}],"n":1})");
}

TEST_CASE("parse error kinds") {
  CHECK_THROWS_AS(parse("{not json"), ParseError);
  CHECK_THROWS_AS(parse(R"({"n":1})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"n":1,"cells":[{"row":1,"col":1,"sym":"epsilon"}]})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"n":1,"cells":[]})"), ValidationError);
  CHECK_THROWS_AS(parse(R"({"n":1,"cells":[{"row":1,"col":2,"sym":"alpha"}]})"), StructuralError);
}

TEST_CASE("text rendering") {
  Tableau t = fixtures::showcase_size8();
  std::string txt = render_text(t);
  std::vector<std::string> rows;
  std::istringstream is(txt);
  for (std::string line; std::getline(is, line);)
    rows.push_back(line);
  REQUIRE(rows.size() == 8);
  for (int i = 0; i < 8; ++i)
    CHECK(rows[i].size() == static_cast<std::size_t>(8 - i));
  CHECK(rows[0] == ".a.....g");
  CHECK(rows[7] == "a");
}
