#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "staircase/errors.hpp"
#include "staircase/rational.hpp"

namespace staircase {

enum class Symbol : std::uint8_t { Alpha = 1, Beta = 2, Gamma = 3, Delta = 4 };

/// Alpha and Gamma may not have anything above them in their column.
constexpr bool is_column_type(Symbol s) { return s == Symbol::Alpha || s == Symbol::Gamma; }
/// Beta and Delta may not have anything left of them in their row.
constexpr bool is_row_type(Symbol s) { return s == Symbol::Beta || s == Symbol::Delta; }

inline std::string_view symbol_name(Symbol s) {
  switch (s) {
  case Symbol::Alpha: return "alpha";
  case Symbol::Beta: return "beta";
  case Symbol::Gamma: return "gamma";
  case Symbol::Delta: return "delta";
  }
  return "?";
}

inline char symbol_letter(Symbol s) {
  switch (s) {
  case Symbol::Alpha: return 'a';
  case Symbol::Beta: return 'b';
  case Symbol::Gamma: return 'g';
  case Symbol::Delta: return 'd';
  }
  return '?';
}

inline std::optional<Symbol> symbol_from_name(std::string_view name) {
  if (name == "alpha") return Symbol::Alpha;
  if (name == "beta") return Symbol::Beta;
  if (name == "gamma") return Symbol::Gamma;
  if (name == "delta") return Symbol::Delta;
  return std::nullopt;
}

/// Reflection partner: alpha<->beta, gamma<->delta.
constexpr Symbol mirror(Symbol s) {
  switch (s) {
  case Symbol::Alpha: return Symbol::Beta;
  case Symbol::Beta: return Symbol::Alpha;
  case Symbol::Gamma: return Symbol::Delta;
  case Symbol::Delta: return Symbol::Gamma;
  }
  return s;
}

struct Cell {
  int row = 0;
  int col = 0;
  Symbol sym = Symbol::Alpha;

  bool operator==(const Cell&) const = default;
};

/// Staircase tableau of size n: boxes (row, col), 1-indexed from the NW corner,
/// exist iff row + col <= n + 1. Row i has n + 1 - i boxes; the diagonal box of
/// row i is (i, n + 1 - i).
class Tableau {
public:
  Tableau() = default;
  explicit Tableau(int n) : n_(n), boxes_(static_cast<std::size_t>(n) * (n + 1) / 2, 0) {
    if (n < 0)
      throw DomainError("tableau size must be nonnegative");
  }

  /// Builds a tableau from a cell list. Throws StructuralError for boxes outside the
  /// shape or boxes given twice; the filling rules are not checked here.
  static Tableau from_cells(int n, std::span<const Cell> cells) {
    Tableau t(n);
    for (const Cell& c : cells) {
      if (!t.contains(c.row, c.col))
        throw StructuralError("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                              ") lies outside the staircase of size " + std::to_string(n));
      if (t.at(c.row, c.col))
        throw StructuralError("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                              ") given twice");
      t.set(c.row, c.col, c.sym);
    }
    return t;
  }

  int size() const { return n_; }
  bool contains(int row, int col) const { return row >= 1 && col >= 1 && row + col <= n_ + 1; }
  int row_length(int row) const { return n_ + 1 - row; }
  int diagonal_col(int row) const { return n_ + 1 - row; }

  std::optional<Symbol> at(int row, int col) const {
    std::uint8_t v = boxes_[index(row, col)];
    if (v == 0)
      return std::nullopt;
    return static_cast<Symbol>(v);
  }

  void set(int row, int col, std::optional<Symbol> s) {
    boxes_[index(row, col)] = s ? static_cast<std::uint8_t>(*s) : 0;
  }

  /// Filled boxes in (row, col) order.
  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= row_length(i); ++j)
        if (auto s = at(i, j))
          out.push_back({i, j, *s});
    return out;
  }

  bool operator==(const Tableau&) const = default;
  auto operator<=>(const Tableau&) const = default;

  /// Compact byte key, one byte per box; handy for hashing and law comparisons.
  std::string key() const {
    std::string k = std::to_string(n_) + ':';
    k.reserve(k.size() + boxes_.size());
    for (std::uint8_t b : boxes_)
      k.push_back(static_cast<char>('0' + b));
    return k;
  }

private:
  std::size_t index(int row, int col) const {
    // rows 1..row-1 have widths n, n-1, ..., n-row+2
    std::size_t before = static_cast<std::size_t>(row - 1) * n_ -
                         static_cast<std::size_t>(row - 1) * (row - 2) / 2;
    return before + static_cast<std::size_t>(col - 1);
  }

  int n_ = 0;
  std::vector<std::uint8_t> boxes_;
};

enum class Rule { DiagonalFilled, RowLeftEmpty, ColumnAboveEmpty };

inline std::string_view rule_label(Rule r) {
  switch (r) {
  case Rule::DiagonalFilled: return "(ii)";
  case Rule::RowLeftEmpty: return "(iii)";
  case Rule::ColumnAboveEmpty: return "(iv)";
  }
  return "?";
}

struct Violation {
  Rule rule;
  int row;
  int col;

  bool operator==(const Violation&) const = default;

  std::string describe() const {
    std::string what;
    switch (rule) {
    case Rule::DiagonalFilled: what = "empty diagonal box"; break;
    case Rule::RowLeftEmpty: what = "beta/delta with a filled box to its left"; break;
    case Rule::ColumnAboveEmpty: what = "alpha/gamma with a filled box above it"; break;
    }
    return "rule " + std::string(rule_label(rule)) + " at (" + std::to_string(row) + "," +
           std::to_string(col) + "): " + what;
  }
};

/// Every breach of the filling rules; an empty result means the tableau is valid.
inline std::vector<Violation> validate(const Tableau& t) {
  std::vector<Violation> out;
  const int n = t.size();
  for (int i = 1; i <= n; ++i)
    if (!t.at(i, n + 1 - i))
      out.push_back({Rule::DiagonalFilled, i, n + 1 - i});
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= t.row_length(i); ++j) {
      auto s = t.at(i, j);
      if (!s)
        continue;
      if (is_row_type(*s)) {
        for (int jj = 1; jj < j; ++jj)
          if (t.at(i, jj)) {
            out.push_back({Rule::RowLeftEmpty, i, j});
            break;
          }
      } else {
        for (int ii = 1; ii < i; ++ii)
          if (t.at(ii, j)) {
            out.push_back({Rule::ColumnAboveEmpty, i, j});
            break;
          }
      }
    }
  }
  return out;
}

/// Validates a raw cell list; cells outside the shape raise StructuralError before
/// any rule is checked.
inline std::vector<Violation> validate(int n, std::span<const Cell> cells) {
  return validate(Tableau::from_cells(n, cells));
}

inline bool is_valid(const Tableau& t) { return validate(t).empty(); }

struct SymbolCounts {
  int n_alpha = 0;
  int n_beta = 0;
  int n_gamma = 0;
  int n_delta = 0;
  int A = 0;            ///< alphas on the diagonal
  int B = 0;            ///< betas on the diagonal
  int diag_gamma = 0;
  int diag_delta = 0;
  int r = 0;            ///< rows whose leftmost symbol is alpha

  int total() const { return n_alpha + n_beta + n_gamma + n_delta; }
  bool operator==(const SymbolCounts&) const = default;
};

inline SymbolCounts counts(const Tableau& t) {
  SymbolCounts c;
  const int n = t.size();
  for (int i = 1; i <= n; ++i) {
    bool leftmost_seen = false;
    for (int j = 1; j <= t.row_length(i); ++j) {
      auto s = t.at(i, j);
      if (!s)
        continue;
      if (!leftmost_seen) {
        leftmost_seen = true;
        if (*s == Symbol::Alpha)
          ++c.r;
      }
      const bool diag = (j == n + 1 - i);
      switch (*s) {
      case Symbol::Alpha: ++c.n_alpha; c.A += diag; break;
      case Symbol::Beta: ++c.n_beta; c.B += diag; break;
      case Symbol::Gamma: ++c.n_gamma; c.diag_gamma += diag; break;
      case Symbol::Delta: ++c.n_delta; c.diag_delta += diag; break;
      }
    }
  }
  return c;
}

/// Exponent vector (N_alpha, N_beta, N_gamma, N_delta) of the weight monomial.
inline std::array<int, 4> exponents(const Tableau& t) {
  SymbolCounts c = counts(t);
  return {c.n_alpha, c.n_beta, c.n_gamma, c.n_delta};
}

inline Rational weight(const Tableau& t, const Rational& alpha, const Rational& beta,
                       const Rational& gamma, const Rational& delta) {
  auto e = exponents(t);
  return pow(alpha, e[0]) * pow(beta, e[1]) * pow(gamma, e[2]) * pow(delta, e[3]);
}

/// Subtableau with (i, j) as its top-left box: drops the first i-1 rows and j-1 columns.
inline Tableau subtableau(const Tableau& t, int i, int j) {
  const int n = t.size();
  if (i < 1 || j < 1 || i + j > n + 1)
    throw DomainError("subtableau corner (" + std::to_string(i) + "," + std::to_string(j) +
                      ") outside size " + std::to_string(n));
  const int m = n - i - j + 2;
  Tableau out(m);
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= m + 1 - r; ++c)
      out.set(r, c, t.at(r + i - 1, c + j - 1));
  return out;
}

/// Reflection in the NW-SE diagonal with alpha<->beta and gamma<->delta.
inline Tableau dagger(const Tableau& t) {
  const int n = t.size();
  Tableau out(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n + 1 - i; ++j)
      if (auto s = t.at(i, j))
        out.set(j, i, mirror(*s));
  return out;
}

/// Tableau with the given symbols on the diagonal (row order) and nothing else.
inline Tableau diagonal_tableau(std::span<const Symbol> diag_by_row) {
  const int n = static_cast<int>(diag_by_row.size());
  Tableau t(n);
  for (int i = 1; i <= n; ++i)
    t.set(i, n + 1 - i, diag_by_row[i - 1]);
  return t;
}

inline Tableau constant_diagonal(int n, Symbol s) {
  std::vector<Symbol> d(static_cast<std::size_t>(n), s);
  return diagonal_tableau(d);
}

/// Left-aligned rows, one character per box: '.', 'a', 'b', 'g', 'd'.
inline std::string render_text(const Tableau& t) {
  std::string out;
  for (int i = 1; i <= t.size(); ++i) {
    for (int j = 1; j <= t.row_length(i); ++j) {
      auto s = t.at(i, j);
      out.push_back(s ? symbol_letter(*s) : '.');
    }
    out.push_back('\n');
  }
  return out;
}

inline nlohmann::json to_json(const Tableau& t) {
  nlohmann::json cells = nlohmann::json::array();
  for (const Cell& c : t.cells())
    cells.push_back({{"row", c.row}, {"col", c.col}, {"sym", symbol_name(c.sym)}});
  return {{"n", t.size()}, {"cells", std::move(cells)}};
}

/// Single-line JSON document {"n":..,"cells":[{"row":..,"col":..,"sym":..}]}.
inline std::string serialize(const Tableau& t) { return to_json(t).dump(); }

/// Inverse of to_json. Malformed documents raise ParseError, out-of-shape cells
/// StructuralError, and rule breaches ValidationError.
inline Tableau from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("cells"))
    throw ParseError("tableau document needs \"n\" and \"cells\"");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0 ||
      doc["n"].get<long long>() > 4096)
    throw ParseError("\"n\" must be a nonnegative integer");
  if (!doc["cells"].is_array())
    throw ParseError("\"cells\" must be an array");
  const int n = doc["n"].get<int>();
  std::vector<Cell> cells;
  for (const auto& c : doc["cells"]) {
    if (!c.is_object() || !c.contains("row") || !c.contains("col") || !c.contains("sym") ||
        !c["row"].is_number_integer() || !c["col"].is_number_integer() || !c["sym"].is_string())
      throw ParseError("each cell needs integer \"row\", \"col\" and string \"sym\"");
    auto sym = symbol_from_name(c["sym"].get<std::string>());
    if (!sym)
      throw ParseError("unknown symbol \"" + c["sym"].get<std::string>() + "\"");
    cells.push_back({c["row"].get<int>(), c["col"].get<int>(), *sym});
  }
  Tableau t = Tableau::from_cells(n, cells);
  auto violations = validate(t);
  if (!violations.empty())
    throw ValidationError(violations.front().describe() +
                          (violations.size() > 1
                               ? " (+" + std::to_string(violations.size() - 1) + " more)"
                               : std::string()));
  return t;
}

inline Tableau parse(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

} // namespace staircase
