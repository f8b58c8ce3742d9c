#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "staircase/enumerate.hpp"
#include "staircase/errors.hpp"
#include "staircase/rational.hpp"
#include "staircase/tableau.hpp"

namespace staircase {

enum class Label : std::uint8_t { None = 0, U, Q };

inline char label_letter(Label l) { return l == Label::U ? 'u' : l == Label::Q ? 'q' : '.'; }

/// A tableau whose empty boxes carry u/q labels.
class FilledTableau {
public:
  FilledTableau() = default;
  explicit FilledTableau(Tableau base)
      : base_(std::move(base)), labels_(static_cast<std::size_t>(base_.size()) * (base_.size() + 1) / 2,
                                        Label::None) {}

  const Tableau& base() const { return base_; }
  int size() const { return base_.size(); }

  Label label(int row, int col) const { return labels_[index(row, col)]; }
  void set_label(int row, int col, Label l) { labels_[index(row, col)] = l; }

  int count(Label l) const {
    int c = 0;
    for (Label x : labels_)
      c += (x == l);
    return c;
  }

private:
  std::size_t index(int row, int col) const {
    const int n = base_.size();
    return static_cast<std::size_t>(row - 1) * n - static_cast<std::size_t>(row - 1) * (row - 2) / 2 +
           static_cast<std::size_t>(col - 1);
  }

  Tableau base_;
  std::vector<Label> labels_;
};

/// Row pass first: boxes left of a beta get u, left of a delta get q. Then each
/// remaining empty box looks at the nearest symbol below it in its column:
/// alpha/delta give u, beta/gamma give q.
inline FilledTableau fill_uq(const Tableau& t) {
  FilledTableau f(t);
  const int n = t.size();
  for (int i = 1; i <= n; ++i) {
    // the row symbol that governs a box is the nearest beta/delta to its right
    std::optional<Symbol> right;
    for (int j = t.row_length(i); j >= 1; --j) {
      auto s = t.at(i, j);
      if (s) {
        if (*s == Symbol::Beta || *s == Symbol::Delta)
          right = s;
        continue;
      }
      if (right)
        f.set_label(i, j, *right == Symbol::Beta ? Label::U : Label::Q);
    }
  }
  for (int j = 1; j <= n; ++j) {
    std::optional<Symbol> below;
    for (int i = n + 1 - j; i >= 1; --i) {
      if (auto s = t.at(i, j)) {
        below = s;
        continue;
      }
      if (f.label(i, j) != Label::None)
        continue;
      if (!below)
        throw StructuralError("box (" + std::to_string(i) + "," + std::to_string(j) +
                              ") has no symbol below it and none to its right");
      f.set_label(i, j, (*below == Symbol::Alpha || *below == Symbol::Delta) ? Label::U : Label::Q);
    }
  }
  return f;
}

/// Exponents of alpha, beta, gamma, delta, u, q in the filled weight.
using WeightVector = std::array<int, 6>;

inline WeightVector wtx(const FilledTableau& f) {
  auto c = counts(f.base());
  return {c.n_alpha, c.n_beta, c.n_gamma, c.n_delta, f.count(Label::U), f.count(Label::Q)};
}

inline WeightVector wtx(const Tableau& t) { return wtx(fill_uq(t)); }

inline Rational wtx_value(const WeightVector& e, const Rational& alpha, const Rational& beta,
                          const Rational& gamma, const Rational& delta, const Rational& q,
                          const Rational& u) {
  return pow(alpha, e[0]) * pow(beta, e[1]) * pow(gamma, e[2]) * pow(delta, e[3]) * pow(u, e[4]) *
         pow(q, e[5]);
}

/// Rows top to bottom: symbol letters, u/q for labelled boxes.
inline std::vector<std::string> render_rows(const FilledTableau& f) {
  std::vector<std::string> rows;
  const Tableau& t = f.base();
  for (int i = 1; i <= t.size(); ++i) {
    std::string r;
    for (int j = 1; j <= t.row_length(i); ++j) {
      auto s = t.at(i, j);
      r.push_back(s ? symbol_letter(*s) : label_letter(f.label(i, j)));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string render_text(const FilledTableau& f) {
  std::string out;
  for (const auto& r : render_rows(f))
    out += r + '\n';
  return out;
}

inline nlohmann::json to_json(const FilledTableau& f) {
  nlohmann::json doc = to_json(f.base());
  nlohmann::json labels = nlohmann::json::array();
  for (int i = 1; i <= f.size(); ++i)
    for (int j = 1; j <= f.base().row_length(i); ++j)
      if (Label l = f.label(i, j); l != Label::None)
        labels.push_back({{"row", i}, {"col", j}, {"label", std::string(1, label_letter(l))}});
  doc["labels"] = std::move(labels);
  return doc;
}

/// Total filled weight over all four-symbol tableaux of size n.
inline Rational z_full(int n, const Rational& alpha, const Rational& beta, const Rational& gamma,
                       const Rational& delta, const Rational& q, const Rational& u,
                       int cap = kDefaultFourCap) {
  for (const Rational* x : {&alpha, &beta, &gamma, &delta, &q, &u})
    require_nonnegative(*x, "weight parameter");
  Rational z = 0;
  FourTableauStream s(n, cap);
  for_each_tableau(s, [&](const Tableau& t) { z += wtx_value(wtx(t), alpha, beta, gamma, delta, q, u); });
  return z;
}

} // namespace staircase
