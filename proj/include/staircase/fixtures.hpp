#pragma once

#include <vector>

#include "staircase/tableau.hpp"

namespace staircase::fixtures {

/// Size-8 four-symbol tableau with weight alpha^5 beta^2 delta^3 gamma^3; its u/q
/// filling has 13 u's and 10 q's.
inline Tableau showcase_size8() {
  using S = Symbol;
  const std::vector<Cell> cells{
      {1, 2, S::Alpha}, {1, 8, S::Gamma}, {2, 2, S::Beta},  {2, 5, S::Alpha}, {2, 7, S::Gamma},
      {3, 3, S::Alpha}, {3, 6, S::Gamma}, {4, 5, S::Delta}, {5, 2, S::Delta}, {5, 4, S::Alpha},
      {6, 3, S::Delta}, {7, 2, S::Beta},  {8, 1, S::Alpha},
  };
  return Tableau::from_cells(8, cells);
}

/// Rendering of showcase_size8() after u/q labelling, rows top to bottom.
inline std::vector<std::string> showcase_size8_filled_rows() {
  return {
      "uauuuqqg",
      "ubuuaqg",
      "uuauug",
      "qqqqd",
      "qdua",
      "qqd",
      "ub",
      "a",
  };
}

} // namespace staircase::fixtures
