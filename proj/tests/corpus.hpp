#pragma once

#include <string>
#include <vector>

namespace diffkit::testing {

struct CorpusEntry {
  std::size_t m;
  std::size_t params;  // 0 for Q, p for Q(u_1..u_p) with partial derivatives
  std::string text;
};

/// Differential polynomials exercising every grammar form.
inline const std::vector<CorpusEntry>& parse_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {1, 0, "x1"},
      {1, 0, "d1(x1) - x1"},
      {1, 0, "x1*d1(x1) - 1"},
      {1, 0, "d1(x1)^3 + x1"},
      {1, 0, "d1(d1(x1))"},
      {1, 0, "D[3](x1) - 2*d1(x1) + x1"},
      {1, 0, "1/2*x1^2 - 3/4"},
      {1, 0, "(x1 + 1)^3"},
      {1, 0, "-(x1 - x2)*(x1 + x2)"},
      {1, 0, "d1(x1*x2)"},
      {1, 0, "d1(x1^2 + x2^2 - 1)"},
      {1, 0, "x2*d1(x1) - x1*d1(x2)"},
      {1, 0, "(d1(x1) - x1)/3"},
      {1, 0, "0"},
      {1, 0, "7"},
      {1, 0, "-5/6"},
      {1, 0, "x1^0 + x1^1"},
      {1, 0, "D[2](x1)*D[2](x2) - d1(x1)^2"},
      {1, 0, "d1(d1(x1)*x1)"},
      {1, 0, "((x1))"},
      {1, 1, "u1*x1"},
      {1, 1, "d1(u1*x1)"},
      {1, 1, "u1^2*d1(x1) - 2*u1"},
      {1, 1, "x1/u1"},
      {1, 1, "(u1 + 1)/(u1 - 1)*x1 + 1/u1"},
      {1, 1, "d1(x1) - u1*x1"},
      {1, 1, "d1(1/u1)*x1"},
      {1, 1, "x1^2/(u1^2 + 1) - u1"},
      {1, 1, "(2*u1 - 3)*D[2](x1)"},
      {1, 1, "u1^-2*x1"},
      {1, 1, "-u1*x1 - u1"},
      {1, 1, "(u1 - u1)*x1 + 1"},
      {2, 0, "d1(x1) - x1"},
      {2, 0, "d2(x1) - x1"},
      {2, 0, "D[2,1](x2)^3"},
      {2, 0, "D[1,1](x1) - d1(d2(x1))"},
      {2, 0, "d2(d1(x1))"},
      {2, 0, "D[0,3](x1)*x2"},
      {2, 0, "d1(x1)*d2(x2) - d2(x1)*d1(x2)"},
      {2, 0, "D[2,2](x1) + D[3,1](x1) + D[1,3](x1)"},
      {2, 2, "D[2,1](x2)^3 + u1*x1"},
      {2, 2, "u1*d1(x1) + u2*d2(x1)"},
      {2, 2, "d1(u1*u2*x1)"},
      {2, 2, "d2(u1*u2*x1)"},
      {2, 2, "(u1 + u2)/(u1*u2)*x1"},
      {2, 2, "x1^2 - u1*x2"},
      {2, 2, "D[1,1](x1/u2)"},
      {2, 2, "u2^3*D[0,2](x2) - u1"},
      {3, 0, "D[1,1,1](x1) - x1"},
      {3, 0, "d3(x1) + d2(x1) + d1(x1)"},
      {3, 0, "D[0,0,2](x3)*D[1,0,0](x2)"},
      {3, 3, "u3*d3(x1) - u1*d1(x1)"},
  };
  return corpus;
}

}  // namespace diffkit::testing
