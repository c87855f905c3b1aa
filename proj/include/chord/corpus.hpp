#pragma once

#include <string>
#include <vector>

#include "chord/geometry.hpp"
#include "chord/split_surface.hpp"

namespace chord {

CubicForm fermat_curve(const Field& k);
CubicForm fermat_surface(const Field& k);
// X^3 + Y^3 + Z^3 + c W^3
CubicForm diagonal_surface(const Field& k, uint32_t cw);
// The 9-point all-Eckardt surface X^3 + Y^3 + Z^3 + a W^3 over F4.
CubicForm nine_point_surface();

// First smooth plane cubic over k in canonical form-index order.
CubicForm first_smooth_curve(const Field& k);

struct CorpusEntry {
  std::string name;
  int dim = 3;  // 2 = plane curve, 3 = surface
  Collinearity col;
};

// The fixed cubic corpus used by the equivalence/word acceptance sweeps:
// curves and surfaces over F2/F3/F4/F7 including the Fermat surfaces, the
// F4 9-point surface and the split surfaces. Deterministic.
std::vector<CorpusEntry> standard_corpus();

}  // namespace chord
