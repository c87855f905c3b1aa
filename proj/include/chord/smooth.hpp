#pragma once

#include <cstdint>
#include <vector>

#include "chord/geometry.hpp"

namespace chord {

// All singular points of a plane cubic with coordinates in F_{q^d}, d <= 3.
// Singular plane cubics always expose a singular point of degree <= 3
// (integral cubics have one rational double point; reducible ones are
// singular where components meet, at worst the vertices of a conjugate
// triangle of lines), so emptiness decides smoothness.
std::vector<ProjPoint> plane_curve_singular_points(const CubicForm& C);

// True iff no point over F_{q^d}, d <= 6, annihilates F and all partial
// derivatives. Implemented as an exact decision: rational points, gcds of
// the restrictions along rational lines, singular points of rational plane
// sections, and gcds along lines rational over F_{q^2}. A singular cubic
// surface always has a singular point of degree <= 4 (at most four isolated
// double points, else a singular line or conic carrying low-degree points),
// and each of those is caught by one of the scans, so the answer agrees
// with the direct d <= 6 extension scan; tests cross-validate against that
// scan on small fields.
bool is_smooth(const CubicForm& F);

// Byte table over all q^ncoeffs coefficient vectors: entry 1 iff the form is
// singular (has a point over F_{q^d}, d <= 6, killing F and the gradient),
// entry 0 for smooth and for the zero form. Used by the exhaustive
// enumeration pipelines; implements the literal d <= 6 condition via the
// F_p-linearity of (F(x), grad F(x)) in the coefficients.
std::vector<uint8_t> singular_form_table(const Field& k, int dim);

// Canonical form index used by the tables: coefficient c_m of the m-th
// canonical monomial is digit m (base q, least significant first).
uint64_t form_index(const CubicForm& F);
CubicForm form_from_index(const Field& k, int dim, uint64_t index);

}  // namespace chord
