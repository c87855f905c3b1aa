#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "chord/abstract_cubic.hpp"
#include "chord/gf.hpp"

namespace chord {

// Exponent tuples of total degree deg in nvars variables, lexicographically
// descending. This fixes the coefficient order of every form in the project
// and of all serialized coefficient arrays.
const std::vector<std::array<uint8_t, 4>>& cubic_monomials(int dim);    // deg 3: 10 or 20
const std::vector<std::array<uint8_t, 4>>& quadric_monomials(int dim);  // deg 2: 6 or 10

// Point of P^dim, dim = 2 or 3. Coordinates are normalized so the first
// nonzero one is 1; two equal points have identical coordinate arrays.
struct ProjPoint {
  const Field* f = nullptr;
  int dim = 0;
  std::array<uint32_t, 4> c{};

  static ProjPoint make(const Field& F, int dim, std::span<const uint32_t> coords);
  ProjPoint embedded(const Field& K) const;

  bool operator==(const ProjPoint& o) const { return f == o.f && dim == o.dim && c == o.c; }
  bool operator<(const ProjPoint& o) const;  // deterministic: (p, e, dim, coords)
};

// Homogeneous cubic form on P^dim: 10 coefficients for dim 2, 20 for dim 3,
// in the canonical monomial order.
struct CubicForm {
  const Field* f = nullptr;
  int dim = 0;
  std::array<uint32_t, 20> c{};

  static CubicForm make(const Field& F, int dim, std::span<const uint32_t> coeffs);
  int ncoeffs() const { return dim == 2 ? 10 : 20; }
  CubicForm embedded(const Field& K) const;
  bool operator==(const CubicForm& o) const;
  bool operator<(const CubicForm& o) const;
};

struct Quadric {
  const Field* f = nullptr;
  int dim = 0;
  std::array<uint32_t, 10> c{};
  int ncoeffs() const { return dim == 2 ? 6 : 10; }
};

uint32_t eval_form(const CubicForm& F, std::span<const uint32_t> x);
uint32_t eval_form(const CubicForm& F, const ProjPoint& x);
uint32_t eval_quadric(const Quadric& Q, std::span<const uint32_t> x);

// Formal partial derivatives; grad[i] = dF/dX_i, entries beyond dim+1 unused.
std::array<Quadric, 4> gradient(const CubicForm& F);
// Directional derivative sum_i v_i dF/dX_i (x).
uint32_t dir_derivative(const std::array<Quadric, 4>& grad, int dim,
                        std::span<const uint32_t> x, std::span<const uint32_t> v);
bool is_smooth_point(const CubicForm& F, const std::array<Quadric, 4>& grad, const ProjPoint& x);

// Substitution X_i = sum_j cols[j][i] Y_j; the result is a cubic in the Y's.
CubicForm substitute_linear(const CubicForm& F, int out_dim,
                            std::span<const std::array<uint32_t, 4>> cols);

// Canonical order: grouped by position of the leading 1, then lexicographic
// on the remaining coordinates. First point of P^3 is (1:0:0:0).
std::vector<ProjPoint> enumerate_proj_points(const Field& F, int dim);
std::vector<ProjPoint> form_points(const CubicForm& F);

// Line of P^dim as its canonical reduced (RREF) span pair.
struct Line {
  const Field* f = nullptr;
  int dim = 0;
  ProjPoint a, b;

  static Line through(const ProjPoint& x, const ProjPoint& y);
  std::vector<ProjPoint> points() const;  // q+1 rational points
  bool contains(const ProjPoint& x) const;
  Line embedded(const Field& K) const;
  bool operator==(const Line& o) const { return a == o.a && b == o.b; }
  bool operator<(const Line& o) const { return a < o.a || (a == o.a && b < o.b); }
};

struct Plane {
  const Field* f = nullptr;
  std::array<uint32_t, 4> h{};  // normalized: first nonzero is 1

  static Plane make(const Field& F, std::span<const uint32_t> coeffs);
  bool contains(const ProjPoint& x) const;
  bool contains_line(const Line& l) const { return contains(l.a) && contains(l.b); }
  Plane embedded(const Field& K) const;
  bool operator==(const Plane& o) const { return f == o.f && h == o.h; }
  bool operator<(const Plane& o) const { return h < o.h; }
};

// Two lines of P^3 meet iff their four span points are linearly dependent.
bool lines_meet(const Line& a, const Line& b);

std::vector<Plane> enumerate_planes(const Field& F);
std::vector<Plane> planes_through(const Field& F, const ProjPoint& x);
std::vector<Plane> planes_through_line(const Line& l);
// The unique intersection point; throws if the line lies in the plane.
ProjPoint line_plane_intersection(const Line& l, const Plane& T);

// Composition result: the unique third point, or the whole line inside the
// form, or (kept for robustness; unreachable for distinct rational inputs)
// no rational third.
struct ThirdResult {
  enum Kind { Unique, LineInV, NoRationalThird } kind = NoRationalThird;
  ProjPoint z;
};

// Third intersection of the line xy with F, x != y, both smooth points of F.
ThirdResult third_point(const CubicForm& F, const ProjPoint& x, const ProjPoint& y);

// Tangent plane at a smooth point of a dim-3 form (coefficients = gradient).
Plane tangent_plane(const CubicForm& F, const ProjPoint& x);

// {z : (x,x,z) in L}: residual points of lines through x touching F doubly
// at x (z = x at triple contact), plus all rational points of lines in F
// through x. Works for dim 2 (tangent line) and dim 3 (tangent plane pencil).
std::vector<ProjPoint> tangent_compose(const CubicForm& F, const ProjPoint& x);

// All lines of P^3(K) inside the zero set, exhaustive scan.
std::vector<Line> lines_in_form(const CubicForm& F);
std::vector<Line> lines_in_form_over(const CubicForm& F, const Field& K);

// True iff the tangent-plane section has a triple point at x.
bool is_eckardt(const CubicForm& F, const ProjPoint& x);

// Plane section of a dim-3 form as a plane cubic with its chart.
struct PlaneCubic {
  CubicForm form;  // ternary cubic over the same field
  Plane plane;
  std::array<std::array<uint32_t, 4>, 3> basis;  // chart columns, P^2 -> plane

  ProjPoint push(const ProjPoint& u) const;  // P^2 point -> P^3 point on plane
  ProjPoint pull(const ProjPoint& x) const;  // inverse on the plane
};
PlaneCubic plane_section(const CubicForm& F, const Plane& T);

// Composition on a plane cubic; x == y uses the tangent line at x.
ThirdResult curve_third(const CubicForm& C, const ProjPoint& x, const ProjPoint& y);
// Group law x + y = e o (x o y) on a smooth plane cubic.
ProjPoint curve_add(const CubicForm& C, const ProjPoint& e, const ProjPoint& x,
                    const ProjPoint& y);

// The abstract cubic (S, L) of the smooth rational points of F: thirds of
// distinct pairs, tangent triples, and every triple of rational points of a
// line inside F (those pairs are flagged line-internal).
struct Collinearity {
  AbstractCubic cubic;
  std::vector<ProjPoint> points;  // canonical order, indices match the cubic
  int index_of(const ProjPoint& x) const;
};
Collinearity collinearity(const CubicForm& F);

}  // namespace chord
