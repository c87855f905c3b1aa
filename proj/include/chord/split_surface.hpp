#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "chord/geometry.hpp"

namespace chord {

struct BaseConfig {
  const Field* f = nullptr;
  std::array<ProjPoint, 6> base;  // 6 points of P^2 in general position
};

// Distinct, no 3 collinear, no conic through all 6.
bool check_general_position(const Field& k, std::span<const ProjPoint> pts);
// First 6-tuple in canonical order extending the standard frame; nullopt if
// the plane has none.
std::optional<BaseConfig> find_general_position(const Field& k);

// The blow-up of 6 general plane points presented as a smooth cubic surface
// V in P^3 together with the blow-down p and its inverse. forward() is the
// map P^2 \ base -> V given by the cubic system through the base points,
// blowdown() its inverse with exceptional lines contracted to base points.
class SplitSurface {
 public:
  static SplitSurface build(const BaseConfig& cfg);

  const Field& field() const { return *base_.f; }
  const BaseConfig& base() const { return base_; }
  const std::array<CubicForm, 4>& system() const { return sys_; }
  const CubicForm& surface() const { return V_; }
  const std::array<Line, 6>& exceptional_lines() const { return exc_; }
  const std::vector<ProjPoint>& points() const { return vpoints_; }     // V(k)
  const std::vector<ProjPoint>& interior() const { return interior_; }  // P

  bool on_exceptional(const ProjPoint& x) const;
  // Index of the exceptional line through x, -1 if none (any field).
  int exceptional_index(const ProjPoint& x) const;
  bool is_base_point(const ProjPoint& u) const;

  ProjPoint forward(const ProjPoint& u) const;  // any extension of the base field
  // V -> P^2; contracts E_i to the i-th base point.
  ProjPoint blowdown(const ProjPoint& w) const;

  // Plane section data for the modified composition: the section chart and
  // the interpolated image cubic p(C). Throws when the section contains an
  // exceptional line.
  struct Section {
    PlaneCubic chart;
    CubicForm image;  // p(C) in P^2 over the base field
  };
  const Section& section(const Plane& T) const;

  const std::array<CubicForm, 4>& system_over(const Field& K) const;

 private:
  BaseConfig base_;
  std::array<CubicForm, 4> sys_;
  CubicForm V_;
  std::array<Line, 6> exc_;
  std::vector<ProjPoint> vpoints_, interior_;
  std::set<ProjPoint> interior_set_;
  mutable std::map<const Field*, std::array<CubicForm, 4>> sys_ext_;
  mutable std::map<const Field*, std::array<Line, 6>> exc_ext_;
  mutable std::map<const Field*, std::unordered_map<uint64_t, uint64_t>> blowdown_tab_;
  mutable std::map<Plane, Section> sections_;
  const std::unordered_map<uint64_t, uint64_t>& blowdown_table(const Field& K) const;
  const std::array<Line, 6>& exceptional_over(const Field& K) const;
};

// x o_{(C,p)} y on the section C = V cap T: compose the blowdown images on
// the interpolated plane cubic p(C) and pull back. Points on exceptional
// lines map to base points. nullopt = the image composition lands on a base
// point, so the result is a whole exceptional line (the exceptional marker).
std::optional<ProjPoint> compose_cp(const SplitSurface& S, const Plane& T,
                                    const ProjPoint& x, const ProjPoint& y);

// The multivalued diagonal x o_{(C,p)} x: the tangent values of the image
// cubic at p(x) when it is smooth there (a whole line when the tangent lies
// in the image), and the residual pencil through the node when T is the
// tangent plane at x.
std::vector<ProjPoint> compose_cp_diagonal_values(const SplitSurface& S, const Plane& T,
                                                  const ProjPoint& x);

// Twisted cubic p^{-1}(l) for a rational plane line l.
struct TwistedCubic {
  Line plane_line;                 // l in P^2
  std::vector<ProjPoint> points;   // p^{-1}(l \ base)
  std::vector<int> base_hits;      // indices of base points on l (boundary flag)
};
TwistedCubic twisted_cubic(const SplitSurface& S, const Line& l);
TwistedCubic gamma_through(const SplitSurface& S, const ProjPoint& a, const ProjPoint& b);

// Triple of lines on a cubic surface for the line-based composition.
struct LineTriple {
  Line l1, l2, m;
};
// Property (A): l1, l2 skew and m meets both.
bool lambda_property_a(const LineTriple& L);

// u o_{(T,Lambda)} w = (x o y) o [z o (u o w)], x = l1 cap T, y = l2 cap T,
// z = m cap T. All arguments over one common field; u = w uses the tangent
// of the section curve. Throws on undefined intermediate compositions.
ProjPoint compose_t_lambda(const CubicForm& V, const LineTriple& L, const Plane& T,
                           const ProjPoint& u, const ProjPoint& w);

// The strict transform of the line through base points i and j: the unique
// line of V meeting exactly E_i and E_j among the exceptional lines.
Line connecting_line(const SplitSurface& S, int i, int j);

// Does the blowdown image of the line m lie on a plane line?
bool blowdown_image_is_line(const SplitSurface& S, const Line& m);

struct CheckOutcome {
  bool evaluated = false;  // false: some subexpression was undefined
  bool holds = false;
  std::string reason;
};

// u o_{(C,p)} w = (x o y) o [(x o_{(C,p)} y) o (u o w)] for points on C.
CheckOutcome claim_576_check(const SplitSurface& S, const Plane& T, const ProjPoint& x,
                             const ProjPoint& y, const ProjPoint& u, const ProjPoint& w);

// Group-law route: u*w = (x*y)(x o y)^{-1}(u o w) in the abelian structure
// of a smooth section, anchored at the compose_cp value of (x, y).
CheckOutcome eq_51_check(const SplitSurface& S, const Plane& T, const ProjPoint& x,
                         const ProjPoint& y, const ProjPoint& u, const ProjPoint& w);

// With l1, l2 exceptional and p(m) a line: m cap T = (l1 cap T) o_{(C,p)} (l2 cap T).
CheckOutcome claim_577_check(const SplitSurface& S, int i, int j, const Plane& T);

// Theorem 5.3: the single point x generates the complement of the
// exceptional lines under the tangent sweeps x' -> x' o_{(C,p)} x'. The
// first sweep alone can miss a few targets (for each exceptional line E
// there may be one y whose unique tangency plane contains E, so no
// admissible section realizes it); the closure covers them, and the report
// keeps the first-sweep gap explicit.
struct Theorem53Report {
  bool covered = false;              // closure reaches all of interior()
  int rounds = 0;                    // sweeps until coverage (1 = one-step)
  std::vector<ProjPoint> missed;     // uncovered after the closure
  std::vector<ProjPoint> first_sweep_missed;
  // witness plane and sweep origin for each reached target
  std::map<ProjPoint, std::pair<ProjPoint, Plane>> witness;
  int sections_used = 0, sections_skipped = 0;
};
Theorem53Report theorem_53_check(const SplitSurface& S, const ProjPoint& x);

// Distinct-only closure under x o_{(C,p)} y over all planes through the pair.
struct Theorem52Result {
  std::vector<ProjPoint> reached;
  int rounds = 0;
  bool complete = false;
  bool generated_all = false;
};
Theorem52Result theorem_52_closure(const SplitSurface& S, std::span<const ProjPoint> seed,
                                   int max_rounds = 64);

// t^{-1}(t(x) o t(y)) ~ x o y mod U3 for t a product of point reflections of
// a smooth plane cubic.
bool lemma_56_check(const CubicForm& C, std::span<const ProjPoint> reflections,
                    const ProjPoint& x, const ProjPoint& y);

// U3 of the full point set V(k) is trivial.
bool corollary_54_check(const SplitSurface& S);

}  // namespace chord
