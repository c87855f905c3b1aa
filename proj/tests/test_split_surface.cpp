#include "chord/split_surface.hpp"

#include <set>

#include "chord/corpus.hpp"
#include "chord/rng.hpp"
#include "chord/smooth.hpp"
#include "doctest.h"

using namespace chord;

namespace {

const SplitSurface& f7_surface() {
  static const SplitSurface S = [] {
    auto cfg = find_general_position(Field::get(7, 1));
    REQUIRE(cfg.has_value());
    return SplitSurface::build(*cfg);
  }();
  return S;
}

ProjPoint pt(const Field& k, std::initializer_list<uint32_t> cs) {
  std::vector<uint32_t> v(cs);
  return ProjPoint::make(k, static_cast<int>(v.size()) - 1, v);
}

// Independent third-intersection search on a plane cubic: factor the
// restriction to the line through px and py by scanning roots of the
// univariate restriction with synthetic division.
ProjPoint brute_third_on_curve(const CubicForm& C, const ProjPoint& px, const ProjPoint& py) {
  const Field& k = *C.f;
  // g(t) = C(px + t py), plus the point py itself at t = infinity.
  // coefficients of g via evaluation at 4 field points (degree <= 3)
  std::vector<uint32_t> ts, vals;
  for (uint32_t t = 0; t < 4; ++t) {
    std::array<uint32_t, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = k.add(px.c[i], k.mul(t, py.c[i]));
    ts.push_back(t);
    std::array<uint32_t, 3> cc = c;
    vals.push_back(eval_form(C, std::span<const uint32_t>(cc.data(), 3)));
  }
  // Lagrange interpolation for the cubic polynomial g
  std::array<uint32_t, 4> g{};
  for (int i = 0; i < 4; ++i) {
    // basis polynomial through ts[i]
    std::array<uint32_t, 4> num{};
    num[0] = k.one();
    int deg = 0;
    uint32_t den = k.one();
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      // multiply num by (t - ts[j])
      std::array<uint32_t, 4> next{};
      for (int d = 0; d <= deg; ++d) {
        next[d + 1] = k.add(next[d + 1], num[d]);
        next[d] = k.add(next[d], k.mul(k.neg(ts[j]), num[d]));
      }
      num = next;
      ++deg;
      den = k.mul(den, k.sub(ts[i], ts[j]));
    }
    uint32_t scale = k.mul(vals[i], k.inv(den));
    for (int d = 0; d < 4; ++d) g[d] = k.add(g[d], k.mul(scale, num[d]));
  }
  // multiplicities of the roots t0 (for px) and, via degree drop, infinity
  int inf_mult = 0;
  std::vector<uint32_t> poly(g.begin(), g.end());
  while (!poly.empty() && poly.back() == 0) {
    poly.pop_back();
    ++inf_mult;
  }
  REQUIRE(!poly.empty());
  std::vector<uint32_t> roots;
  for (uint32_t t = 0; t < k.q() && poly.size() > 1; ++t) {
    while (poly.size() > 1) {
      uint32_t acc = 0;
      for (size_t d = poly.size(); d-- > 0;) acc = k.add(k.mul(acc, t), poly[d]);
      if (acc != 0) break;
      // synthetic division by (t - root)
      std::vector<uint32_t> qpoly(poly.size() - 1);
      uint32_t carry = 0;
      for (size_t d = poly.size(); d-- > 1;) {
        carry = k.add(poly[d], k.mul(t, carry));
        qpoly[d - 1] = carry;
      }
      poly = qpoly;
      roots.push_back(t);
    }
  }
  std::vector<ProjPoint> cycle;
  for (uint32_t t : roots) {
    std::array<uint32_t, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = k.add(px.c[i], k.mul(t, py.c[i]));
    cycle.push_back(ProjPoint::make(k, 2, c));
  }
  for (int i = 0; i < inf_mult; ++i) cycle.push_back(py);
  REQUIRE(cycle.size() == 3);
  // remove one copy of px and one of py; the leftover is the third point
  auto erase_one = [&](const ProjPoint& v) {
    for (auto it = cycle.begin(); it != cycle.end(); ++it)
      if (*it == v) {
        cycle.erase(it);
        return;
      }
    REQUIRE(false);
  };
  erase_one(px);
  erase_one(py);
  return cycle[0];
}

}  // namespace

TEST_SUITE("split_surface") {
  TEST_CASE("general position checks") {
    const Field& f7 = Field::get(7, 1);
    // three collinear points fail
    std::vector<ProjPoint> bad{pt(f7, {1, 0, 0}), pt(f7, {0, 1, 0}), pt(f7, {1, 1, 0}),
                               pt(f7, {0, 0, 1}), pt(f7, {1, 2, 3}), pt(f7, {1, 3, 2})};
    CHECK_FALSE(check_general_position(f7, bad));
    // six points on the conic X^2 - YZ fail
    std::vector<ProjPoint> conic;
    for (const auto& x : enumerate_proj_points(f7, 2)) {
      uint32_t v = f7.sub(f7.mul(x.c[0], x.c[0]), f7.mul(x.c[1], x.c[2]));
      if (v == 0 && conic.size() < 6) conic.push_back(x);
    }
    REQUIRE(conic.size() == 6);
    CHECK_FALSE(check_general_position(f7, conic));
    // the searched tuple passes
    auto cfg = find_general_position(f7);
    REQUIRE(cfg.has_value());
    CHECK(check_general_position(f7, cfg->base));
    CHECK_THROWS_AS(check_general_position(
                        f7, std::vector<ProjPoint>{bad[0], bad[0], bad[1], bad[2], bad[3],
                                                   bad[4]}),
                    std::invalid_argument);
  }

  TEST_CASE("build bookkeeping over F7") {
    const auto& S = f7_surface();
    CHECK(S.points().size() == 99);    // 57 - 6 + 6*8
    CHECK(S.interior().size() == 51);  // 57 - 6
    CHECK(is_smooth(S.surface()));
    // exceptional lines lie on V, are pairwise disjoint, 8 points each
    for (int i = 0; i < 6; ++i) {
      const Line& E = S.exceptional_lines()[i];
      for (const auto& x : E.points()) CHECK(eval_form(S.surface(), x) == 0);
      CHECK(E.points().size() == 8);
      for (int j = i + 1; j < 6; ++j) {
        std::set<ProjPoint> a;
        for (const auto& x : E.points()) a.insert(x);
        for (const auto& y : S.exceptional_lines()[j].points()) CHECK(!a.count(y));
      }
    }
    // 27 lines, all rational
    CHECK(lines_in_form(S.surface()).size() == 27);
  }

  TEST_CASE("forward and blowdown invert each other") {
    const auto& S = f7_surface();
    const Field& f7 = S.field();
    std::set<ProjPoint> interior(S.interior().begin(), S.interior().end());
    int count = 0;
    for (const auto& u : enumerate_proj_points(f7, 2)) {
      if (S.is_base_point(u)) continue;
      auto w = S.forward(u);
      CHECK(interior.count(w));
      CHECK(S.blowdown(w) == u);
      ++count;
    }
    CHECK(count == 51);
    // exceptional points blow down to base points
    for (int i = 0; i < 6; ++i)
      for (const auto& x : S.exceptional_lines()[i].points())
        CHECK(S.blowdown(x) == S.base().base[i]);
  }

  TEST_CASE("sections against the plain composition") {
    // with the identity chart of the secant plane the modified composition
    // is the plain one: check the section machinery against third_point
    const auto& S = f7_surface();
    const Field& f7 = S.field();
    Rng rng(11);
    int checked = 0;
    while (checked < 40) {
      const auto& a = S.points()[rng.below(S.points().size())];
      const auto& b = S.points()[rng.below(S.points().size())];
      if (a == b) continue;
      auto r = third_point(S.surface(), a, b);
      if (r.kind != ThirdResult::Unique) continue;
      for (const auto& T : planes_through_line(Line::through(a, b))) {
        PlaneCubic sec = plane_section(S.surface(), T);
        auto rc = curve_third(sec.form, sec.pull(a), sec.pull(b));
        REQUIRE(rc.kind == ThirdResult::Unique);
        CHECK(sec.push(rc.z) == r.z);
        ++checked;
        break;
      }
    }
    (void)f7;
  }

  TEST_CASE("compose_cp involution and brute-force oracle") {
    const auto& S = f7_surface();
    Rng rng(21);
    int done = 0, oracle_checked = 0;
    while (done < 60) {
      const auto& x = S.interior()[rng.below(S.interior().size())];
      const auto& y = S.interior()[rng.below(S.interior().size())];
      if (x == y) continue;
      auto planes = planes_through_line(Line::through(x, y));
      const Plane& T = planes[rng.below(planes.size())];
      std::optional<ProjPoint> z;
      try {
        z = compose_cp(S, T, x, y);
      } catch (const std::invalid_argument&) {
        continue;
      }
      ++done;
      if (!z) continue;
      // brute-force the third intersection on the image cubic
      const auto& sec = S.section(T);
      ProjPoint expect = brute_third_on_curve(sec.image, S.blowdown(x), S.blowdown(y));
      ++oracle_checked;
      CHECK(S.blowdown(*z) == expect);
      if (!S.on_exceptional(*z)) {
        auto back = compose_cp(S, T, x, *z);
        REQUIRE(back.has_value());
        CHECK(*back == y);
      }
    }
    CHECK(oracle_checked > 20);
  }

  TEST_CASE("twisted cubics") {
    const auto& S = f7_surface();
    Rng rng(31);
    for (int t = 0; t < 25; ++t) {
      const auto& a = S.interior()[rng.below(S.interior().size())];
      const auto& b = S.interior()[rng.below(S.interior().size())];
      if (a == b) continue;
      auto G = gamma_through(S, a, b);
      CHECK(std::count(G.points.begin(), G.points.end(), a) == 1);
      CHECK(std::count(G.points.begin(), G.points.end(), b) == 1);
      if (G.base_hits.empty()) CHECK(G.points.size() == 8);
      // uniqueness: any other gamma through both must be the same line
      auto G2 = gamma_through(S, b, a);
      CHECK(G.plane_line == G2.plane_line);
    }
    // two distinct twisted cubics share at most one point off the
    // exceptional lines
    const Field& f7 = S.field();
    auto l1 = Line::through(pt(f7, {1, 2, 5}), pt(f7, {1, 3, 1}));
    auto l2 = Line::through(pt(f7, {1, 2, 6}), pt(f7, {1, 3, 2}));
    if (!(l1 == l2)) {
      auto G1 = twisted_cubic(S, l1), G2 = twisted_cubic(S, l2);
      int common = 0;
      for (const auto& p : G1.points)
        common += std::count(G2.points.begin(), G2.points.end(), p);
      CHECK(common <= 1);
    }
  }

  TEST_CASE("claim 5.7.7 configurations") {
    const auto& S = f7_surface();
    // the connecting line meets exactly its two exceptionals and blows down
    // to a plane line
    auto m = connecting_line(S, 0, 1);
    CHECK(blowdown_image_is_line(S, m));
    LineTriple L{S.exceptional_lines()[0], S.exceptional_lines()[1], m};
    CHECK(lambda_property_a(L));
    // a conic transform (meets 5 exceptionals) does not blow down to a line
    for (const auto& l : lines_in_form(S.surface())) {
      int meets = 0;
      bool is_exc = false;
      for (const auto& e : S.exceptional_lines()) {
        is_exc |= l == e;
        meets += lines_meet(l, e) ? 1 : 0;
      }
      if (is_exc) continue;
      if (meets == 5) {
        CHECK_FALSE(blowdown_image_is_line(S, l));
        break;
      }
    }

    Rng rng(41);
    auto planes = enumerate_planes(S.field());
    int done = 0;
    while (done < 30) {
      int i = static_cast<int>(rng.below(6)), j = static_cast<int>(rng.below(6));
      if (i == j) continue;
      const Plane& T = planes[rng.below(planes.size())];
      auto out = claim_577_check(S, i, j, T);
      if (!out.evaluated) continue;
      CHECK(out.holds);
      ++done;
    }
  }

  TEST_CASE("claim 5.7.6 and eq 5.1 on sampled tuples") {
    const auto& S = f7_surface();
    Rng rng(51);
    auto planes = enumerate_planes(S.field());
    int done576 = 0, done51 = 0;
    while (done576 < 40 || done51 < 25) {
      const Plane& T = planes[rng.below(planes.size())];
      // gather rational section points off exceptional lines
      std::vector<ProjPoint> cpts;
      for (const auto& w : S.interior())
        if (T.contains(w)) cpts.push_back(w);
      if (cpts.size() < 4) continue;
      auto pick = [&] { return cpts[rng.below(cpts.size())]; };
      ProjPoint x = pick(), y = pick(), u = pick(), w = pick();
      if (x == y || u == w) continue;
      auto c576 = claim_576_check(S, T, x, y, u, w);
      if (c576.evaluated) {
        CHECK(c576.holds);
        ++done576;
      }
      auto c51 = eq_51_check(S, T, x, y, u, w);
      if (c51.evaluated) {
        CHECK(c51.holds);
        ++done51;
      }
    }
  }

  TEST_CASE("compose_t_lambda matches compose_cp for exceptional-line triples") {
    const auto& S = f7_surface();
    Rng rng(61);
    auto planes = enumerate_planes(S.field());
    int done = 0;
    while (done < 25) {
      int i = static_cast<int>(rng.below(6)), j = static_cast<int>(rng.below(6));
      if (i == j) continue;
      LineTriple L{S.exceptional_lines()[i], S.exceptional_lines()[j],
                   connecting_line(S, i, j)};
      const Plane& T = planes[rng.below(planes.size())];
      std::vector<ProjPoint> cpts;
      for (const auto& w : S.interior())
        if (T.contains(w)) cpts.push_back(w);
      if (cpts.size() < 2) continue;
      ProjPoint u = cpts[rng.below(cpts.size())], w = cpts[rng.below(cpts.size())];
      try {
        ProjPoint viaL = compose_t_lambda(S.surface(), L, T, u, w);
        auto viaCp = compose_cp(S, T, u, w);
        if (!viaCp) continue;
        CHECK(viaL == *viaCp);
        ++done;
      } catch (const std::invalid_argument&) {
        continue;
      }
    }
  }

  TEST_CASE("theorem 5.3 sweep for sample points") {
    const auto& S = f7_surface();
    Rng rng(71);
    for (int t = 0; t < 2; ++t) {
      const auto& x = S.interior()[rng.below(S.interior().size())];
      auto rep = theorem_53_check(S, x);
      CHECK(rep.covered);
      CHECK(rep.missed.empty());
      // the one-step sweep misses at most one target per exceptional line
      CHECK(rep.first_sweep_missed.size() <= 6);
    }
    CHECK_THROWS_AS(theorem_53_check(S, S.exceptional_lines()[0].points()[0]),
                    std::invalid_argument);
  }

  TEST_CASE("theorem 5.3 witness construction") {
    // the plane through x, y and the tangent line of Gamma(x,y) at x
    // realizes y as x o_Cp x
    const auto& S = f7_surface();
    const Field& f7 = S.field();
    Rng rng(81);
    auto grads = std::array<std::array<Quadric, 4>, 4>{};
    for (int i = 0; i < 4; ++i) grads[i] = gradient(S.system()[i]);
    int done = 0;
    while (done < 20) {
      const auto& x = S.interior()[rng.below(S.interior().size())];
      const auto& y = S.interior()[rng.below(S.interior().size())];
      if (x == y) continue;
      ProjPoint px = S.blowdown(x), py = S.blowdown(y);
      if (px == py) continue;
      // tangent direction of Gamma at x: first-order term of forward along l
      Line l = Line::through(px, py);
      ProjPoint dir = (l.a == px) ? l.b : l.a;
      std::array<uint32_t, 4> tang{};
      std::span<const uint32_t> ps(px.c.data(), 3), ds(dir.c.data(), 3);
      bool nz = false;
      for (int i = 0; i < 4; ++i) {
        tang[i] = dir_derivative(grads[i], 2, ps, ds);
        nz |= tang[i] != 0;
      }
      REQUIRE(nz);
      ProjPoint xprime = ProjPoint::make(f7, 3, tang);
      if (xprime == x) continue;
      // plane through x, x' and y
      Line xl = Line::through(x, xprime);
      Plane T{};
      bool found = false;
      for (const auto& cand : planes_through_line(xl))
        if (cand.contains(y)) {
          T = cand;
          found = true;
          break;
        }
      if (!found) continue;
      try {
        const auto& sec = S.section(T);
        auto g = gradient(sec.image);
        (void)g;
        auto zs = compose_cp_diagonal_values(S, T, x);
        CHECK(std::find(zs.begin(), zs.end(), y) != zs.end());
        ++done;
      } catch (const std::invalid_argument&) {
        continue;
      }
    }
  }

  TEST_CASE("theorem 5.2 closure") {
    const auto& S = f7_surface();
    // a single point composes with nothing under the distinct-only rule
    std::vector<ProjPoint> single{S.interior()[0]};
    auto r1 = theorem_52_closure(S, single, 4);
    CHECK(r1.reached.size() == 1);
    CHECK(r1.complete);
    // the full interior is an immediate fixpoint
    auto rfull = theorem_52_closure(S, S.interior(), 2);
    CHECK(rfull.generated_all);
  }

  TEST_CASE("lemma 5.6") {
    const Field& f7 = Field::get(7, 1);
    auto C = first_smooth_curve(f7);
    auto pts = form_points(C);
    REQUIRE(pts.size() >= 3);
    // empty reflection list: t = id
    CHECK(lemma_56_check(C, {}, pts[0], pts[1]));
    // single and double reflections, sampled exhaustively on small sets
    for (size_t zi = 0; zi < pts.size(); ++zi)
      for (size_t xi = 0; xi < pts.size(); ++xi)
        for (size_t yi = 0; yi < pts.size(); ++yi)
          CHECK(lemma_56_check(C, std::vector<ProjPoint>{pts[zi]}, pts[xi], pts[yi]));
    Rng rng(91);
    for (int t = 0; t < 25; ++t) {
      std::vector<ProjPoint> refl{pts[rng.below(pts.size())], pts[rng.below(pts.size())]};
      CHECK(lemma_56_check(C, refl, pts[rng.below(pts.size())], pts[rng.below(pts.size())]));
    }
  }

  TEST_CASE("corollary 5.4 over F7 and F4") {
    CHECK(corollary_54_check(f7_surface()));
    auto cfg4 = find_general_position(Field::get(2, 2));
    REQUIRE(cfg4.has_value());  // hyperovals exist in PG(2,4)
    auto S4 = SplitSurface::build(*cfg4);
    CHECK(S4.points().size() == 21 - 6 + 6 * 5);
    CHECK(corollary_54_check(S4));
  }
}
