#include "chord/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace chord {

namespace {

std::vector<std::array<uint8_t, 4>> exponents(int nvars, int deg) {
  std::vector<std::array<uint8_t, 4>> out;
  std::array<uint8_t, 4> e{};
  // Lexicographically descending exponent tuples of the given total degree.
  auto rec = [&](auto&& self, int var, int rest) -> void {
    if (var == nvars - 1) {
      e[var] = static_cast<uint8_t>(rest);
      out.push_back(e);
      e[var] = 0;
      return;
    }
    for (int d = rest; d >= 0; --d) {
      e[var] = static_cast<uint8_t>(d);
      self(self, var + 1, rest - d);
    }
    e[var] = 0;
  };
  rec(rec, 0, deg);
  return out;
}

}  // namespace

const std::vector<std::array<uint8_t, 4>>& cubic_monomials(int dim) {
  static const auto m2 = exponents(3, 3);
  static const auto m3 = exponents(4, 3);
  if (dim == 2) return m2;
  if (dim == 3) return m3;
  throw std::invalid_argument("dim must be 2 or 3");
}

const std::vector<std::array<uint8_t, 4>>& quadric_monomials(int dim) {
  static const auto m2 = exponents(3, 2);
  static const auto m3 = exponents(4, 2);
  if (dim == 2) return m2;
  if (dim == 3) return m3;
  throw std::invalid_argument("dim must be 2 or 3");
}

// ---------------------------------------------------------------- ProjPoint

ProjPoint ProjPoint::make(const Field& F, int dim, std::span<const uint32_t> coords) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  if (static_cast<int>(coords.size()) != dim + 1)
    throw std::invalid_argument("wrong number of coordinates");
  ProjPoint x;
  x.f = &F;
  x.dim = dim;
  int lead = -1;
  for (int i = 0; i <= dim; ++i)
    if (coords[i] != 0) {
      lead = i;
      break;
    }
  if (lead < 0) throw std::invalid_argument("all coordinates zero");
  uint32_t s = F.inv(coords[lead]);
  for (int i = 0; i <= dim; ++i) x.c[i] = F.mul(coords[i], s);
  return x;
}

ProjPoint ProjPoint::embedded(const Field& K) const {
  ProjPoint x;
  x.f = &K;
  x.dim = dim;
  for (int i = 0; i <= dim; ++i) x.c[i] = K.embed_from(*f, c[i]);
  return x;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
  auto key = [](const ProjPoint& p) {
    return std::make_tuple(p.f->p(), p.f->e(), p.dim, p.c);
  };
  return key(*this) < key(o);
}

// ---------------------------------------------------------------- CubicForm

CubicForm CubicForm::make(const Field& F, int dim, std::span<const uint32_t> coeffs) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  CubicForm out;
  out.f = &F;
  out.dim = dim;
  if (static_cast<int>(coeffs.size()) != out.ncoeffs())
    throw std::invalid_argument("wrong number of coefficients");
  bool nonzero = false;
  for (int i = 0; i < out.ncoeffs(); ++i) {
    if (coeffs[i] >= F.q()) throw std::invalid_argument("coefficient out of range");
    out.c[i] = coeffs[i];
    nonzero |= coeffs[i] != 0;
  }
  if (!nonzero) throw std::invalid_argument("form is identically zero");
  return out;
}

CubicForm CubicForm::embedded(const Field& K) const {
  CubicForm out;
  out.f = &K;
  out.dim = dim;
  for (int i = 0; i < ncoeffs(); ++i) out.c[i] = K.embed_from(*f, c[i]);
  return out;
}

bool CubicForm::operator==(const CubicForm& o) const {
  return f == o.f && dim == o.dim && c == o.c;
}

bool CubicForm::operator<(const CubicForm& o) const {
  auto key = [](const CubicForm& F) {
    return std::make_tuple(F.f->p(), F.f->e(), F.dim, F.c);
  };
  return key(*this) < key(o);
}

uint32_t eval_form(const CubicForm& F, std::span<const uint32_t> x) {
  const auto& mons = cubic_monomials(F.dim);
  const Field& k = *F.f;
  uint32_t acc = 0;
  for (int m = 0; m < F.ncoeffs(); ++m) {
    if (F.c[m] == 0) continue;
    uint32_t term = F.c[m];
    for (int v = 0; v <= F.dim && term; ++v)
      for (int r = 0; r < mons[m][v]; ++r) term = k.mul(term, x[v]);
    acc = k.add(acc, term);
  }
  return acc;
}

uint32_t eval_form(const CubicForm& F, const ProjPoint& x) {
  if (F.f != x.f || F.dim != x.dim) throw std::invalid_argument("form/point mismatch");
  return eval_form(F, std::span<const uint32_t>(x.c.data(), x.dim + 1));
}

uint32_t eval_quadric(const Quadric& Q, std::span<const uint32_t> x) {
  const auto& mons = quadric_monomials(Q.dim);
  const Field& k = *Q.f;
  uint32_t acc = 0;
  for (int m = 0; m < Q.ncoeffs(); ++m) {
    if (Q.c[m] == 0) continue;
    uint32_t term = Q.c[m];
    for (int v = 0; v <= Q.dim && term; ++v)
      for (int r = 0; r < mons[m][v]; ++r) term = k.mul(term, x[v]);
    acc = k.add(acc, term);
  }
  return acc;
}

std::array<Quadric, 4> gradient(const CubicForm& F) {
  const auto& cmons = cubic_monomials(F.dim);
  const auto& qmons = quadric_monomials(F.dim);
  std::map<std::array<uint8_t, 4>, int> qindex;
  for (size_t i = 0; i < qmons.size(); ++i) qindex[qmons[i]] = static_cast<int>(i);
  std::array<Quadric, 4> grad;
  for (int v = 0; v <= F.dim; ++v) {
    grad[v].f = F.f;
    grad[v].dim = F.dim;
  }
  const Field& k = *F.f;
  for (int m = 0; m < F.ncoeffs(); ++m) {
    if (F.c[m] == 0) continue;
    for (int v = 0; v <= F.dim; ++v) {
      if (cmons[m][v] == 0) continue;
      auto e = cmons[m];
      uint32_t coeff = k.scalar_mul(e[v], F.c[m]);
      if (coeff == 0) continue;
      e[v] -= 1;
      int qi = qindex.at(e);
      grad[v].c[qi] = k.add(grad[v].c[qi], coeff);
    }
  }
  return grad;
}

uint32_t dir_derivative(const std::array<Quadric, 4>& grad, int dim,
                        std::span<const uint32_t> x, std::span<const uint32_t> v) {
  const Field& k = *grad[0].f;
  uint32_t acc = 0;
  for (int i = 0; i <= dim; ++i)
    if (v[i] != 0) acc = k.add(acc, k.mul(v[i], eval_quadric(grad[i], x)));
  return acc;
}

bool is_smooth_point(const CubicForm& F, const std::array<Quadric, 4>& grad,
                     const ProjPoint& x) {
  std::span<const uint32_t> xs(x.c.data(), x.dim + 1);
  for (int i = 0; i <= F.dim; ++i)
    if (eval_quadric(grad[i], xs) != 0) return true;
  return false;
}

CubicForm substitute_linear(const CubicForm& F, int out_dim,
                            std::span<const std::array<uint32_t, 4>> cols) {
  const Field& k = *F.f;
  int nout = out_dim + 1;
  if (static_cast<int>(cols.size()) != nout) throw std::invalid_argument("wrong column count");
  const auto& inmons = cubic_monomials(F.dim);
  const auto& outmons = cubic_monomials(out_dim);
  std::map<std::array<uint8_t, 4>, int> outindex;
  for (size_t i = 0; i < outmons.size(); ++i) outindex[outmons[i]] = static_cast<int>(i);

  std::vector<uint32_t> acc(outmons.size(), 0);
  for (int m = 0; m < F.ncoeffs(); ++m) {
    if (F.c[m] == 0) continue;
    // Product of three linear forms in the output variables.
    std::vector<int> factors;
    for (int v = 0; v <= F.dim; ++v)
      for (int r = 0; r < inmons[m][v]; ++r) factors.push_back(v);
    // Expand sum over choices of output variable per factor.
    std::array<int, 3> pick{};
    for (pick[0] = 0; pick[0] < nout; ++pick[0])
      for (pick[1] = 0; pick[1] < nout; ++pick[1])
        for (pick[2] = 0; pick[2] < nout; ++pick[2]) {
          uint32_t term = F.c[m];
          for (int t = 0; t < 3 && term; ++t) term = k.mul(term, cols[pick[t]][factors[t]]);
          if (term == 0) continue;
          std::array<uint8_t, 4> e{};
          for (int t = 0; t < 3; ++t) e[pick[t]] += 1;
          int oi = outindex.at(e);
          acc[oi] = k.add(acc[oi], term);
        }
  }
  CubicForm out;
  out.f = &k;
  out.dim = out_dim;
  bool nonzero = false;
  for (size_t i = 0; i < acc.size(); ++i) {
    out.c[i] = acc[i];
    nonzero |= acc[i] != 0;
  }
  if (!nonzero) throw std::invalid_argument("substituted form is identically zero");
  return out;
}

// ------------------------------------------------------------- enumeration

std::vector<ProjPoint> enumerate_proj_points(const Field& F, int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  std::vector<ProjPoint> pts;
  uint64_t q = F.q();
  for (int lead = 0; lead <= dim; ++lead) {
    int free = dim - lead;
    uint64_t count = 1;
    for (int i = 0; i < free; ++i) count *= q;
    for (uint64_t t = 0; t < count; ++t) {
      ProjPoint x;
      x.f = &F;
      x.dim = dim;
      x.c[lead] = F.one();
      uint64_t tt = t;
      for (int i = dim; i > lead; --i) {
        x.c[i] = static_cast<uint32_t>(tt % q);
        tt /= q;
      }
      pts.push_back(x);
    }
  }
  return pts;
}

std::vector<ProjPoint> form_points(const CubicForm& F) {
  std::vector<ProjPoint> out;
  for (const auto& x : enumerate_proj_points(*F.f, F.dim))
    if (eval_form(F, x) == 0) out.push_back(x);
  return out;
}

// --------------------------------------------------------------------- Line

Line Line::through(const ProjPoint& x, const ProjPoint& y) {
  if (x.f != y.f || x.dim != y.dim) throw std::invalid_argument("point mismatch");
  if (x == y) throw std::invalid_argument("line through equal points");
  const Field& k = *x.f;
  int n = x.dim + 1;
  std::array<std::array<uint32_t, 4>, 2> rows{x.c, y.c};
  // Row-reduce to the canonical reduced pair.
  int pivot0 = -1;
  for (int j = 0; j < n && pivot0 < 0; ++j) {
    if (rows[0][j] == 0 && rows[1][j] != 0) std::swap(rows[0], rows[1]);
    if (rows[0][j] != 0) pivot0 = j;
  }
  uint32_t s = k.inv(rows[0][pivot0]);
  for (int j = 0; j < n; ++j) rows[0][j] = k.mul(rows[0][j], s);
  if (rows[1][pivot0] != 0) {
    uint32_t c = rows[1][pivot0];
    for (int j = 0; j < n; ++j) rows[1][j] = k.sub(rows[1][j], k.mul(c, rows[0][j]));
  }
  int pivot1 = -1;
  for (int j = 0; j < n && pivot1 < 0; ++j)
    if (rows[1][j] != 0) pivot1 = j;
  if (pivot1 < 0) throw std::invalid_argument("line through equal points");
  s = k.inv(rows[1][pivot1]);
  for (int j = 0; j < n; ++j) rows[1][j] = k.mul(rows[1][j], s);
  if (rows[0][pivot1] != 0) {
    uint32_t c = rows[0][pivot1];
    for (int j = 0; j < n; ++j) rows[0][j] = k.sub(rows[0][j], k.mul(c, rows[1][j]));
  }
  Line l;
  l.f = &k;
  l.dim = x.dim;
  l.a = ProjPoint::make(k, x.dim, std::span<const uint32_t>(rows[0].data(), n));
  l.b = ProjPoint::make(k, x.dim, std::span<const uint32_t>(rows[1].data(), n));
  return l;
}

std::vector<ProjPoint> Line::points() const {
  const Field& k = *f;
  std::vector<ProjPoint> out;
  out.push_back(b);
  for (uint32_t t = 0; t < k.q(); ++t) {
    std::array<uint32_t, 4> c{};
    for (int j = 0; j <= dim; ++j) c[j] = k.add(a.c[j], k.mul(t, b.c[j]));
    out.push_back(ProjPoint::make(k, dim, std::span<const uint32_t>(c.data(), dim + 1)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Line::contains(const ProjPoint& x) const {
  // x is in the span of (a, b) iff eliminating with both rows kills it.
  const Field& k = *f;
  std::array<uint32_t, 4> r = x.c;
  for (const ProjPoint* row : {&a, &b}) {
    int pivot = -1;
    for (int j = 0; j <= dim; ++j)
      if (row->c[j] != 0) {
        pivot = j;
        break;
      }
    if (r[pivot] != 0) {
      uint32_t c = k.mul(r[pivot], k.inv(row->c[pivot]));
      for (int j = 0; j <= dim; ++j) r[j] = k.sub(r[j], k.mul(c, row->c[j]));
    }
  }
  for (int j = 0; j <= dim; ++j)
    if (r[j] != 0) return false;
  return true;
}

Line Line::embedded(const Field& K) const { return Line::through(a.embedded(K), b.embedded(K)); }

bool lines_meet(const Line& a, const Line& b) {
  if (a.f != b.f || a.dim != 3 || b.dim != 3)
    throw std::invalid_argument("lines_meet needs two lines of one P^3");
  const Field& k = *a.f;
  const std::array<const ProjPoint*, 4> rows{&a.a, &a.b, &b.a, &b.b};
  auto minor3 = [&](int skip_col) {
    std::array<int, 3> cols{};
    int t = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip_col) cols[t++] = j;
    auto e = [&](int r, int cc) { return rows[r + 1]->c[cols[cc]]; };
    auto m = [&](int i, int j, int l) { return k.mul(e(0, i), k.mul(e(1, j), e(2, l))); };
    uint32_t d = k.add(k.add(m(0, 1, 2), m(1, 2, 0)), m(2, 0, 1));
    return k.sub(d, k.add(k.add(m(2, 1, 0), m(1, 0, 2)), m(0, 2, 1)));
  };
  uint32_t det = 0;
  for (int j = 0; j < 4; ++j) {
    uint32_t term = k.mul(rows[0]->c[j], minor3(j));
    det = (j % 2 == 0) ? k.add(det, term) : k.sub(det, term);
  }
  return det == 0;
}

// -------------------------------------------------------------------- Plane

Plane Plane::make(const Field& F, std::span<const uint32_t> coeffs) {
  if (coeffs.size() != 4) throw std::invalid_argument("plane needs 4 coefficients");
  Plane T;
  T.f = &F;
  int lead = -1;
  for (int i = 0; i < 4; ++i)
    if (coeffs[i] != 0) {
      lead = i;
      break;
    }
  if (lead < 0) throw std::invalid_argument("all plane coefficients zero");
  uint32_t s = F.inv(coeffs[lead]);
  for (int i = 0; i < 4; ++i) T.h[i] = F.mul(coeffs[i], s);
  return T;
}

bool Plane::contains(const ProjPoint& x) const {
  const Field& k = *f;
  uint32_t acc = 0;
  for (int i = 0; i < 4; ++i) acc = k.add(acc, k.mul(h[i], x.c[i]));
  return acc == 0;
}

Plane Plane::embedded(const Field& K) const {
  std::array<uint32_t, 4> h2;
  for (int i = 0; i < 4; ++i) h2[i] = K.embed_from(*f, h[i]);
  return Plane::make(K, h2);
}

std::vector<Plane> enumerate_planes(const Field& F) {
  std::vector<Plane> out;
  for (const auto& x : enumerate_proj_points(F, 3)) {
    Plane T;
    T.f = &F;
    T.h = x.c;
    out.push_back(T);
  }
  return out;
}

std::vector<Plane> planes_through(const Field& F, const ProjPoint& x) {
  std::vector<Plane> out;
  for (const auto& T : enumerate_planes(F))
    if (T.contains(x)) out.push_back(T);
  return out;
}

std::vector<Plane> planes_through_line(const Line& l) {
  std::vector<Plane> out;
  for (const auto& T : enumerate_planes(*l.f))
    if (T.contains(l.a) && T.contains(l.b)) out.push_back(T);
  return out;
}

ProjPoint line_plane_intersection(const Line& l, const Plane& T) {
  const Field& k = *l.f;
  uint32_t va = 0, vb = 0;
  for (int i = 0; i < 4; ++i) {
    va = k.add(va, k.mul(T.h[i], l.a.c[i]));
    vb = k.add(vb, k.mul(T.h[i], l.b.c[i]));
  }
  if (va == 0 && vb == 0) throw std::invalid_argument("line lies in the plane");
  // Point s*a + t*b with s*va + t*vb = 0.
  uint32_t s = vb, t = k.neg(va);
  std::array<uint32_t, 4> c{};
  for (int i = 0; i < 4; ++i) c[i] = k.add(k.mul(s, l.a.c[i]), k.mul(t, l.b.c[i]));
  return ProjPoint::make(k, 3, c);
}

// ------------------------------------------------------------- composition

namespace {

// Coefficients of F(s x + t y): [s^3, s^2 t, s t^2, t^3].
std::array<uint32_t, 4> restrict_cubic(const CubicForm& F, const std::array<Quadric, 4>& grad,
                                       const ProjPoint& x, const ProjPoint& y) {
  std::span<const uint32_t> xs(x.c.data(), x.dim + 1), ys(y.c.data(), y.dim + 1);
  return {eval_form(F, xs), dir_derivative(grad, F.dim, xs, ys),
          dir_derivative(grad, F.dim, ys, xs), eval_form(F, ys)};
}

}  // namespace

ThirdResult third_point(const CubicForm& F, const ProjPoint& x, const ProjPoint& y) {
  if (x == y) throw std::invalid_argument("third_point needs distinct points");
  auto grad = gradient(F);
  if (eval_form(F, x) != 0 || eval_form(F, y) != 0)
    throw std::invalid_argument("points must lie on the form");
  if (!is_smooth_point(F, grad, x) || !is_smooth_point(F, grad, y))
    throw std::invalid_argument("composition at a singular point");
  auto r = restrict_cubic(F, grad, x, y);
  const Field& k = *F.f;
  uint32_t B = r[1], C = r[2];
  ThirdResult out;
  if (B == 0 && C == 0) {
    out.kind = ThirdResult::LineInV;
    return out;
  }
  // Restriction is s t (B s + C t); the residual root is (s:t) = (C:-B).
  std::array<uint32_t, 4> zc{};
  for (int i = 0; i <= F.dim; ++i)
    zc[i] = k.sub(k.mul(C, x.c[i]), k.mul(B, y.c[i]));
  out.kind = ThirdResult::Unique;
  out.z = ProjPoint::make(k, F.dim, std::span<const uint32_t>(zc.data(), F.dim + 1));
  return out;
}

Plane tangent_plane(const CubicForm& F, const ProjPoint& x) {
  if (F.dim != 3) throw std::invalid_argument("tangent_plane needs a surface");
  auto grad = gradient(F);
  std::span<const uint32_t> xs(x.c.data(), 4);
  std::array<uint32_t, 4> h;
  bool nonzero = false;
  for (int i = 0; i < 4; ++i) {
    h[i] = eval_quadric(grad[i], xs);
    nonzero |= h[i] != 0;
  }
  if (!nonzero) throw std::invalid_argument("tangent plane at a singular point");
  return Plane::make(*F.f, h);
}

std::vector<ProjPoint> tangent_compose(const CubicForm& F, const ProjPoint& x) {
  const Field& k = *F.f;
  auto grad = gradient(F);
  if (eval_form(F, x) != 0) throw std::invalid_argument("point must lie on the form");
  if (!is_smooth_point(F, grad, x))
    throw std::invalid_argument("tangent composition at a singular point");
  std::span<const uint32_t> xs(x.c.data(), x.dim + 1);

  // Gather one representative per rational line through x inside the tangent
  // space (the tangent line for a curve, the tangent plane pencil for a
  // surface); every such line meets F doubly at x.
  std::set<Line> lines;
  for (const auto& v : enumerate_proj_points(k, x.dim)) {
    if (v == x) continue;
    uint32_t hv = 0;
    for (int i = 0; i <= x.dim; ++i) hv = k.add(hv, k.mul(eval_quadric(grad[i], xs), v.c[i]));
    if (hv != 0) continue;
    lines.insert(Line::through(x, v));
  }
  std::set<ProjPoint> out;
  for (const auto& l : lines) {
    // Parametrize with x first; use the canonical second point v off x.
    ProjPoint v = (l.a == x) ? l.b : l.a;
    if (!l.contains(x)) continue;  // unreachable; lines were built through x
    std::span<const uint32_t> vs(v.c.data(), v.dim + 1);
    uint32_t B = dir_derivative(grad, F.dim, xs, vs);
    if (B != 0) continue;  // not tangent (can occur when v spans with x differently)
    uint32_t C = dir_derivative(grad, F.dim, vs, xs);
    uint32_t D = eval_form(F, vs);
    if (C == 0 && D == 0) {
      for (const auto& z : l.points()) out.insert(z);
    } else if (C == 0) {
      out.insert(x);  // triple contact
    } else {
      std::array<uint32_t, 4> zc{};
      for (int i = 0; i <= F.dim; ++i)
        zc[i] = k.sub(k.mul(D, x.c[i]), k.mul(C, v.c[i]));
      out.insert(ProjPoint::make(k, F.dim, std::span<const uint32_t>(zc.data(), F.dim + 1)));
    }
  }
  return std::vector<ProjPoint>(out.begin(), out.end());
}

// -------------------------------------------------------------------- lines

std::vector<Line> lines_in_form_over(const CubicForm& F0, const Field& K) {
  CubicForm F = (F0.f == &K) ? F0 : F0.embedded(K);
  if (F.dim != 3) throw std::invalid_argument("lines_in_form needs a surface");
  auto grad = gradient(F);
  std::vector<Line> out;
  uint32_t q = K.q();
  // RREF shapes indexed by pivot columns (j0 < j1); free entries scan K.
  for (int j0 = 0; j0 < 4; ++j0)
    for (int j1 = j0 + 1; j1 < 4; ++j1) {
      std::vector<int> free0, free1;
      for (int j = j0 + 1; j < 4; ++j)
        if (j != j1) free0.push_back(j);
      for (int j = j1 + 1; j < 4; ++j) free1.push_back(j);
      uint64_t n0 = 1, n1 = 1;
      for (size_t i = 0; i < free0.size(); ++i) n0 *= q;
      for (size_t i = 0; i < free1.size(); ++i) n1 *= q;
      for (uint64_t t0 = 0; t0 < n0; ++t0)
        for (uint64_t t1 = 0; t1 < n1; ++t1) {
          std::array<uint32_t, 4> r0{}, r1{};
          r0[j0] = K.one();
          r1[j1] = K.one();
          uint64_t tt = t0;
          for (int j : free0) {
            r0[j] = static_cast<uint32_t>(tt % q);
            tt /= q;
          }
          tt = t1;
          for (int j : free1) {
            r1[j] = static_cast<uint32_t>(tt % q);
            tt /= q;
          }
          ProjPoint a = ProjPoint::make(K, 3, r0), b = ProjPoint::make(K, 3, r1);
          if (eval_form(F, a) != 0) continue;
          if (eval_form(F, b) != 0) continue;
          std::span<const uint32_t> as(a.c.data(), 4), bs(b.c.data(), 4);
          if (dir_derivative(grad, 3, as, bs) != 0) continue;
          if (dir_derivative(grad, 3, bs, as) != 0) continue;
          Line l;
          l.f = &K;
          l.dim = 3;
          l.a = a;
          l.b = b;
          out.push_back(l);
        }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Line> lines_in_form(const CubicForm& F) { return lines_in_form_over(F, *F.f); }

// ------------------------------------------------------------------ Eckardt

bool is_eckardt(const CubicForm& F, const ProjPoint& x) {
  if (F.dim != 3) throw std::invalid_argument("is_eckardt needs a surface");
  Plane T = tangent_plane(F, x);  // throws at singular points
  PlaneCubic section = plane_section(F, T);
  ProjPoint u = section.pull(x);
  // Move u to (1:0:0); Eckardt iff the section has multiplicity 3 there,
  // i.e. every coefficient with positive first exponent vanishes.
  const Field& k = *F.f;
  std::array<std::array<uint32_t, 4>, 3> cols{};
  cols[0] = u.c;
  int filled = 1;
  for (int i = 0; i < 3 && filled < 3; ++i) {
    std::array<uint32_t, 4> cand{};
    cand[i] = k.one();
    // Keep candidate independent of the chosen columns (rank check).
    std::array<std::array<uint32_t, 4>, 3> test = cols;
    test[filled] = cand;
    // Gaussian rank on filled+1 rows of length 3.
    std::array<std::array<uint32_t, 4>, 3> rows{};
    for (int r = 0; r <= filled; ++r) rows[r] = test[r];
    int rank = 0;
    for (int col = 0; col < 3 && rank <= filled; ++col) {
      int pr = -1;
      for (int r = rank; r <= filled; ++r)
        if (rows[r][col] != 0) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(rows[rank], rows[pr]);
      uint32_t invp = k.inv(rows[rank][col]);
      for (int j = 0; j < 3; ++j) rows[rank][j] = k.mul(rows[rank][j], invp);
      for (int r = 0; r <= filled; ++r)
        if (r != rank && rows[r][col] != 0) {
          uint32_t cc = rows[r][col];
          for (int j = 0; j < 3; ++j) rows[r][j] = k.sub(rows[r][j], k.mul(cc, rows[rank][j]));
        }
      ++rank;
    }
    if (rank == filled + 1) {
      cols[filled] = cand;
      ++filled;
    }
  }
  CubicForm moved = substitute_linear(section.form, 2, cols);
  const auto& mons = cubic_monomials(2);
  for (int m = 0; m < 10; ++m)
    if (mons[m][0] > 0 && moved.c[m] != 0) return false;
  return true;
}

// ------------------------------------------------------------ plane section

PlaneCubic plane_section(const CubicForm& F, const Plane& T) {
  if (F.dim != 3) throw std::invalid_argument("plane_section needs a surface");
  const Field& k = *F.f;
  // Deterministic kernel basis of h via RREF back-substitution.
  int pivot = -1;
  for (int i = 0; i < 4; ++i)
    if (T.h[i] != 0) {
      pivot = i;
      break;
    }
  PlaneCubic out;
  out.plane = T;
  int bi = 0;
  for (int j = 0; j < 4; ++j) {
    if (j == pivot) continue;
    std::array<uint32_t, 4> col{};
    col[j] = k.one();
    col[pivot] = k.neg(k.mul(T.h[j], k.inv(T.h[pivot])));
    out.basis[bi++] = col;
  }
  out.form = substitute_linear(F, 2, out.basis);  // throws if T lies in V(F)
  return out;
}

ProjPoint PlaneCubic::push(const ProjPoint& u) const {
  const Field& k = *u.f;
  std::array<uint32_t, 4> c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) c[i] = k.add(c[i], k.mul(basis[j][i], u.c[j]));
  return ProjPoint::make(k, 3, c);
}

ProjPoint PlaneCubic::pull(const ProjPoint& x) const {
  const Field& k = *x.f;
  if (!plane.contains(x)) throw std::invalid_argument("point not on the section plane");
  // Solve sum_j u_j basis[j] = lambda x; the basis columns have unit rows at
  // the non-pivot coordinates, so u can be read off there.
  std::array<uint32_t, 3> u{};
  int bi = 0;
  int pivot = -1;
  for (int i = 0; i < 4; ++i)
    if (plane.h[i] != 0) {
      pivot = i;
      break;
    }
  for (int j = 0; j < 4; ++j) {
    if (j == pivot) continue;
    u[bi++] = x.c[j];
  }
  return ProjPoint::make(k, 2, u);
}

// -------------------------------------------------------------------- curve

ThirdResult curve_third(const CubicForm& C, const ProjPoint& x, const ProjPoint& y) {
  if (C.dim != 2) throw std::invalid_argument("curve_third needs a plane cubic");
  if (!(x == y)) return third_point(C, x, y);
  auto zs = tangent_compose(C, x);  // throws at singular points
  // On a cubic without a line through x the tangent line gives one value.
  ThirdResult out;
  if (zs.size() == 1) {
    out.kind = ThirdResult::Unique;
    out.z = zs[0];
    return out;
  }
  out.kind = ThirdResult::LineInV;
  return out;
}

ProjPoint curve_add(const CubicForm& C, const ProjPoint& e, const ProjPoint& x,
                    const ProjPoint& y) {
  auto xy = curve_third(C, x, y);
  if (xy.kind != ThirdResult::Unique) throw std::invalid_argument("x o y not single-valued");
  auto r = curve_third(C, e, xy.z);
  if (r.kind != ThirdResult::Unique) throw std::invalid_argument("e o (x o y) not single-valued");
  return r.z;
}

// ------------------------------------------------------------- collinearity

int Collinearity::index_of(const ProjPoint& x) const {
  auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it == points.end() || !(*it == x)) return -1;
  return static_cast<int>(it - points.begin());
}

Collinearity collinearity(const CubicForm& F) {
  const Field& k = *F.f;
  auto grad = gradient(F);
  Collinearity out;
  for (const auto& x : enumerate_proj_points(k, F.dim))
    if (eval_form(F, x) == 0 && is_smooth_point(F, grad, x)) out.points.push_back(x);
  std::sort(out.points.begin(), out.points.end());
  int n = static_cast<int>(out.points.size());
  if (n < 1) throw std::invalid_argument("form has no smooth rational points");

  std::vector<std::array<int, 3>> triples;
  std::vector<std::array<int, 2>> line_pairs;
  // Distinct pairs.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto r = third_point(F, out.points[i], out.points[j]);
      if (r.kind == ThirdResult::Unique) {
        int zi = out.index_of(r.z);
        if (zi >= 0) triples.push_back({i, j, zi});
      }
      // LineInV pairs are covered by the line pass below.
    }
  // Diagonal (tangency) triples.
  for (int i = 0; i < n; ++i)
    for (const auto& z : tangent_compose(F, out.points[i])) {
      int zi = out.index_of(z);
      if (zi >= 0) triples.push_back({i, i, zi});
    }
  // Lines inside the form contribute every triple of their rational points.
  if (F.dim == 3) {
    for (const auto& l : lines_in_form(F)) {
      std::vector<int> idx;
      for (const auto& z : l.points()) {
        int zi = out.index_of(z);
        if (zi >= 0) idx.push_back(zi);
      }
      std::sort(idx.begin(), idx.end());
      for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a; b < idx.size(); ++b) {
          for (size_t c = b; c < idx.size(); ++c) triples.push_back({idx[a], idx[b], idx[c]});
          if (a < b) line_pairs.push_back({idx[a], idx[b]});
        }
    }
  } else {
    // A plane cubic can contain whole lines only when reducible; detect by
    // scanning rational lines of P^2.
    auto pts2 = enumerate_proj_points(k, 2);
    std::set<Line> seen;
    for (size_t i = 0; i < pts2.size(); ++i)
      for (size_t j = i + 1; j < pts2.size(); ++j) {
        Line l = Line::through(pts2[i], pts2[j]);
        if (!seen.insert(l).second) continue;
        std::span<const uint32_t> as(l.a.c.data(), 3), bs(l.b.c.data(), 3);
        if (eval_form(F, as) != 0 || eval_form(F, bs) != 0) continue;
        if (dir_derivative(grad, 2, as, bs) != 0) continue;
        if (dir_derivative(grad, 2, bs, as) != 0) continue;
        std::vector<int> idx;
        for (const auto& z : l.points()) {
          int zi = out.index_of(z);
          if (zi >= 0) idx.push_back(zi);
        }
        std::sort(idx.begin(), idx.end());
        for (size_t a = 0; a < idx.size(); ++a)
          for (size_t b = a; b < idx.size(); ++b) {
            for (size_t c = b; c < idx.size(); ++c) triples.push_back({idx[a], idx[b], idx[c]});
            if (a < b) line_pairs.push_back({idx[a], idx[b]});
          }
      }
  }
  out.cubic = AbstractCubic::from_triples(n, triples, line_pairs);
  for (const auto& x : out.points) {
    std::string s = "(";
    for (int i = 0; i <= x.dim; ++i) {
      if (i) s += ":";
      s += k.str(x.c[i]);
    }
    out.cubic.labels.push_back(s + ")");
  }
  return out;
}

}  // namespace chord
