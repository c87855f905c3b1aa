#include "chord/split_surface.hpp"

#include <algorithm>
#include <stdexcept>

#include "chord/equivalence.hpp"
#include "chord/smooth.hpp"

namespace chord {

namespace {

// Incremental row reduction over a Field, for kernel extraction.
class RowReducer {
 public:
  RowReducer(const Field& k, int ncols) : k_(&k), ncols_(ncols) {}

  bool add_row(std::vector<uint32_t> r) {
    for (size_t i = 0; i < rows_.size(); ++i) {
      uint32_t c = r[pivots_[i]];
      if (c != 0)
        for (int j = 0; j < ncols_; ++j) r[j] = k_->sub(r[j], k_->mul(c, rows_[i][j]));
    }
    int pivot = -1;
    for (int j = 0; j < ncols_; ++j)
      if (r[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) return false;
    uint32_t inv = k_->inv(r[pivot]);
    for (int j = 0; j < ncols_; ++j) r[j] = k_->mul(r[j], inv);
    // back-eliminate to keep reduced form
    for (size_t i = 0; i < rows_.size(); ++i) {
      uint32_t c = rows_[i][pivot];
      if (c != 0)
        for (int j = 0; j < ncols_; ++j)
          rows_[i][j] = k_->sub(rows_[i][j], k_->mul(c, r[j]));
    }
    // insert keeping pivots sorted
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    pivots_.insert(pivots_.begin() + pos, pivot);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

  std::vector<std::vector<uint32_t>> nullspace() const {
    std::vector<char> is_pivot(ncols_, 0);
    for (int p : pivots_) is_pivot[p] = 1;
    std::vector<std::vector<uint32_t>> basis;
    for (int j = 0; j < ncols_; ++j) {
      if (is_pivot[j]) continue;
      std::vector<uint32_t> v(ncols_, 0);
      v[j] = k_->one();
      for (size_t i = 0; i < rows_.size(); ++i) v[pivots_[i]] = k_->neg(rows_[i][j]);
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  const Field* k_;
  int ncols_;
  std::vector<std::vector<uint32_t>> rows_;
  std::vector<int> pivots_;
};

uint32_t det3(const Field& k, const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  auto m = [&](int i, int j, int l) {
    return k.mul(a.c[i], k.mul(b.c[j], c.c[l]));
  };
  uint32_t pos = k.add(k.add(m(0, 1, 2), m(1, 2, 0)), m(2, 0, 1));
  uint32_t neg = k.add(k.add(m(2, 1, 0), m(1, 0, 2)), m(0, 2, 1));
  return k.sub(pos, neg);
}

uint64_t pack_point(const ProjPoint& x) {
  return (static_cast<uint64_t>(x.c[0]) << 48) | (static_cast<uint64_t>(x.c[1]) << 32) |
         (static_cast<uint64_t>(x.c[2]) << 16) | x.c[3];
}

std::vector<uint32_t> monomial_row(const Field& k, int dim, const ProjPoint& x) {
  const auto& mons = cubic_monomials(dim);
  std::vector<uint32_t> row(mons.size());
  for (size_t m = 0; m < mons.size(); ++m) {
    uint32_t v = k.one();
    for (int i = 0; i <= dim; ++i)
      for (int r = 0; r < mons[m][i]; ++r) v = k.mul(v, x.c[i]);
    row[m] = v;
  }
  return row;
}

ProjPoint third_or_throw(const CubicForm& V, const ProjPoint& a, const ProjPoint& b,
                         const char* what) {
  if (a == b) throw std::invalid_argument(std::string(what) + ": equal operands");
  auto r = third_point(V, a, b);
  if (r.kind != ThirdResult::Unique)
    throw std::invalid_argument(std::string(what) + ": composition is multivalued");
  return r.z;
}

}  // namespace

bool check_general_position(const Field& k, std::span<const ProjPoint> pts) {
  if (pts.size() != 6) throw std::invalid_argument("need exactly 6 points");
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = i + 1; j < 6; ++j)
      if (pts[i] == pts[j]) throw std::invalid_argument("base points must be distinct");
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = i + 1; j < 6; ++j)
      for (size_t l = j + 1; l < 6; ++l)
        if (det3(k, pts[i], pts[j], pts[l]) == 0) return false;
  // conic through all six <=> the 6x6 evaluation matrix on the quadric
  // monomials is rank-deficient
  RowReducer red(k, 6);
  const auto& qm = quadric_monomials(2);
  for (const auto& x : pts) {
    std::vector<uint32_t> row(6);
    for (int m = 0; m < 6; ++m) {
      uint32_t v = k.one();
      for (int i = 0; i < 3; ++i)
        for (int r = 0; r < qm[m][i]; ++r) v = k.mul(v, x.c[i]);
      row[m] = v;
    }
    red.add_row(std::move(row));
  }
  return red.rank() == 6;
}

std::optional<BaseConfig> find_general_position(const Field& k) {
  auto pts = enumerate_proj_points(k, 2);
  std::vector<ProjPoint> chosen;
  auto mk = [&](std::initializer_list<uint32_t> cs) {
    std::vector<uint32_t> v(cs);
    return ProjPoint::make(k, 2, v);
  };
  chosen = {mk({1, 0, 0}), mk({0, 1, 0}), mk({0, 0, 1}), mk({1, 1, 1})};
  auto partial_ok = [&](const std::vector<ProjPoint>& ps) {
    for (size_t i = 0; i < ps.size(); ++i)
      for (size_t j = i + 1; j < ps.size(); ++j) {
        if (ps[i] == ps[j]) return false;
        for (size_t l = j + 1; l < ps.size(); ++l)
          if (det3(k, ps[i], ps[j], ps[l]) == 0) return false;
      }
    return true;
  };
  auto extend = [&](auto&& self, std::vector<ProjPoint>& ps) -> bool {
    if (ps.size() == 6) return check_general_position(k, ps);
    for (const auto& cand : pts) {
      ps.push_back(cand);
      if (partial_ok(ps) && self(self, ps)) return true;
      ps.pop_back();
    }
    return false;
  };
  if (!partial_ok(chosen) || !extend(extend, chosen)) return std::nullopt;
  BaseConfig cfg;
  cfg.f = &k;
  std::copy(chosen.begin(), chosen.end(), cfg.base.begin());
  return cfg;
}

SplitSurface SplitSurface::build(const BaseConfig& cfg) {
  const Field& k = *cfg.f;
  if (!check_general_position(k, cfg.base))
    throw std::invalid_argument("base points are not in general position");
  SplitSurface S;
  S.base_ = cfg;

  // Cubics through the 6 base points: kernel of the evaluation matrix.
  {
    RowReducer red(k, 10);
    for (const auto& b : cfg.base) red.add_row(monomial_row(k, 2, b));
    auto basis = red.nullspace();
    if (basis.size() != 4)
      throw std::invalid_argument("cubic system through the base points is not 4-dimensional");
    for (int i = 0; i < 4; ++i) S.sys_[i] = CubicForm::make(k, 2, basis[i]);
  }

  // The image surface: the unique cubic through the forward images over the
  // degree-3 extension (rank certifies uniqueness).
  {
    const Field& K3 = k.extension(3);
    const auto& sysK = S.system_over(K3);
    RowReducer red(K3, 20);
    std::set<ProjPoint> base_emb;
    for (const auto& b : cfg.base) base_emb.insert(b.embedded(K3));
    for (const auto& u : enumerate_proj_points(K3, 2)) {
      if (base_emb.count(u)) continue;
      std::array<uint32_t, 4> w{};
      bool nonzero = false;
      for (int i = 0; i < 4; ++i) {
        w[i] = eval_form(sysK[i], u);
        nonzero |= w[i] != 0;
      }
      if (!nonzero)
        throw std::invalid_argument("cubic system has base locus outside the base points");
      ProjPoint img = ProjPoint::make(K3, 3, w);
      red.add_row(monomial_row(K3, 3, img));
      if (red.rank() == 19) break;
    }
    if (red.rank() != 19)
      throw std::invalid_argument("image surface interpolation is rank-deficient");
    auto kern = red.nullspace();
    std::vector<uint32_t> coeffs(20);
    // normalize and retract to the base field
    uint32_t lead = 0;
    for (uint32_t c : kern[0])
      if (c != 0) {
        lead = c;
        break;
      }
    uint32_t inv = K3.inv(lead);
    for (int m = 0; m < 20; ++m) {
      auto small = K3.retract_to(k, K3.mul(kern[0][m], inv));
      if (!small)
        throw std::invalid_argument("image surface is not defined over the base field");
      coeffs[m] = *small;
    }
    S.V_ = CubicForm::make(k, 3, coeffs);
  }

  // Exceptional lines from first-order data along directions through each
  // base point: v -> (D_v F_0(p_i) : ... : D_v F_3(p_i)) is linear in v.
  {
    std::array<std::array<Quadric, 4>, 4> grads;
    for (int i = 0; i < 4; ++i) grads[i] = gradient(S.sys_[i]);
    auto pts2 = enumerate_proj_points(k, 2);
    for (int i = 0; i < 6; ++i) {
      const ProjPoint& p = cfg.base[i];
      std::span<const uint32_t> ps(p.c.data(), 3);
      std::vector<ProjPoint> images;
      for (const auto& v : pts2) {
        if (v == p) continue;
        std::array<uint32_t, 4> w{};
        bool nonzero = false;
        for (int j = 0; j < 4; ++j) {
          std::span<const uint32_t> vs(v.c.data(), 3);
          w[j] = dir_derivative(grads[j], 2, ps, vs);
          nonzero |= w[j] != 0;
        }
        if (!nonzero) throw std::invalid_argument("degenerate first-order data at a base point");
        images.push_back(ProjPoint::make(k, 3, w));
        if (images.size() >= 2 && !(images[0] == images.back())) break;
      }
      if (images.size() < 2 || images[0] == images.back())
        throw std::invalid_argument("exceptional line is degenerate");
      S.exc_[i] = Line::through(images[0], images.back());
    }
  }

  if (!is_smooth(S.V_)) throw std::invalid_argument("image surface is singular");

  // Points and the complement of the exceptional lines.
  for (const auto& x : enumerate_proj_points(k, 3))
    if (eval_form(S.V_, x) == 0) S.vpoints_.push_back(x);
  for (const auto& x : S.vpoints_)
    if (!S.on_exceptional(x)) {
      S.interior_.push_back(x);
      S.interior_set_.insert(x);
    }

  // Blow-up bookkeeping: |V(k)| = |P^2(k)| - 6 + sum |E_i(k)|.
  uint64_t q = k.q();
  uint64_t expect = (q * q + q + 1) - 6 + 6 * (q + 1);
  if (S.vpoints_.size() != expect)
    throw std::invalid_argument("blow-up point count bookkeeping failed");

  // forward must invert to a bijection onto the interior
  const auto& tab = S.blowdown_table(k);
  if (tab.size() != S.interior_.size())
    throw std::invalid_argument("forward map is not a bijection onto the interior");
  return S;
}

const std::array<CubicForm, 4>& SplitSurface::system_over(const Field& K) const {
  if (&K == base_.f) return sys_;
  auto it = sys_ext_.find(&K);
  if (it == sys_ext_.end()) {
    std::array<CubicForm, 4> e;
    for (int i = 0; i < 4; ++i) e[i] = sys_[i].embedded(K);
    it = sys_ext_.emplace(&K, e).first;
  }
  return it->second;
}

const std::array<Line, 6>& SplitSurface::exceptional_over(const Field& K) const {
  if (&K == base_.f) return exc_;
  auto it = exc_ext_.find(&K);
  if (it == exc_ext_.end()) {
    std::array<Line, 6> e;
    for (int i = 0; i < 6; ++i) e[i] = exc_[i].embedded(K);
    it = exc_ext_.emplace(&K, e).first;
  }
  return it->second;
}

bool SplitSurface::on_exceptional(const ProjPoint& x) const {
  return exceptional_index(x) >= 0;
}

int SplitSurface::exceptional_index(const ProjPoint& x) const {
  const auto& exc = exceptional_over(*x.f);
  for (int i = 0; i < 6; ++i)
    if (exc[i].contains(x)) return i;
  return -1;
}

bool SplitSurface::is_base_point(const ProjPoint& u) const {
  for (const auto& b : base_.base)
    if (u.f == b.f ? u == b : u == b.embedded(*u.f)) return true;
  return false;
}

ProjPoint SplitSurface::forward(const ProjPoint& u) const {
  const Field& K = *u.f;
  const auto& sys = system_over(K);
  std::array<uint32_t, 4> w{};
  bool nonzero = false;
  for (int i = 0; i < 4; ++i) {
    w[i] = eval_form(sys[i], u);
    nonzero |= w[i] != 0;
  }
  if (!nonzero) throw std::invalid_argument("forward undefined at a base point");
  return ProjPoint::make(K, 3, w);
}

const std::unordered_map<uint64_t, uint64_t>& SplitSurface::blowdown_table(
    const Field& K) const {
  auto it = blowdown_tab_.find(&K);
  if (it != blowdown_tab_.end()) return it->second;
  std::unordered_map<uint64_t, uint64_t> tab;
  std::set<ProjPoint> base_emb;
  for (const auto& b : base_.base) base_emb.insert(b.embedded(K));
  for (const auto& u : enumerate_proj_points(K, 2)) {
    if (base_emb.count(u)) continue;
    ProjPoint w = forward(u);
    auto [pos, fresh] = tab.emplace(pack_point(w), pack_point(u));
    if (!fresh) throw std::logic_error("forward map collision (internal bug)");
    (void)pos;
  }
  return blowdown_tab_.emplace(&K, std::move(tab)).first->second;
}

ProjPoint SplitSurface::blowdown(const ProjPoint& w) const {
  const Field& K = *w.f;
  int e = exceptional_index(w);
  if (e >= 0) return base_.base[e].embedded(K);
  const auto& tab = blowdown_table(K);
  auto it = tab.find(pack_point(w));
  if (it == tab.end()) throw std::invalid_argument("point is not on the surface");
  uint64_t packed = it->second;
  std::array<uint32_t, 3> c{static_cast<uint32_t>((packed >> 48) & 0xffff),
                            static_cast<uint32_t>((packed >> 32) & 0xffff),
                            static_cast<uint32_t>((packed >> 16) & 0xffff)};
  return ProjPoint::make(K, 2, c);
}

const SplitSurface::Section& SplitSurface::section(const Plane& T) const {
  auto it = sections_.find(T);
  if (it != sections_.end()) return it->second;
  const Field& k = *base_.f;
  for (int i = 0; i < 6; ++i)
    if (T.contains_line(exc_[i]))
      throw std::invalid_argument("section contains a blown-down line");
  Section sec;
  sec.chart = plane_section(V_, T);
  // Interpolate the image cubic from blowdown images of section points over
  // a quadratic (if needed cubic) extension; rank 9 certifies uniqueness.
  bool done = false;
  for (uint32_t deg : {2u, 3u}) {
    const Field& K = k.extension(deg);
    CubicForm secK = sec.chart.form.embedded(K);
    std::array<std::array<uint32_t, 4>, 3> basisK;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) basisK[j][i] = K.embed_from(k, sec.chart.basis[j][i]);
    RowReducer red(K, 10);
    std::set<ProjPoint> used;
    for (const auto& u2 : enumerate_proj_points(K, 2)) {
      if (eval_form(secK, u2) != 0) continue;
      std::array<uint32_t, 4> wc{};
      for (int i = 0; i < 4; ++i) {
        uint32_t acc = 0;
        for (int j = 0; j < 3; ++j) acc = K.add(acc, K.mul(basisK[j][i], u2.c[j]));
        wc[i] = acc;
      }
      ProjPoint w = ProjPoint::make(K, 3, wc);
      ProjPoint img = blowdown(w);
      if (!used.insert(img).second) continue;
      red.add_row(monomial_row(K, 2, img));
      if (red.rank() == 9) break;
    }
    if (red.rank() != 9) continue;
    auto kern = red.nullspace();
    uint32_t lead = 0;
    for (uint32_t c : kern[0])
      if (c != 0) {
        lead = c;
        break;
      }
    uint32_t inv = K.inv(lead);
    std::vector<uint32_t> coeffs(10);
    bool rational = true;
    for (int m = 0; m < 10; ++m) {
      auto small = K.retract_to(k, K.mul(kern[0][m], inv));
      if (!small) {
        rational = false;
        break;
      }
      coeffs[m] = *small;
    }
    if (!rational) throw std::invalid_argument("image cubic is not defined over the base field");
    sec.image = CubicForm::make(k, 2, coeffs);
    done = true;
    break;
  }
  if (!done) throw std::invalid_argument("image cubic interpolation is rank-deficient");
  return sections_.emplace(T, std::move(sec)).first->second;
}

std::optional<ProjPoint> compose_cp(const SplitSurface& S, const Plane& T,
                                    const ProjPoint& x, const ProjPoint& y) {
  if (eval_form(S.surface(), x) != 0 || eval_form(S.surface(), y) != 0 || !T.contains(x) ||
      !T.contains(y))
    throw std::invalid_argument("points must lie on the section");
  const auto& sec = S.section(T);
  ProjPoint px = S.blowdown(x), py = S.blowdown(y);
  if (!(x == y) && px == py)
    throw std::invalid_argument("points on one exceptional line have equal images");
  auto r = curve_third(sec.image, px, py);
  if (r.kind != ThirdResult::Unique)
    throw std::invalid_argument("image composition is multivalued along a line");
  if (S.is_base_point(r.z)) return std::nullopt;  // exceptional marker
  return S.forward(r.z);
}

std::vector<ProjPoint> compose_cp_diagonal_values(const SplitSurface& S, const Plane& T,
                                                  const ProjPoint& x) {
  const Field& k = S.field();
  const auto& sec = S.section(T);
  ProjPoint px = S.blowdown(x);
  auto grad = gradient(sec.image);
  std::set<ProjPoint> images;
  if (is_smooth_point(sec.image, grad, px)) {
    // Tangent line of the image at p(x); multivalued only when the image
    // contains that line as a component.
    for (const auto& z : tangent_compose(sec.image, px)) images.insert(z);
  } else {
    // p(x) is a double point of the image (the tangent-plane section):
    // every line through it meets the image doubly there, so the whole
    // pencil contributes residual intersections.
    std::span<const uint32_t> ps(px.c.data(), 3);
    std::set<Line> seen;
    for (const auto& v : enumerate_proj_points(k, 2)) {
      if (v == px) continue;
      Line l = Line::through(px, v);
      if (!seen.insert(l).second) continue;
      std::span<const uint32_t> vs(v.c.data(), 3);
      uint32_t C = dir_derivative(grad, 2, vs, ps);
      uint32_t D = eval_form(sec.image, vs);
      if (C == 0 && D == 0) {
        for (const auto& z : l.points()) images.insert(z);
      } else if (C == 0) {
        images.insert(px);
      } else {
        std::array<uint32_t, 3> zc{};
        for (int i = 0; i < 3; ++i) zc[i] = k.sub(k.mul(D, px.c[i]), k.mul(C, v.c[i]));
        images.insert(ProjPoint::make(k, 2, zc));
      }
    }
  }
  std::vector<ProjPoint> out;
  for (const auto& img : images) {
    if (S.is_base_point(img)) continue;
    if (eval_form(sec.image, img) != 0) continue;
    out.push_back(S.forward(img));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TwistedCubic twisted_cubic(const SplitSurface& S, const Line& l) {
  if (l.dim != 2) throw std::invalid_argument("expected a plane line");
  TwistedCubic G;
  G.plane_line = l;
  for (const auto& u : l.points()) {
    bool base = false;
    for (int i = 0; i < 6; ++i)
      if (u == S.base().base[i]) {
        G.base_hits.push_back(i);
        base = true;
      }
    if (!base) G.points.push_back(S.forward(u));
  }
  std::sort(G.points.begin(), G.points.end());
  return G;
}

TwistedCubic gamma_through(const SplitSurface& S, const ProjPoint& a, const ProjPoint& b) {
  ProjPoint pa = S.blowdown(a), pb = S.blowdown(b);
  if (pa == pb) throw std::invalid_argument("points share a twisted cubic pencil");
  return twisted_cubic(S, Line::through(pa, pb));
}

bool lambda_property_a(const LineTriple& L) {
  return !lines_meet(L.l1, L.l2) && lines_meet(L.m, L.l1) && lines_meet(L.m, L.l2);
}

ProjPoint compose_t_lambda(const CubicForm& V, const LineTriple& L, const Plane& T,
                           const ProjPoint& u, const ProjPoint& w) {
  if (!lambda_property_a(L)) throw std::invalid_argument("line triple violates property (A)");
  ProjPoint x = line_plane_intersection(L.l1, T);
  ProjPoint y = line_plane_intersection(L.l2, T);
  ProjPoint z = line_plane_intersection(L.m, T);
  ProjPoint uw;
  if (u == w) {
    PlaneCubic sec = plane_section(V, T);
    auto r = curve_third(sec.form, sec.pull(u), sec.pull(u));
    if (r.kind != ThirdResult::Unique)
      throw std::invalid_argument("tangent composition is multivalued");
    uw = sec.push(r.z);
  } else {
    uw = third_or_throw(V, u, w, "u o w");
  }
  ProjPoint zuw = third_or_throw(V, z, uw, "z o (u o w)");
  ProjPoint xy = third_or_throw(V, x, y, "x o y");
  return third_or_throw(V, xy, zuw, "(x o y) o [z o (u o w)]");
}

Line connecting_line(const SplitSurface& S, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= 6 || j >= 6) throw std::invalid_argument("bad indices");
  for (const auto& l : lines_in_form(S.surface())) {
    bool is_exc = false;
    for (const auto& e : S.exceptional_lines()) is_exc |= l == e;
    if (is_exc) continue;
    int meets = 0;
    bool mi = false, mj = false;
    for (int t = 0; t < 6; ++t)
      if (lines_meet(l, S.exceptional_lines()[t])) {
        ++meets;
        mi |= t == i;
        mj |= t == j;
      }
    if (meets == 2 && mi && mj) return l;
  }
  throw std::logic_error("connecting line not found (internal bug)");
}

bool blowdown_image_is_line(const SplitSurface& S, const Line& m) {
  std::vector<ProjPoint> imgs;
  for (const auto& w : m.points()) imgs.push_back(S.blowdown(w));
  std::sort(imgs.begin(), imgs.end());
  imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
  if (imgs.size() < 3) return true;
  for (size_t a = 2; a < imgs.size(); ++a)
    if (det3(*imgs[0].f, imgs[0], imgs[1], imgs[a]) != 0) return false;
  return true;
}

CheckOutcome claim_576_check(const SplitSurface& S, const Plane& T, const ProjPoint& x,
                             const ProjPoint& y, const ProjPoint& u, const ProjPoint& w) {
  CheckOutcome out;
  try {
    auto lhs = compose_cp(S, T, u, w);
    auto xcp = compose_cp(S, T, x, y);
    if (!lhs || !xcp) {
      out.reason = "composition lands on an exceptional line";
      return out;
    }
    const CubicForm& V = S.surface();
    ProjPoint xy = third_or_throw(V, x, y, "x o y");
    ProjPoint uw = third_or_throw(V, u, w, "u o w");
    ProjPoint inner = third_or_throw(V, *xcp, uw, "(x o_Cp y) o (u o w)");
    ProjPoint rhs = third_or_throw(V, xy, inner, "outer");
    out.evaluated = true;
    out.holds = rhs == *lhs;
    if (!out.holds) out.reason = "sides differ";
  } catch (const std::invalid_argument& e) {
    out.reason = e.what();
  }
  return out;
}

CheckOutcome eq_51_check(const SplitSurface& S, const Plane& T, const ProjPoint& x,
                         const ProjPoint& y, const ProjPoint& u, const ProjPoint& w) {
  CheckOutcome out;
  try {
    const auto& sec = S.section(T);
    if (!plane_curve_singular_points(sec.chart.form).empty()) {
      out.reason = "section is singular";
      return out;
    }
    auto lhs = compose_cp(S, T, u, w);
    auto anchor = compose_cp(S, T, x, y);
    if (!lhs || !anchor) {
      out.reason = "composition lands on an exceptional line";
      return out;
    }
    // Work on the section curve through its chart.
    const CubicForm& C = sec.chart.form;
    auto pull = [&](const ProjPoint& pt) { return sec.chart.pull(pt); };
    auto o = [&](const ProjPoint& a, const ProjPoint& b) {
      auto r = curve_third(C, a, b);
      if (r.kind != ThirdResult::Unique)
        throw std::invalid_argument("curve composition is multivalued");
      return r.z;
    };
    // group with identity a: s + t := a o (s o t); inv(s) = s o (a o a)
    ProjPoint a = pull(x);
    auto add = [&](const ProjPoint& s, const ProjPoint& t) { return o(a, o(s, t)); };
    auto inv = [&](const ProjPoint& s) { return o(s, o(a, a)); };
    ProjPoint rhs =
        add(add(pull(*anchor), inv(o(pull(x), pull(y)))), o(pull(u), pull(w)));
    out.evaluated = true;
    out.holds = rhs == pull(*lhs);
    if (!out.holds) out.reason = "group-law route disagrees";
  } catch (const std::invalid_argument& e) {
    out.reason = e.what();
  }
  return out;
}

CheckOutcome claim_577_check(const SplitSurface& S, int i, int j, const Plane& T) {
  CheckOutcome out;
  try {
    LineTriple L{S.exceptional_lines()[i], S.exceptional_lines()[j], connecting_line(S, i, j)};
    if (!lambda_property_a(L)) {
      out.reason = "triple violates property (A)";
      return out;
    }
    if (!blowdown_image_is_line(S, L.m)) {
      out.reason = "p(m) is not a plane line";
      return out;
    }
    ProjPoint x = line_plane_intersection(L.l1, T);
    ProjPoint y = line_plane_intersection(L.l2, T);
    ProjPoint z = line_plane_intersection(L.m, T);
    auto rhs = compose_cp(S, T, x, y);
    out.evaluated = true;
    if (z == x || z == y) {
      // T passes through m cap E_i (or E_j): the line p(m) is tangent to the
      // image cubic at the base point and the composition lands there.
      out.holds = !rhs.has_value();
    } else {
      out.holds = rhs.has_value() && *rhs == z;
    }
    if (!out.holds) out.reason = "z != x o_Cp y";
  } catch (const std::invalid_argument& e) {
    out.reason = e.what();
  }
  return out;
}

Theorem53Report theorem_53_check(const SplitSurface& S, const ProjPoint& x) {
  if (S.on_exceptional(x)) throw std::invalid_argument("point lies on an exceptional line");
  Theorem53Report rep;
  std::set<ProjPoint> reached;
  auto sweep = [&](const ProjPoint& origin) {
    for (const auto& T : planes_through(S.field(), origin)) {
      bool skipped = false;
      try {
        for (const auto& z : compose_cp_diagonal_values(S, T, origin))
          if (!S.on_exceptional(z) && reached.insert(z).second)
            rep.witness.emplace(z, std::make_pair(origin, T));
      } catch (const std::invalid_argument&) {
        skipped = true;
      }
      if (skipped)
        ++rep.sections_skipped;
      else
        ++rep.sections_used;
    }
  };
  reached.insert(x);
  sweep(x);
  rep.rounds = 1;
  for (const auto& y : S.interior())
    if (!reached.count(y)) rep.first_sweep_missed.push_back(y);
  // Iterate sweeps from newly reached points until the closure stabilizes.
  std::set<ProjPoint> swept{x};
  while (reached.size() < S.interior().size()) {
    ProjPoint next{};
    bool found = false;
    for (const auto& v : reached)
      if (!swept.count(v)) {
        next = v;
        found = true;
        break;
      }
    if (!found) break;
    swept.insert(next);
    sweep(next);
    ++rep.rounds;
  }
  for (const auto& y : S.interior())
    if (!reached.count(y)) rep.missed.push_back(y);
  rep.covered = rep.missed.empty();
  return rep;
}

Theorem52Result theorem_52_closure(const SplitSurface& S, std::span<const ProjPoint> seed,
                                   int max_rounds) {
  Theorem52Result out;
  std::set<ProjPoint> reached(seed.begin(), seed.end());
  for (const auto& s : seed)
    if (S.on_exceptional(s)) throw std::invalid_argument("seed must avoid exceptional lines");
  while (out.rounds < max_rounds) {
    ++out.rounds;
    std::vector<ProjPoint> snapshot(reached.begin(), reached.end());
    bool grew = false;
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = i + 1; j < snapshot.size(); ++j) {
        Line l = Line::through(snapshot[i], snapshot[j]);
        for (const auto& T : planes_through_line(l)) {
          try {
            auto z = compose_cp(S, T, snapshot[i], snapshot[j]);
            if (z && !S.on_exceptional(*z)) grew |= reached.insert(*z).second;
          } catch (const std::invalid_argument&) {
          }
        }
      }
    if (!grew) {
      out.complete = true;
      break;
    }
  }
  out.reached.assign(reached.begin(), reached.end());
  out.generated_all = out.reached.size() == S.interior().size();
  return out;
}

bool lemma_56_check(const CubicForm& C, std::span<const ProjPoint> reflections,
                    const ProjPoint& x, const ProjPoint& y) {
  auto o = [&](const ProjPoint& a, const ProjPoint& b) {
    auto r = curve_third(C, a, b);
    if (r.kind != ThirdResult::Unique)
      throw std::invalid_argument("curve composition is multivalued");
    return r.z;
  };
  // t = t_{z_1} ... t_{z_n} applied right-to-left
  auto apply = [&](bool inverse, ProjPoint v) {
    if (!inverse) {
      for (size_t i = reflections.size(); i-- > 0;) v = o(reflections[i], v);
    } else {
      for (size_t i = 0; i < reflections.size(); ++i) v = o(reflections[i], v);
    }
    return v;
  };
  ProjPoint lhs = apply(true, o(apply(false, x), apply(false, y)));
  ProjPoint rhs = o(x, y);
  auto col = collinearity(C);
  Partition R3 = u3(col.cubic);
  int li = col.index_of(lhs), ri = col.index_of(rhs);
  if (li < 0 || ri < 0) throw std::logic_error("points escaped the curve (internal bug)");
  return R3.same(li, ri);
}

bool corollary_54_check(const SplitSurface& S) {
  auto col = collinearity(S.surface());
  return u3(col.cubic).class_count() == 1;
}

}  // namespace chord
