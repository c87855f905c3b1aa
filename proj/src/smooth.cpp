#include "chord/smooth.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chord {

namespace {

// Univariate polynomials over a Field, coefficients ascending, trimmed.
using UPoly = std::vector<uint32_t>;

UPoly utrim(UPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

UPoly urem(UPoly a, const UPoly& b, const Field& k) {
  a = utrim(a);
  uint32_t lead_inv = k.inv(b.back());
  while (a.size() >= b.size()) {
    uint32_t c = k.mul(a.back(), lead_inv);
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = k.sub(a[shift + i], k.mul(c, b[i]));
    a = utrim(a);
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b, const Field& k) {
  a = utrim(std::move(a));
  b = utrim(std::move(b));
  while (!b.empty()) {
    UPoly r = urem(a, b, k);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

uint32_t ueval(const UPoly& a, uint32_t t, const Field& k) {
  uint32_t acc = 0;
  for (size_t i = a.size(); i-- > 0;) acc = k.add(k.mul(acc, t), a[i]);
  return acc;
}

// gcd of a family; an all-zero family yields the zero polynomial (empty).
UPoly family_gcd(const std::vector<UPoly>& fs, const Field& k) {
  UPoly g;
  for (const auto& f : fs) {
    if (utrim(f).empty()) continue;
    g = g.empty() ? utrim(f) : ugcd(g, f, k);
    if (g.size() == 1) return g;
  }
  return g;
}

// Quadric evaluated on the pencil (1, a, y) resp. (0, 1, y): coefficients of
// the univariate in y. Monomial order for dim 2: x0^2, x0x1, x0x2, x1^2,
// x1x2, x2^2.
UPoly quadric_on_chart0(const Quadric& Q, uint32_t a, const Field& k) {
  uint32_t a2 = k.mul(a, a);
  return utrim({k.add(k.add(Q.c[0], k.mul(Q.c[1], a)), k.mul(Q.c[3], a2)),
                k.add(Q.c[2], k.mul(Q.c[4], a)), Q.c[5]});
}
UPoly quadric_on_chart1(const Quadric& Q, const Field&) {
  return utrim({Q.c[3], Q.c[4], Q.c[5]});
}
// Cubic on the same charts. Monomial order for dim 2: x0^3, x0^2x1, x0^2x2,
// x0x1^2, x0x1x2, x0x2^2, x1^3, x1^2x2, x1x2^2, x2^3.
UPoly cubic_on_chart0(const CubicForm& C, uint32_t a, const Field& k) {
  uint32_t a2 = k.mul(a, a), a3 = k.mul(a2, a);
  uint32_t c0 = k.add(k.add(C.c[0], k.mul(C.c[1], a)),
                      k.add(k.mul(C.c[3], a2), k.mul(C.c[6], a3)));
  uint32_t c1 = k.add(k.add(C.c[2], k.mul(C.c[4], a)), k.mul(C.c[7], a2));
  uint32_t c2 = k.add(C.c[5], k.mul(C.c[8], a));
  return utrim({c0, c1, c2, C.c[9]});
}
UPoly cubic_on_chart1(const CubicForm& C, const Field&) {
  return utrim({C.c[6], C.c[7], C.c[8], C.c[9]});
}

bool singular_at(const CubicForm& F, const std::array<Quadric, 4>& grad, const ProjPoint& x) {
  if (eval_form(F, x) != 0) return false;
  return !is_smooth_point(F, grad, x);
}

// Binary restrictions of F and its partials to the line (a, b), as
// univariates in t along s*a + t*b; the endpoint b itself is checked
// separately by the caller via rational/low-degree point scans.
bool line_has_common_zero(const CubicForm& F, const std::array<Quadric, 4>& grad,
                          const ProjPoint& a, const ProjPoint& b) {
  const Field& k = *F.f;
  std::span<const uint32_t> as(a.c.data(), 4), bs(b.c.data(), 4);
  std::vector<UPoly> fam;
  fam.reserve(5);
  for (int i = 0; i < 4; ++i) {
    // Quadric restriction: Q(a) + t D_b Q(a) + t^2 Q(b).
    const Quadric& Q = grad[i];
    uint32_t qa = eval_quadric(Q, as), qb = eval_quadric(Q, bs);
    // Mixed coefficient via polarization Q(a+b) - Q(a) - Q(b).
    std::array<uint32_t, 4> ab{};
    for (int j = 0; j < 4; ++j) ab[j] = k.add(a.c[j], b.c[j]);
    uint32_t qmix = k.sub(k.sub(eval_quadric(Q, ab), qa), qb);
    fam.push_back(utrim({qa, qmix, qb}));
  }
  bool all_zero = true;
  for (const auto& f : fam) all_zero &= f.empty();
  UPoly g = family_gcd(fam, k);
  if (!all_zero && g.size() <= 1 && !g.empty()) return false;  // coprime partials
  // Include F itself (needed in characteristic 3, harmless elsewhere).
  uint32_t fa = eval_form(F, as), fb = eval_form(F, bs);
  uint32_t fba = dir_derivative(grad, 3, as, bs), fab = dir_derivative(grad, 3, bs, as);
  fam.push_back(utrim({fa, fba, fab, fb}));
  g = family_gcd(fam, k);
  if (g.empty()) return true;  // every restriction vanishes: the line is singular
  return g.size() > 1;
}

template <typename Fn>
void for_each_line(const Field& K, Fn&& fn) {
  uint32_t q = K.q();
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
          fn(r0, r1);
        }
    }
}

}  // namespace

std::vector<ProjPoint> plane_curve_singular_points(const CubicForm& C) {
  if (C.dim != 2) throw std::invalid_argument("expected a plane cubic");
  const Field& k = *C.f;
  std::vector<ProjPoint> out;
  for (uint32_t d = 1; d <= 3; ++d) {
    uint64_t qd = 1;
    for (uint32_t i = 0; i < d * k.e(); ++i) {
      qd *= k.p();
      if (qd > 65536) throw std::invalid_argument("smoothness scan out of supported range");
    }
    const Field& K = k.extension(d);
    CubicForm CK = (d == 1) ? C : C.embedded(K);
    auto grad = gradient(CK);
    auto emit = [&](std::array<uint32_t, 3> coords) {
      ProjPoint x = ProjPoint::make(K, 2, coords);
      if (singular_at(CK, grad, x)) out.push_back(x);
    };
    // Chart (1 : a : y).
    for (uint32_t a = 0; a < K.q(); ++a) {
      std::vector<UPoly> fam;
      fam.push_back(cubic_on_chart0(CK, a, K));
      for (int i = 0; i < 3; ++i) fam.push_back(quadric_on_chart0(grad[i], a, K));
      UPoly g = family_gcd(fam, K);
      if (g.empty()) {
        for (uint32_t y = 0; y < K.q(); ++y) emit({K.one(), a, y});
      } else if (g.size() > 1) {
        for (uint32_t y = 0; y < K.q(); ++y)
          if (ueval(g, y, K) == 0) emit({K.one(), a, y});
      }
    }
    // Chart (0 : 1 : y).
    {
      std::vector<UPoly> fam;
      fam.push_back(cubic_on_chart1(CK, K));
      for (int i = 0; i < 3; ++i) fam.push_back(quadric_on_chart1(grad[i], K));
      UPoly g = family_gcd(fam, K);
      if (g.empty()) {
        for (uint32_t y = 0; y < K.q(); ++y) emit({0, K.one(), y});
      } else if (g.size() > 1) {
        for (uint32_t y = 0; y < K.q(); ++y)
          if (ueval(g, y, K) == 0) emit({0, K.one(), y});
      }
    }
    // The point (0 : 0 : 1).
    emit({0, 0, K.one()});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_smooth(const CubicForm& F) {
  const Field& k = *F.f;
  if (F.dim == 2) return plane_curve_singular_points(F).empty();
  if (k.q() > 13) throw std::invalid_argument("surface smoothness scan supports q <= 13");
  auto grad = gradient(F);

  // Rational points.
  for (const auto& x : enumerate_proj_points(k, 3))
    if (singular_at(F, grad, x)) return false;

  // Rational lines: a nonconstant gcd of the restrictions certifies a
  // singular point of degree <= 3 somewhere on the line.
  bool hit = false;
  for_each_line(k, [&](const std::array<uint32_t, 4>& r0, const std::array<uint32_t, 4>& r1) {
    if (hit) return;
    ProjPoint a = ProjPoint::make(k, 3, r0), b = ProjPoint::make(k, 3, r1);
    if (line_has_common_zero(F, grad, a, b)) hit = true;
  });
  if (hit) return false;

  // Plane sections: a singular point of F on a rational plane is singular on
  // the section; the section finder is complete for degree <= 3.
  for (const auto& T : enumerate_planes(k)) {
    PlaneCubic section;
    try {
      section = plane_section(F, T);
    } catch (const std::invalid_argument&) {
      return false;  // plane inside the surface: F is reducible, hence singular
    }
    for (const auto& u : plane_curve_singular_points(section.form)) {
      const Field& K = *u.f;
      CubicForm FK = (&K == &k) ? F : F.embedded(K);
      auto gradK = (&K == &k) ? grad : gradient(FK);
      std::array<uint32_t, 4> coords{};
      for (int i = 0; i < 4; ++i) {
        uint32_t acc = 0;
        for (int j = 0; j < 3; ++j)
          acc = K.add(acc, K.mul(K.embed_from(k, section.basis[j][i]), u.c[j]));
        coords[i] = acc;
      }
      ProjPoint x = ProjPoint::make(K, 3, coords);
      if (singular_at(FK, gradK, x)) return false;
    }
  }

  // Lines rational over F_{q^2}: catches conjugate quartets of double points
  // spanning P^3 (each lies on a line stable under the square of Frobenius).
  const Field& K2 = k.extension(2);
  CubicForm F2 = F.embedded(K2);
  auto grad2 = gradient(F2);
  hit = false;
  for_each_line(K2, [&](const std::array<uint32_t, 4>& r0, const std::array<uint32_t, 4>& r1) {
    if (hit) return;
    ProjPoint a = ProjPoint::make(K2, 3, r0), b = ProjPoint::make(K2, 3, r1);
    if (line_has_common_zero(F2, grad2, a, b)) hit = true;
  });
  return !hit;
}

uint64_t form_index(const CubicForm& F) {
  uint64_t idx = 0, place = 1;
  for (int m = 0; m < F.ncoeffs(); ++m) {
    idx += place * F.c[m];
    place *= F.f->q();
  }
  return idx;
}

CubicForm form_from_index(const Field& k, int dim, uint64_t index) {
  std::vector<uint32_t> c(dim == 2 ? 10 : 20);
  for (auto& ci : c) {
    ci = static_cast<uint32_t>(index % k.q());
    index /= k.q();
  }
  return CubicForm::make(k, dim, c);
}

std::vector<uint8_t> singular_form_table(const Field& k, int dim) {
  int ncoef = dim == 2 ? 10 : 20;
  uint64_t total = 1;
  for (int i = 0; i < ncoef; ++i) {
    total *= k.q();
    if (total > (1ull << 21)) throw std::invalid_argument("form table out of supported range");
  }
  std::vector<uint8_t> table(total, 0);

  const auto& cmons = cubic_monomials(dim);
  uint32_t p = k.p();
  int e_k = k.e();
  int ndigits = ncoef * e_k;  // F_p coordinates of a coefficient vector

  // Inverses mod p, once.
  std::vector<uint32_t> pinv(p, 0);
  for (uint32_t a = 1; a < p; ++a)
    for (uint32_t b = 1; b < p; ++b)
      if ((a * b) % p == 1) pinv[a] = b;

  // For each point over F_{q^d}, d in {4,5,6} (covering every d <= 6), the
  // map c -> (F_c(x), grad F_c(x)) is F_p-linear; mark its kernel.
  for (uint32_t D : {4u, 5u, 6u}) {
    const Field& K = k.extension(D);
    int e_K = static_cast<int>(K.e());
    int nrows = (dim + 2) * e_K;
    std::vector<uint32_t> kplace(e_K);
    kplace[e_K - 1] = 1;
    for (int i = e_K - 2; i >= 0; --i) kplace[i] = kplace[i + 1] * p;
    std::vector<uint32_t> small_basis(e_k);  // embedded images of 1, x, x^2, ...
    for (int t = 0; t < e_k; ++t) {
      std::vector<uint32_t> bt(e_k, 0);
      bt[t] = 1;
      small_basis[t] = K.embed_from(k, k.from_coeffs(bt));
    }
    std::vector<uint8_t> M(nrows * ndigits);
    std::vector<int> pivot_col;
    for (const auto& x : enumerate_proj_points(K, dim)) {
      std::fill(M.begin(), M.end(), 0);
      std::span<const uint32_t> xs(x.c.data(), dim + 1);
      for (int m = 0; m < ncoef; ++m) {
        // Monomial and derivative values at x.
        std::array<uint32_t, 5> vals{};  // [0] = F-row, [1..dim+1] = partials
        uint32_t mono = K.one();
        for (int v = 0; v <= dim; ++v)
          for (int r = 0; r < cmons[m][v]; ++r) mono = K.mul(mono, xs[v]);
        vals[0] = mono;
        for (int v = 0; v <= dim; ++v) {
          if (cmons[m][v] == 0 || cmons[m][v] % p == 0) {
            vals[v + 1] = 0;
            continue;
          }
          uint32_t dm = K.scalar(cmons[m][v] % p);
          for (int w = 0; w <= dim; ++w) {
            int times = cmons[m][w] - (w == v ? 1 : 0);
            for (int r = 0; r < times; ++r) dm = K.mul(dm, xs[w]);
          }
          vals[v + 1] = dm;
        }
        // Scatter: digit t of coefficient c_m scales each value by the
        // embedded basis element of the small field.
        for (int t = 0; t < e_k; ++t) {
          int col = m * e_k + t;
          for (int row = 0; row < dim + 2; ++row) {
            uint32_t scaled = K.mul(vals[row], small_basis[t]);
            if (scaled == 0) continue;
            for (int dgt = 0; dgt < e_K; ++dgt)
              M[(row * e_K + dgt) * ndigits + col] =
                  static_cast<uint8_t>((scaled / kplace[dgt]) % p);
          }
        }
      }
      // Nullspace over F_p by Gauss-Jordan.
      pivot_col.clear();
      int rank = 0;
      for (int col = 0; col < ndigits && rank < nrows; ++col) {
        int pr = -1;
        for (int r = rank; r < nrows; ++r)
          if (M[r * ndigits + col] != 0) {
            pr = r;
            break;
          }
        if (pr < 0) continue;
        if (pr != rank)
          for (int j = 0; j < ndigits; ++j)
            std::swap(M[rank * ndigits + j], M[pr * ndigits + j]);
        uint32_t inv = pinv[M[rank * ndigits + col]];
        if (inv != 1)
          for (int j = 0; j < ndigits; ++j)
            M[rank * ndigits + j] = static_cast<uint8_t>((M[rank * ndigits + j] * inv) % p);
        for (int r = 0; r < nrows; ++r) {
          uint32_t c = M[r * ndigits + col];
          if (r == rank || c == 0) continue;
          for (int j = 0; j < ndigits; ++j)
            M[r * ndigits + j] =
                static_cast<uint8_t>((M[r * ndigits + j] + (p - c) * M[rank * ndigits + j]) % p);
        }
        pivot_col.push_back(col);
        ++rank;
      }
      int nullity = ndigits - rank;
      if (nullity == 0) continue;
      // Basis of the kernel: one vector per free column.
      std::vector<int> free_cols;
      {
        std::vector<char> is_pivot(ndigits, 0);
        for (int c : pivot_col) is_pivot[c] = 1;
        for (int j = 0; j < ndigits; ++j)
          if (!is_pivot[j]) free_cols.push_back(j);
      }
      std::vector<std::vector<uint8_t>> basis(nullity, std::vector<uint8_t>(ndigits, 0));
      for (int b = 0; b < nullity; ++b) {
        basis[b][free_cols[b]] = 1;
        for (int r = 0; r < rank; ++r) {
          uint32_t v = M[r * ndigits + free_cols[b]];
          if (v) basis[b][pivot_col[r]] = static_cast<uint8_t>((p - v) % p);
        }
      }
      // Enumerate the kernel and mark singular coefficient vectors.
      uint64_t combos = 1;
      for (int b = 0; b < nullity; ++b) {
        combos *= p;
        if (combos > (1ull << 22)) throw std::logic_error("kernel too large (internal bug)");
      }
      std::vector<uint8_t> digs(ndigits, 0);
      std::vector<uint32_t> lambda(nullity, 0);
      for (uint64_t step = 1; step < combos; ++step) {
        // increment base-p counter and update digs incrementally
        int pos = 0;
        while (true) {
          lambda[pos] = (lambda[pos] + 1) % p;
          for (int j = 0; j < ndigits; ++j) {
            uint32_t prev = digs[j];
            digs[j] = static_cast<uint8_t>((prev + basis[pos][j]) % p);
          }
          if (lambda[pos] != 0) break;
          // rolled over: subtract p*basis = 0 mod p, counter carries
          ++pos;
        }
        // digs -> form index
        uint64_t idx = 0, place = 1;
        for (int m = 0; m < ncoef; ++m) {
          uint32_t digits_of_cm[16];
          for (int t = 0; t < e_k; ++t) digits_of_cm[t] = digs[m * e_k + t];
          // element index: digit t is the coefficient of x^t, c0 most significant
          uint32_t elem = 0;
          for (int t = 0; t < e_k; ++t) elem = elem * p + digits_of_cm[t];
          idx += place * elem;
          place *= k.q();
        }
        table[idx] = 1;
      }
    }
  }
  return table;
}

}  // namespace chord
