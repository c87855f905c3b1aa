#include "chord/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace chord {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, coefficients ascending degree. Construction-time
// only; runtime arithmetic goes through the exp/log tables.
using Poly = std::vector<uint32_t>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(r);
}

// Remainder of a modulo monic m.
Poly poly_rem(Poly a, const Poly& m, uint32_t p) {
  a = trim(a);
  while (a.size() >= m.size()) {
    uint32_t lead = a.back();
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      uint32_t sub = (lead * m[i]) % p;
      a[shift + i] = (a[shift + i] + p * p - sub) % p;
    }
    a = trim(a);
  }
  return a;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
  std::vector<uint32_t> fs;
  for (uint32_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      if (fs.empty() || fs.back() != d) fs.push_back(d);
      n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

struct Field::EmbedMaps {
  std::vector<uint32_t> fwd;                    // sub element -> this element
  std::unordered_map<uint32_t, uint32_t> back;  // image -> sub element
};

Field::Field(uint32_t p, uint32_t e) : p_(p), e_(e) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > 65536) throw std::invalid_argument("field size p^e exceeds 2^16 guard");
  }
  q_ = static_cast<uint32_t>(q);

  place_.resize(e_);
  place_[e_ - 1] = 1;
  for (int i = static_cast<int>(e_) - 2; i >= 0; --i) place_[i] = place_[i + 1] * p_;
  one_ = place_[0];  // coefficient tuple (1,0,...,0)

  // Index k has digits c_i = (k / place_[i]) % p, i.e. the coefficient of x^i.
  auto index_to_poly = [&](uint32_t k) {
    Poly c(e_);
    for (uint32_t i = 0; i < e_; ++i) c[i] = (k / place_[i]) % p_;
    return trim(c);
  };

  // Lexicographically least monic irreducible of degree e. For e == 1 this is
  // x itself; reduction mod x leaves constants untouched.
  modulus_.assign(e_ + 1, 0);
  modulus_[e_] = 1;
  if (e_ >= 2) {
    bool found = false;
    for (uint32_t k = 0; k < q_ && !found; ++k) {
      Poly m(e_ + 1, 0);
      for (uint32_t i = 0; i < e_; ++i) m[i] = (k / place_[i]) % p_;
      m[e_] = 1;
      // Trial division by every monic polynomial of degree 1..e/2.
      bool irred = true;
      for (uint32_t d = 1; irred && 2 * d <= e_; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p_;
        for (uint64_t t = 0; irred && t < count; ++t) {
          Poly div(d + 1, 0);
          uint64_t tt = t;
          for (uint32_t i = 0; i < d; ++i) {
            div[i] = tt % p_;
            tt /= p_;
          }
          div[d] = 1;
          if (poly_rem(m, div, p_).empty()) irred = false;
        }
      }
      if (irred) {
        modulus_ = m;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible modulus found (internal bug)");
  }

  Poly mod = modulus_;
  auto poly_to_index = [&](const Poly& a) {
    uint32_t k = 0;
    for (size_t i = 0; i < a.size(); ++i) k += a[i] * place_[i];
    return k;
  };
  auto mul_poly = [&](uint32_t a, uint32_t b) {
    return poly_to_index(poly_rem(poly_mul(index_to_poly(a), index_to_poly(b), p_), mod, p_));
  };
  auto pow_poly = [&](uint32_t a, uint64_t k) {
    uint32_t r = one_, base = a;
    while (k) {
      if (k & 1) r = mul_poly(r, base);
      base = mul_poly(base, base);
      k >>= 1;
    }
    return r;
  };

  // Least primitive element, then exp/log tables.
  uint32_t g = 0;
  auto factors = prime_factors(q_ - 1);
  for (uint32_t cand = 1; cand < q_; ++cand) {
    if (cand == one_ && q_ > 2) continue;
    bool prim = true;
    for (uint32_t f : factors)
      if (pow_poly(cand, (q_ - 1) / f) == one_) {
        prim = false;
        break;
      }
    if (prim) {
      g = cand;
      break;
    }
  }
  exp_.resize(2 * (q_ - 1));
  log_.assign(q_, 0);
  uint32_t acc = one_;
  for (uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = acc;
    exp_[i + (q_ - 1)] = acc;
    log_[acc] = i;
    acc = mul_poly(acc, g);
  }
}

const Field& Field::get(uint32_t p, uint32_t e) {
  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, e))).first;
  return *it->second;
}

uint32_t Field::scalar(uint32_t c) const {
  if (c >= p_) throw std::invalid_argument("scalar out of range");
  return c * place_[0];
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t r = 0;
  for (uint32_t i = 0; i < e_; ++i) {
    uint32_t da = (a / place_[i]) % p_, db = (b / place_[i]) % p_;
    uint32_t s = da + db;
    if (s >= p_) s -= p_;
    r += s * place_[i];
  }
  return r;
}

uint32_t Field::neg(uint32_t a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  uint32_t r = 0;
  for (uint32_t i = 0; i < e_; ++i) {
    uint32_t d = (a / place_[i]) % p_;
    r += (d == 0 ? 0 : p_ - d) * place_[i];
  }
  return r;
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inversion of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

uint32_t Field::pw(uint32_t a, uint64_t k) const {
  if (a == 0) return k == 0 ? one_ : 0;
  uint64_t r = (static_cast<uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1);
  return exp_[r];
}

std::vector<uint32_t> Field::coeffs(uint32_t a) const {
  std::vector<uint32_t> c(e_);
  for (uint32_t i = 0; i < e_; ++i) c[i] = (a / place_[i]) % p_;
  return c;
}

uint32_t Field::from_coeffs(std::span<const uint32_t> c) const {
  if (c.size() != e_) throw std::invalid_argument("coefficient tuple has wrong length");
  uint32_t k = 0;
  for (uint32_t i = 0; i < e_; ++i) {
    if (c[i] >= p_) throw std::invalid_argument("coefficient not reduced mod p");
    k += c[i] * place_[i];
  }
  return k;
}

const Field& Field::extension(uint32_t m) const { return get(p_, e_ * m); }

bool Field::has_subfield(const Field& sub) const {
  return sub.p_ == p_ && e_ % sub.e_ == 0;
}

const Field::EmbedMaps& Field::embed_maps(const Field& sub) const {
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>, std::unique_ptr<EmbedMaps>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(this, &sub);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto maps = std::make_unique<EmbedMaps>();
  // Least root of the source modulus under the canonical element order.
  uint32_t root = q_;
  for (uint32_t t = 0; t < q_; ++t) {
    uint32_t val = 0;  // Horner, highest coefficient first
    for (size_t i = sub.modulus_.size(); i-- > 0;)
      val = add(mul(val, t), scalar(sub.modulus_[i] % p_));
    if (val == 0) {
      root = t;
      break;
    }
  }
  if (root == q_) throw std::logic_error("source modulus has no root in target (internal bug)");
  std::vector<uint32_t> rpow(sub.e_);
  rpow[0] = one_;
  for (uint32_t i = 1; i < sub.e_; ++i) rpow[i] = mul(rpow[i - 1], root);
  maps->fwd.resize(sub.q_);
  for (uint32_t a = 0; a < sub.q_; ++a) {
    uint32_t img = 0;
    for (uint32_t i = 0; i < sub.e_; ++i) {
      uint32_t ci = (a / sub.place_[i]) % sub.p_;
      img = add(img, mul(scalar(ci), rpow[i]));
    }
    maps->fwd[a] = img;
    maps->back.emplace(img, a);
  }
  auto& ref = *maps;
  cache.emplace(key, std::move(maps));
  return ref;
}

uint32_t Field::embed_from(const Field& sub, uint32_t a) const {
  if (&sub == this) return a;
  if (!has_subfield(sub)) throw std::invalid_argument("incompatible extension degrees");
  return embed_maps(sub).fwd[a];
}

std::optional<uint32_t> Field::retract_to(const Field& sub, uint32_t a) const {
  if (&sub == this) return a;
  if (!has_subfield(sub)) throw std::invalid_argument("incompatible extension degrees");
  const auto& m = embed_maps(sub);
  auto it = m.back.find(a);
  if (it == m.back.end()) return std::nullopt;
  return it->second;
}

std::string Field::str(uint32_t a) const {
  auto c = coeffs(a);
  std::string s = "[";
  for (uint32_t i = 0; i < e_; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

}  // namespace chord
