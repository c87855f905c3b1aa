#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chord {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Arithmetic in F_{p^e}, q = p^e <= 2^16 (resource guard).
//
// Elements are indices 0..q-1 encoding the coefficient tuple
// (c0, c1, ..., c_{e-1}) of the polynomial representation, c0 the constant
// term. c0 is the most significant base-p digit of the index, so ascending
// index order enumerates coefficient tuples lexicographically; all canonical
// element orderings below mean this order.
//
// The modulus is the lexicographically least monic irreducible of degree e
// (coefficients read from the constant term upward), so a (p, e) pair always
// denotes the same field with the same element numbering.
class Field {
 public:
  // Memoized: the same (p, e) always yields the same Field instance,
  // which lives for the duration of the process.
  static const Field& get(uint32_t p, uint32_t e);

  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  uint32_t q() const { return q_; }
  // e+1 entries in [0,p), constant term first, leading 1.
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  uint32_t zero() const { return 0; }
  uint32_t one() const { return one_; }
  // c*1 for c in [0,p).
  uint32_t scalar(uint32_t c) const;

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;  // throws std::domain_error on 0
  uint32_t pw(uint32_t a, uint64_t k) const;
  uint32_t cube(uint32_t a) const { return pw(a, 3); }
  // k*a for a small integer k (reduces k mod p).
  uint32_t scalar_mul(uint32_t k, uint32_t a) const { return mul(scalar(k % p_), a); }

  std::vector<uint32_t> coeffs(uint32_t a) const;
  uint32_t from_coeffs(std::span<const uint32_t> c) const;

  // Extension/subfield handling. extension(m) is F_{p^{e*m}}.
  const Field& extension(uint32_t m) const;
  bool has_subfield(const Field& sub) const;
  // Ring embedding fixing F_p; the source generator goes to the least root
  // (in canonical element order) of the source modulus. Cached per pair.
  uint32_t embed_from(const Field& sub, uint32_t a) const;
  // Inverse of embed_from on its image.
  std::optional<uint32_t> retract_to(const Field& sub, uint32_t a) const;

  std::string str(uint32_t a) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(uint32_t p, uint32_t e);
  struct EmbedMaps;
  const EmbedMaps& embed_maps(const Field& sub) const;

  uint32_t p_, e_, q_;
  uint32_t one_;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> exp_;   // exp_[i] = g^i, length 2(q-1)
  std::vector<uint32_t> log_;   // log_[a] for a != 0
  std::vector<uint32_t> place_;  // place_[i] = p^{e-1-i}
};

// Typed element for API edges; geometry kernels use raw indices.
struct FieldElem {
  const Field* f = nullptr;
  uint32_t v = 0;

  FieldElem() = default;
  FieldElem(const Field& field, uint32_t val) : f(&field), v(val) {}

  friend FieldElem operator+(FieldElem a, FieldElem b) { return {a.same(b), a.f->add(a.v, b.v)}; }
  friend FieldElem operator-(FieldElem a, FieldElem b) { return {a.same(b), a.f->sub(a.v, b.v)}; }
  friend FieldElem operator*(FieldElem a, FieldElem b) { return {a.same(b), a.f->mul(a.v, b.v)}; }
  FieldElem operator-() const { return {*f, f->neg(v)}; }
  FieldElem inverse() const { return {*f, f->inv(v)}; }
  FieldElem pow(uint64_t k) const { return {*f, f->pw(v, k)}; }
  FieldElem cube() const { return {*f, f->cube(v)}; }
  bool operator==(const FieldElem& o) const { return f == o.f && v == o.v; }
  bool is_zero() const { return v == 0; }

 private:
  const Field& same(const FieldElem& o) const {
    if (f != o.f) throw std::invalid_argument("field mismatch between operands");
    return *f;
  }
};

}  // namespace chord
