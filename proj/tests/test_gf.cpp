#include "chord/gf.hpp"

#include <set>

#include "doctest.h"

using chord::Field;

TEST_SUITE("gf") {
  TEST_CASE("construction and moduli") {
    const Field& f2 = Field::get(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.modulus() == std::vector<uint32_t>{0, 1});  // x

    const Field& f4 = Field::get(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<uint32_t>{1, 1, 1});  // x^2 + x + 1, forced

    const Field& f7 = Field::get(7, 1);
    CHECK(f7.q() == 7);

    CHECK(&Field::get(3, 2) == &Field::get(3, 2));  // memoized
    CHECK_THROWS_AS(Field::get(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field::get(2, 17), std::invalid_argument);
  }

  TEST_CASE("arithmetic examples") {
    const Field& f4 = Field::get(2, 2);
    uint32_t a = f4.from_coeffs(std::vector<uint32_t>{0, 1});  // residue of x
    uint32_t a1 = f4.from_coeffs(std::vector<uint32_t>{1, 1});
    CHECK(f4.mul(a, a) == a1);   // a^2 = a + 1
    CHECK(f4.cube(a) == f4.one());  // a^3 = 1

    const Field& f7 = Field::get(7, 1);
    CHECK(f7.inv(3) == 5);  // 3 * 5 = 15 = 1 mod 7
    CHECK(f7.mul(3, 5) == f7.one());
  }

  TEST_CASE("enumeration order") {
    const Field& f2 = Field::get(2, 1);
    CHECK(f2.zero() == 0);
    CHECK(f2.one() == 1);
    const Field& f9 = Field::get(3, 2);
    CHECK(f9.q() == 9);
    CHECK(f9.coeffs(0) == std::vector<uint32_t>{0, 0});  // first element is 0
    // ascending indices enumerate coefficient tuples lexicographically
    std::vector<std::vector<uint32_t>> seen;
    for (uint32_t i = 0; i < 9; ++i) seen.push_back(f9.coeffs(i));
    for (size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
  }

  TEST_CASE("field axioms exhaustive on small fields") {
    for (auto [p, e] : {std::pair<uint32_t, uint32_t>{2, 1},
                        {2, 2},
                        {2, 3},
                        {3, 1},
                        {3, 2},
                        {5, 1},
                        {7, 1},
                        {2, 4},
                        {5, 2},
                        {3, 3}}) {
      const Field& k = Field::get(p, e);
      uint32_t q = k.q();
      for (uint32_t a = 0; a < q; ++a) {
        if (a != 0) CHECK(k.mul(a, k.inv(a)) == k.one());
        CHECK(k.add(a, k.neg(a)) == 0);
        for (uint32_t b = 0; b < q; ++b) {
          CHECK(k.add(a, b) == k.add(b, a));
          CHECK(k.mul(a, b) == k.mul(b, a));
          for (uint32_t c = 0; c < q; ++c) {
            CHECK(k.add(k.add(a, b), c) == k.add(a, k.add(b, c)));
            CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
            CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
          }
        }
      }
      // Frobenius
      for (uint32_t a = 0; a < q; ++a)
        for (uint32_t b = 0; b < q; ++b)
          CHECK(k.pw(k.add(a, b), p) == k.add(k.pw(a, p), k.pw(b, p)));
    }
  }

  TEST_CASE("errors") {
    const Field& f7 = Field::get(7, 1);
    CHECK_THROWS_AS(f7.inv(0), std::domain_error);
    CHECK_THROWS_AS(f7.from_coeffs(std::vector<uint32_t>{9}), std::invalid_argument);
    chord::FieldElem x(f7, 3), y(Field::get(5, 1), 3);
    CHECK_THROWS_AS((void)(x + y), std::invalid_argument);
  }

  TEST_CASE("embedding F2 -> F4 and F3 -> F9") {
    for (auto [p, e, m] : {std::array<uint32_t, 3>{2, 1, 2}, {3, 1, 2}, {2, 2, 2}}) {
      const Field& k = Field::get(p, e);
      const Field& K = k.extension(m);
      std::set<uint32_t> image;
      for (uint32_t a = 0; a < k.q(); ++a) {
        uint32_t ia = K.embed_from(k, a);
        CHECK(image.insert(ia).second);  // injective
        CHECK(K.retract_to(k, ia) == a);
        for (uint32_t b = 0; b < k.q(); ++b) {
          CHECK(K.embed_from(k, k.mul(a, b)) == K.mul(K.embed_from(k, a), K.embed_from(k, b)));
          CHECK(K.embed_from(k, k.add(a, b)) == K.add(K.embed_from(k, a), K.embed_from(k, b)));
        }
      }
      CHECK(K.embed_from(k, k.one()) == K.one());
      CHECK(K.embed_from(k, 0) == 0);
    }
    // least-root convention: the image of the F4 generator is a root of
    // x^2 + x + 1 in F16, and the least one in the canonical order
    const Field& f4 = Field::get(2, 2);
    const Field& f16 = Field::get(2, 4);
    uint32_t a = f4.from_coeffs(std::vector<uint32_t>{0, 1});
    uint32_t r = f16.embed_from(f4, a);
    auto value = [&](uint32_t t) {
      return f16.add(f16.add(f16.mul(t, t), t), f16.one());
    };
    CHECK(value(r) == 0);
    for (uint32_t t = 0; t < r; ++t) CHECK(value(t) != 0);
  }

  TEST_CASE("embedding errors") {
    const Field& f4 = Field::get(2, 2);
    const Field& f8 = Field::get(2, 3);
    CHECK_THROWS_AS(f8.embed_from(f4, 1), std::invalid_argument);  // 2 does not divide 3
    CHECK_THROWS_AS(f4.embed_from(Field::get(3, 1), 1), std::invalid_argument);
  }
}
