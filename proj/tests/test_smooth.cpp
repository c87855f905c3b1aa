#include "chord/smooth.hpp"

#include "chord/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chord;

namespace {

CubicForm diag_surface(const Field& k, uint32_t cw) {
  std::vector<uint32_t> c(20, 0);
  c[0] = k.one();
  c[10] = k.one();
  c[16] = k.one();
  c[19] = cw;
  return CubicForm::make(k, 3, c);
}

}  // namespace

TEST_SUITE("smooth") {
  TEST_CASE("known verdicts") {
    const Field& f2 = Field::get(2, 1);
    CHECK(is_smooth(diag_surface(f2, f2.one())));  // Fermat surface
    // X*Y*Z as a surface form (singular along coordinate lines)
    std::vector<uint32_t> c(20, 0);
    const auto& mons = cubic_monomials(3);
    for (int m = 0; m < 20; ++m)
      if (mons[m] == std::array<uint8_t, 4>{1, 1, 1, 0}) c[m] = f2.one();
    CHECK_FALSE(is_smooth(CubicForm::make(f2, 3, c)));

    const Field& f4 = Field::get(2, 2);
    CHECK(is_smooth(diag_surface(f4, f4.from_coeffs(std::vector<uint32_t>{0, 1}))));

    // plane cubics
    const Field& f3 = Field::get(3, 1);
    std::vector<uint32_t> cc(10, 0);
    cc[0] = f3.one();
    cc[6] = f3.one();
    cc[9] = f3.one();
    // X^3+Y^3+Z^3 = (X+Y+Z)^3 in char 3: singular (non-reduced)
    CHECK_FALSE(is_smooth(CubicForm::make(f3, 2, cc)));
  }

  TEST_CASE("plane curves cross-validated against the brute scan over F2") {
    const Field& f2 = Field::get(2, 1);
    for (uint64_t idx = 1; idx < 1024; ++idx) {
      auto C = form_from_index(f2, 2, idx);
      CHECK(is_smooth(C) == oracle::brute_smooth(C, 6));
    }
  }

  TEST_CASE("plane curves cross-validated against the brute scan over F3") {
    const Field& f3 = Field::get(3, 1);
    Rng rng(1234);
    for (int trial = 0; trial < 400; ++trial) {
      uint64_t idx = 1 + rng.below(59048);
      auto C = form_from_index(f3, 2, idx);
      CHECK(is_smooth(C) == oracle::brute_smooth(C, 6));
    }
  }

  TEST_CASE("surfaces cross-validated against the brute scan over F2") {
    const Field& f2 = Field::get(2, 1);
    Rng rng(99);
    for (int trial = 0; trial < 120; ++trial) {
      uint64_t idx = 1 + rng.below((1u << 20) - 1);
      auto F = form_from_index(f2, 3, idx);
      CHECK(is_smooth(F) == oracle::brute_smooth(F, 6));
    }
  }

  TEST_CASE("singular form table agrees with the structured check over F2") {
    const Field& f2 = Field::get(2, 1);
    auto table = singular_form_table(f2, 3);
    REQUIRE(table.size() == 1u << 20);
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      uint64_t idx = 1 + rng.below((1u << 20) - 1);
      auto F = form_from_index(f2, 3, idx);
      CHECK((table[idx] == 0) == is_smooth(F));
      CHECK(form_index(F) == idx);
    }
  }

  TEST_CASE("singular form table for plane cubics over F3") {
    const Field& f3 = Field::get(3, 1);
    auto table = singular_form_table(f3, 2);
    REQUIRE(table.size() == 59049);
    Rng rng(8);
    for (int trial = 0; trial < 250; ++trial) {
      uint64_t idx = 1 + rng.below(59048);
      auto C = form_from_index(f3, 2, idx);
      CHECK((table[idx] == 0) == is_smooth(C));
    }
  }
}
