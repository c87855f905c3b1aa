#include "chord/corpus.hpp"

#include <map>
#include <set>

#include "chord/rng.hpp"
#include "chord/smooth.hpp"

namespace chord {

CubicForm fermat_curve(const Field& k) {
  std::vector<uint32_t> c(10, 0);
  c[0] = c[6] = c[9] = k.one();
  return CubicForm::make(k, 2, c);
}

CubicForm fermat_surface(const Field& k) {
  return diagonal_surface(k, k.one());
}

CubicForm diagonal_surface(const Field& k, uint32_t cw) {
  std::vector<uint32_t> c(20, 0);
  c[0] = c[10] = c[16] = k.one();
  c[19] = cw;
  return CubicForm::make(k, 3, c);
}

CubicForm nine_point_surface() {
  const Field& f4 = Field::get(2, 2);
  return diagonal_surface(f4, f4.from_coeffs(std::vector<uint32_t>{0, 1}));
}

CubicForm first_smooth_curve(const Field& k) {
  uint64_t total = 1;
  for (int i = 0; i < 10; ++i) total *= k.q();
  for (uint64_t idx = 1; idx < total; ++idx) {
    auto C = form_from_index(k, 2, idx);
    if (!form_points(C).empty() && is_smooth(C)) return C;
  }
  throw std::logic_error("no smooth plane cubic found (internal bug)");
}

std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> out;
  const Field& f2 = Field::get(2, 1);
  const Field& f3 = Field::get(3, 1);
  const Field& f4 = Field::get(2, 2);
  const Field& f7 = Field::get(7, 1);

  out.push_back({"fermat_curve_f2", 2, collinearity(fermat_curve(f2))});
  out.push_back({"curve_f2", 2, collinearity(first_smooth_curve(f2))});
  out.push_back({"curve_f3", 2, collinearity(first_smooth_curve(f3))});
  out.push_back({"curve_f4", 2, collinearity(first_smooth_curve(f4))});
  out.push_back({"curve_f7", 2, collinearity(first_smooth_curve(f7))});

  out.push_back({"fermat_surface_f2", 3, collinearity(fermat_surface(f2))});
  out.push_back({"fermat_surface_f4", 3, collinearity(fermat_surface(f4))});
  out.push_back({"nine_point_f4", 3, collinearity(nine_point_surface())});

  // First smooth F2 surface of each achievable rational point count, plus
  // the first all-Eckardt 3-point one.
  {
    auto table = singular_form_table(f2, 3);
    std::map<int, uint64_t> first_by_count;
    uint64_t eckardt3 = 0;
    auto pts = enumerate_proj_points(f2, 3);
    for (uint64_t idx = 1; idx < table.size(); ++idx) {
      if (table[idx]) continue;
      auto F = form_from_index(f2, 3, idx);
      int n = 0;
      for (const auto& x : pts) n += eval_form(F, x) == 0 ? 1 : 0;
      if (!first_by_count.count(n) && n > 0) first_by_count[n] = idx;
      if (eckardt3 == 0 && n == 3) {
        bool all_eck = true;
        for (const auto& x : pts)
          if (eval_form(F, x) == 0) all_eck &= is_eckardt(F, x);
        if (all_eck) eckardt3 = idx;
      }
      if (first_by_count.size() >= 8 && eckardt3 != 0) break;
    }
    std::set<uint64_t> used;
    for (const auto& [n, idx] : first_by_count) {
      used.insert(idx);
      out.push_back({"surface_f2_n" + std::to_string(n), 3,
                     collinearity(form_from_index(f2, 3, idx))});
    }
    if (eckardt3 != 0 && !used.count(eckardt3))
      out.push_back(
          {"surface_f2_eckardt3", 3, collinearity(form_from_index(f2, 3, eckardt3))});
  }

  // Two sampled smooth F3 surfaces (seeded, deterministic).
  {
    Rng rng(20240811);
    uint64_t total = 1;
    for (int i = 0; i < 20; ++i) total *= 3;
    int found = 0;
    while (found < 2) {
      uint64_t idx = 1 + rng.below(total - 1);
      auto F = form_from_index(f3, 3, idx);
      if (!is_smooth(F)) continue;
      if (form_points(F).empty()) continue;
      out.push_back({"surface_f3_s" + std::to_string(found), 3, collinearity(F)});
      ++found;
    }
  }

  // Split surfaces from searched general-position base points.
  if (auto cfg4 = find_general_position(f4))
    out.push_back({"split_surface_f4", 3, collinearity(SplitSurface::build(*cfg4).surface())});
  if (auto cfg7 = find_general_position(f7))
    out.push_back({"split_surface_f7", 3, collinearity(SplitSurface::build(*cfg7).surface())});

  return out;
}

}  // namespace chord
