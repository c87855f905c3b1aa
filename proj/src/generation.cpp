#include "chord/generation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chord {

ClosureResult closure(const AbstractCubic& P, std::span<const int> seed,
                      const ClosureConfig& cfg, const Partition* approx) {
  if (cfg.max_rounds < 1 || cfg.max_set < 1) throw std::invalid_argument("caps must be positive");
  if (seed.empty()) throw std::invalid_argument("seed must be nonempty");
  if (cfg.rule == GenRule::RuleA && approx == nullptr)
    throw std::invalid_argument("RuleA needs the approximant partition");

  std::vector<char> in(P.size(), 0);
  std::vector<int> reached;
  auto add = [&](int v) {
    if (!in[v]) {
      in[v] = 1;
      reached.push_back(v);
      return true;
    }
    return false;
  };
  auto add_expanded = [&](int v) {
    bool any = add(v);
    if (cfg.rule == GenRule::RuleA)
      for (int w = 0; w < P.size(); ++w)
        if (approx->same(v, w)) any |= add(w);
    return any;
  };

  for (int s : seed) {
    if (s < 0 || s >= P.size()) throw std::invalid_argument("seed index out of range");
    add_expanded(s);
  }

  ClosureResult out;
  while (out.rounds < cfg.max_rounds) {
    ++out.rounds;
    bool grew = false;
    // Snapshot so a round composes only previously constructed points.
    std::vector<int> snapshot = reached;
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = i; j < snapshot.size(); ++j) {
        if (cfg.rule == GenRule::DistinctOnly && snapshot[i] == snapshot[j]) continue;
        for (int z : P.compose(snapshot[i], snapshot[j])) grew |= add_expanded(z);
        if (reached.size() > cfg.max_set) {
          out.reached = reached;
          std::sort(out.reached.begin(), out.reached.end());
          out.complete = false;
          out.generated_all = false;
          return out;
        }
      }
    if (!grew) {
      out.complete = true;  // this round verified the fixpoint
      break;
    }
  }
  out.reached = reached;
  std::sort(out.reached.begin(), out.reached.end());
  out.generated_all = static_cast<int>(out.reached.size()) == P.size();
  return out;
}

ClosureResult closure_rule_a(const AbstractCubic& P, std::span<const int> seed, int stage,
                             bool infinity, int max_rounds, size_t max_set) {
  auto [U, trace] = universal(P);
  ClosureConfig cfg;
  cfg.rule = GenRule::RuleA;
  cfg.a_stage = stage;
  cfg.a_infinity = infinity;
  cfg.max_rounds = max_rounds;
  cfg.max_set = max_set;
  const Partition* approx;
  Partition staged;
  if (infinity) {
    approx = &U;
  } else {
    int idx = std::min<int>(stage, trace.stabilized_at);
    staged = trace.stages[idx];
    approx = &staged;
  }
  return closure(P, seed, cfg, approx);
}

std::optional<int> generation_index(const AbstractCubic& P, int seed_budget, int max_i) {
  if (P.size() == 0) return std::nullopt;
  auto [U, trace] = universal(P);
  for (int i = 0; i <= max_i; ++i) {
    Partition approx = trace.stages[std::min<int>(i, trace.stabilized_at)];
    ClosureConfig cfg;
    cfg.rule = GenRule::RuleA;
    cfg.a_stage = i;
    // Seeds by size, then lexicographic over index combinations.
    for (int size = 1; size <= std::min(seed_budget, P.size()); ++size) {
      std::vector<int> pick(size);
      for (int j = 0; j < size; ++j) pick[j] = j;
      while (true) {
        if (closure(P, pick, cfg, &approx).generated_all) return i;
        // next combination
        int pos = size - 1;
        while (pos >= 0 && pick[pos] == P.size() - size + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int j = pos + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

Claim341Report claim_341_check(const AbstractCubic& P, std::span<const int> seed) {
  Claim341Report rep;
  ClosureConfig std_cfg;
  std_cfg.rule = GenRule::Standard;
  rep.premise_standard = closure(P, seed, std_cfg).generated_all;

  auto [U, trace] = universal(P);
  (void)trace;
  QuasigroupTable Q = quotient(P, U, false);
  auto ids = class_map(U);
  // Closure of the seed classes inside the quotient quasigroup.
  std::set<int> classes;
  for (int s : seed) classes.insert(ids[s]);
  while (true) {
    std::set<int> grown = classes;
    for (int a : classes)
      for (int b : classes) {
        int c = Q.at(a, b);
        if (c >= 0) grown.insert(c);
      }
    if (grown == classes) break;
    classes = std::move(grown);
  }
  rep.quotient_generated = static_cast<int>(classes.size()) == Q.m;
  rep.premise_quotient = rep.quotient_generated;

  ClosureConfig inf_cfg;
  inf_cfg.rule = GenRule::RuleA;
  rep.rule_a_inf_generated = closure(P, seed, inf_cfg, &U).generated_all;

  bool dir1 = !rep.premise_standard || rep.quotient_generated;
  bool dir2 = !rep.premise_quotient || rep.rule_a_inf_generated;
  rep.ok = dir1 && dir2;
  return rep;
}

}  // namespace chord
