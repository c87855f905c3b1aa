#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chord/abstract_cubic.hpp"
#include "chord/equivalence.hpp"

namespace chord {

// Generation rules: Standard is the plain multivalued composition (x = y
// allowed), DistinctOnly restricts to distinct previously constructed
// points, RuleA expands every value (and the seed) by classes of the i-th
// approximant of the universal equivalence.
enum class GenRule { Standard, DistinctOnly, RuleA };

struct ClosureConfig {
  GenRule rule = GenRule::Standard;
  int a_stage = 0;        // stage index for RuleA
  bool a_infinity = false;  // RuleA with the full universal equivalence
  int max_rounds = 1000;
  size_t max_set = 1u << 20;
};

struct ClosureResult {
  std::vector<int> reached;  // sorted
  int rounds = 0;
  bool complete = false;      // fixpoint reached before the caps
  bool generated_all = false;
};

// Round-based fixpoint of the chosen rule. For RuleA the caller supplies the
// approximant partition (stage a_stage of universal(P), or the universal
// partition itself for a_infinity).
ClosureResult closure(const AbstractCubic& P, std::span<const int> seed,
                      const ClosureConfig& cfg, const Partition* approx = nullptr);

// Convenience: resolves the approximant internally.
ClosureResult closure_rule_a(const AbstractCubic& P, std::span<const int> seed, int stage,
                             bool infinity, int max_rounds = 1000,
                             size_t max_set = 1u << 20);

// Smallest i <= max_i such that some seed of at most seed_budget points
// RuleA(i)-generates P; seeds are searched by size then lexicographically.
std::optional<int> generation_index(const AbstractCubic& P, int seed_budget, int max_i);

// Both directions of the generation claims: if the seed generates P under
// the standard rule then its classes generate P/U, and if the classes
// generate P/U then the seed RuleA(infinity)-generates P. Vacuously true
// directions count as passes.
struct Claim341Report {
  bool premise_standard = false;
  bool quotient_generated = false;
  bool premise_quotient = false;
  bool rule_a_inf_generated = false;
  bool ok = true;
};
Claim341Report claim_341_check(const AbstractCubic& P, std::span<const int> seed);

}  // namespace chord
