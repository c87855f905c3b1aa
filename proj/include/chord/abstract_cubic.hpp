#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace chord {

// A finite point set {0..n-1} with a ternary collinearity relation L, stored
// as canonical sorted triples and expanded to all permutations on query.
// Axiom (a) (permutation invariance) holds by construction; axiom (b)
// (x != y with two thirds forces equality) is checked by validate(), with
// pairs lying on a line inside the source surface flagged and exempt in
// lenient mode.
class AbstractCubic {
 public:
  AbstractCubic() = default;
  static AbstractCubic from_triples(int n, std::span<const std::array<int, 3>> triples,
                                    std::span<const std::array<int, 2>> line_pairs = {});

  int size() const { return n_; }
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }
  const std::vector<std::array<int, 2>>& line_pairs() const { return line_pairs_; }

  bool has_triple(int x, int y, int z) const;
  bool is_line_pair(int x, int y) const;
  // {z : (x,y,z) in L}, sorted. Empty when the pair does not compose.
  const std::vector<int>& compose(int x, int y) const;

  struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
  };
  ValidationReport validate(bool strict) const;
  bool is_total_single_valued() const;

  // Optional external labels (e.g. printed points); cosmetic only.
  std::vector<std::string> labels;

  bool operator==(const AbstractCubic& o) const {
    return n_ == o.n_ && triples_ == o.triples_ && line_pairs_ == o.line_pairs_;
  }

 private:
  static uint64_t pair_key(int x, int y);
  int n_ = 0;
  std::vector<std::array<int, 3>> triples_;     // sorted canonical triples
  std::vector<std::array<int, 2>> line_pairs_;  // sorted canonical pairs
  std::unordered_map<uint64_t, std::vector<int>> pair_index_;
  std::unordered_set<uint64_t> triple_set_;
  std::unordered_set<uint64_t> line_pair_set_;
};

}  // namespace chord
