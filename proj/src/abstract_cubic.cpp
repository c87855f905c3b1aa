#include "chord/abstract_cubic.hpp"

#include <algorithm>
#include <stdexcept>

namespace chord {

uint64_t AbstractCubic::pair_key(int x, int y) {
  if (x > y) std::swap(x, y);
  return (static_cast<uint64_t>(x) << 21) | static_cast<uint64_t>(y);
}

static uint64_t triple_key(std::array<int, 3> t) {
  std::sort(t.begin(), t.end());
  return (static_cast<uint64_t>(t[0]) << 42) | (static_cast<uint64_t>(t[1]) << 21) |
         static_cast<uint64_t>(t[2]);
}

AbstractCubic AbstractCubic::from_triples(int n, std::span<const std::array<int, 3>> triples,
                                          std::span<const std::array<int, 2>> line_pairs) {
  AbstractCubic P;
  P.n_ = n;
  if (n < 0 || n >= (1 << 21)) throw std::invalid_argument("point count out of range");
  for (auto t : triples) {
    for (int v : t)
      if (v < 0 || v >= n) throw std::invalid_argument("triple index out of range");
    std::sort(t.begin(), t.end());
    P.triples_.push_back(t);
  }
  std::sort(P.triples_.begin(), P.triples_.end());
  P.triples_.erase(std::unique(P.triples_.begin(), P.triples_.end()), P.triples_.end());
  for (const auto& t : P.triples_) {
    P.triple_set_.insert(triple_key(t));
    // Unordered pair -> third values, covering all permutations.
    auto addpair = [&P](int x, int y, int z) {
      auto& v = P.pair_index_[pair_key(x, y)];
      if (std::find(v.begin(), v.end(), z) == v.end()) v.push_back(z);
    };
    addpair(t[0], t[1], t[2]);
    addpair(t[0], t[2], t[1]);
    addpair(t[1], t[2], t[0]);
  }
  for (auto& [k, v] : P.pair_index_) {
    (void)k;
    std::sort(v.begin(), v.end());
  }
  for (auto pr : line_pairs) {
    if (pr[0] < 0 || pr[0] >= n || pr[1] < 0 || pr[1] >= n)
      throw std::invalid_argument("line pair index out of range");
    if (pr[0] > pr[1]) std::swap(pr[0], pr[1]);
    P.line_pairs_.push_back(pr);
  }
  std::sort(P.line_pairs_.begin(), P.line_pairs_.end());
  P.line_pairs_.erase(std::unique(P.line_pairs_.begin(), P.line_pairs_.end()),
                      P.line_pairs_.end());
  for (const auto& pr : P.line_pairs_) P.line_pair_set_.insert(pair_key(pr[0], pr[1]));
  return P;
}

bool AbstractCubic::has_triple(int x, int y, int z) const {
  return triple_set_.count(triple_key({x, y, z})) > 0;
}

bool AbstractCubic::is_line_pair(int x, int y) const {
  return line_pair_set_.count(pair_key(x, y)) > 0;
}

const std::vector<int>& AbstractCubic::compose(int x, int y) const {
  static const std::vector<int> empty;
  if (x < 0 || x >= n_ || y < 0 || y >= n_) throw std::invalid_argument("index out of range");
  auto it = pair_index_.find(pair_key(x, y));
  return it == pair_index_.end() ? empty : it->second;
}

AbstractCubic::ValidationReport AbstractCubic::validate(bool strict) const {
  ValidationReport rep;
  for (int x = 0; x < n_; ++x)
    for (int y = x + 1; y < n_; ++y) {
      const auto& zs = compose(x, y);
      if (zs.size() > 1 && (strict || !is_line_pair(x, y))) {
        rep.ok = false;
        rep.violations.push_back("axiom (b): pair (" + std::to_string(x) + "," +
                                 std::to_string(y) + ") has " + std::to_string(zs.size()) +
                                 " third points" + (is_line_pair(x, y) ? " [line pair]" : ""));
      }
    }
  return rep;
}

bool AbstractCubic::is_total_single_valued() const {
  for (int x = 0; x < n_; ++x)
    for (int y = x; y < n_; ++y)
      if (compose(x, y).size() != 1) return false;
  return true;
}

}  // namespace chord
