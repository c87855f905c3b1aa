#include "chord/equivalence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "chord/words.hpp"

namespace chord {

Partition Partition::identity(int n) {
  Partition P;
  P.rep_.resize(n);
  std::iota(P.rep_.begin(), P.rep_.end(), 0);
  return P;
}

Partition Partition::one_class(int n) {
  Partition P;
  P.rep_.assign(n, 0);
  if (n == 0) return P;
  std::iota(P.rep_.begin(), P.rep_.end(), 0);
  for (int i = 1; i < n; ++i) P.merge(0, i);
  return P;
}

int Partition::rep(int i) const {
  if (i < 0 || i >= size()) throw std::invalid_argument("index out of range");
  int r = i;
  while (rep_[r] != r) r = rep_[r];
  while (rep_[i] != r) {
    int next = rep_[i];
    rep_[i] = r;
    i = next;
  }
  return r;
}

void Partition::merge(int a, int b) {
  int ra = rep(a), rb = rep(b);
  if (ra == rb) return;
  // Least index becomes the representative, keeping class ids canonical.
  if (ra < rb)
    rep_[rb] = ra;
  else
    rep_[ra] = rb;
}

int Partition::class_count() const {
  int c = 0;
  for (int i = 0; i < size(); ++i)
    if (rep(i) == i) ++c;
  return c;
}

std::vector<int> Partition::rep_array() const {
  std::vector<int> out(size());
  for (int i = 0; i < size(); ++i) out[i] = rep(i);
  return out;
}

std::vector<int> Partition::class_ids() const {
  std::vector<int> out(size(), -1);
  int next = 0;
  for (int i = 0; i < size(); ++i) {
    int r = rep(i);
    if (out[r] < 0) out[r] = next++;
    out[i] = out[r];
  }
  return out;
}

std::vector<std::vector<int>> Partition::classes() const {
  auto ids = class_ids();
  int m = class_count();
  std::vector<std::vector<int>> out(m);
  for (int i = 0; i < size(); ++i) out[ids[i]].push_back(i);
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (size() != coarser.size()) throw std::invalid_argument("ground set mismatch");
  for (int i = 0; i < size(); ++i)
    if (!coarser.same(i, rep(i))) return false;
  return true;
}

Partition Partition::meet(const Partition& A, const Partition& B) {
  if (A.size() != B.size()) throw std::invalid_argument("ground set mismatch");
  // Same class iff same class in both: group by the pair of representatives.
  std::map<std::pair<int, int>, int> first_seen;
  Partition out = Partition::identity(A.size());
  for (int i = 0; i < A.size(); ++i) {
    auto key = std::make_pair(A.rep(i), B.rep(i));
    auto it = first_seen.find(key);
    if (it == first_seen.end())
      first_seen.emplace(key, i);
    else
      out.merge(it->second, i);
  }
  return out;
}

// One saturation pass: merge all thirds reachable from class-equal pairs.
static bool saturation_pass(const AbstractCubic& P, Partition& R) {
  std::map<std::pair<int, int>, int> bucket;  // (class(u), class(v)) -> first third's class
  bool changed = false;
  for (int x = 0; x < P.size(); ++x)
    for (int y = x; y < P.size(); ++y) {
      const auto& zs = P.compose(x, y);
      if (zs.empty()) continue;
      int ra = R.rep(x), rb = R.rep(y);
      auto key = std::make_pair(std::min(ra, rb), std::max(ra, rb));
      for (int z : zs) {
        auto it = bucket.find(key);
        if (it == bucket.end()) {
          bucket.emplace(key, z);
        } else if (!R.same(it->second, z)) {
          R.merge(it->second, z);
          changed = true;
        }
      }
    }
  return changed;
}

Partition saturate(const AbstractCubic& P, std::span<const std::pair<int, int>> seed) {
  Partition R = Partition::identity(P.size());
  for (const auto& [a, b] : seed) R.merge(a, b);
  while (saturation_pass(P, R)) {
  }
  return R;
}

std::pair<Partition, SaturationTrace> universal(const AbstractCubic& P) {
  SaturationTrace trace;
  Partition cur = Partition::identity(P.size());
  trace.stages.push_back(cur);
  while (true) {
    // Stage i+1 from stage i: merge thirds of stage-i-equivalent pairs, then
    // close transitively (the union-find does both at once).
    Partition next = Partition::identity(P.size());
    std::map<std::pair<int, int>, int> bucket;
    for (int x = 0; x < P.size(); ++x)
      for (int y = x; y < P.size(); ++y) {
        const auto& zs = P.compose(x, y);
        if (zs.empty()) continue;
        int ra = cur.rep(x), rb = cur.rep(y);
        auto key = std::make_pair(std::min(ra, rb), std::max(ra, rb));
        for (int z : zs) {
          auto it = bucket.find(key);
          if (it == bucket.end())
            bucket.emplace(key, z);
          else
            next.merge(it->second, z);
        }
      }
    if (next == cur) break;
    trace.stages.push_back(next);
    cur = next;
    if (static_cast<int>(trace.stages.size()) > P.size() + 2)
      throw std::logic_error("universal saturation failed to stabilize (internal bug)");
  }
  trace.stabilized_at = static_cast<int>(trace.stages.size()) - 1;
  // Record the repeated final stage so the trace shows the fixpoint.
  trace.stages.push_back(cur);
  return {cur, trace};
}

Partition u3(const AbstractCubic& P) {
  std::vector<std::pair<int, int>> seed;
  for (int x = 0; x < P.size(); ++x)
    for (int z : P.compose(x, x)) seed.emplace_back(x, z);
  return saturate(P, seed);
}

Partition u2(const AbstractCubic& P) {
  std::vector<int> diag;
  for (int x = 0; x < P.size(); ++x)
    for (int z : P.compose(x, x)) diag.push_back(z);
  if (diag.empty())
    throw std::invalid_argument("U2 undefined: no diagonal composition exists");
  std::vector<std::pair<int, int>> seed;
  for (size_t i = 1; i < diag.size(); ++i) seed.emplace_back(diag[0], diag[i]);
  return saturate(P, seed);
}

bool QuasigroupTable::total() const {
  for (int v : t)
    if (v < 0) return false;
  return true;
}

bool is_admissible(const AbstractCubic& P, const Partition& R, bool strict) {
  if (R.size() != P.size()) throw std::invalid_argument("ground set mismatch");
  std::map<std::pair<int, int>, int> bucket;
  for (int x = 0; x < P.size(); ++x)
    for (int y = x; y < P.size(); ++y) {
      const auto& zs = P.compose(x, y);
      int ra = R.rep(x), rb = R.rep(y);
      auto key = std::make_pair(std::min(ra, rb), std::max(ra, rb));
      for (int z : zs) {
        auto it = bucket.find(key);
        if (it == bucket.end())
          bucket.emplace(key, R.rep(z));
        else if (it->second != R.rep(z))
          return false;
      }
    }
  if (strict) {
    // Totality: every class pair must compose.
    auto ids = R.class_ids();
    int m = R.class_count();
    std::vector<char> seen(static_cast<size_t>(m) * m, 0);
    for (const auto& [key, zc] : bucket) {
      (void)zc;
      auto cid = [&](int repv) {
        // class id of a representative
        return ids[repv];
      };
      int a = cid(key.first), b = cid(key.second);
      seen[static_cast<size_t>(a) * m + b] = 1;
      seen[static_cast<size_t>(b) * m + a] = 1;
    }
    for (char s : seen)
      if (!s) return false;
  }
  return true;
}

std::vector<int> class_map(const Partition& R) { return R.class_ids(); }

QuasigroupTable quotient(const AbstractCubic& P, const Partition& R, bool strict) {
  if (!is_admissible(P, R, false))
    throw std::invalid_argument("partition is not admissible");
  auto ids = R.class_ids();
  QuasigroupTable Q;
  Q.m = R.class_count();
  Q.t.assign(static_cast<size_t>(Q.m) * Q.m, -1);
  for (int x = 0; x < P.size(); ++x)
    for (int y = x; y < P.size(); ++y)
      for (int z : P.compose(x, y)) {
        int a = ids[x], b = ids[y];
        Q.t[static_cast<size_t>(a) * Q.m + b] = ids[z];
        Q.t[static_cast<size_t>(b) * Q.m + a] = ids[z];
      }
  if (strict && !Q.total())
    throw std::invalid_argument("quotient table is partial");
  return Q;
}

ChReport ch_axioms_check(const QuasigroupTable& Q) {
  ChReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  if (Q.m > 64) {
    fail("table too large for the brute-force axiom check");
    return rep;
  }
  for (int x = 0; x < Q.m; ++x)
    for (int y = 0; y < Q.m; ++y) {
      if (Q.at(x, y) != Q.at(y, x)) fail("commutativity fails");
      int xy = Q.at(x, y);
      if (xy >= 0 && Q.at(x, xy) != y) fail("x o (x o y) = y fails");
    }
  if (!rep.ok) return rep;
  if (!Q.total()) {
    fail("table is partial; group checks skipped");
    return rep;
  }
  // Every three classes generate a sub-quasigroup carrying an abelian group
  // via e o (x o y), for every identity choice e.
  for (int a = 0; a < Q.m; ++a)
    for (int b = a; b < Q.m; ++b)
      for (int c = b; c < Q.m; ++c) {
        std::set<int> sub{a, b, c};
        while (true) {
          std::set<int> grown = sub;
          for (int x : sub)
            for (int y : sub) grown.insert(Q.at(x, y));
          if (grown == sub) break;
          sub = std::move(grown);
        }
        std::vector<int> elems(sub.begin(), sub.end());
        for (int e : elems) {
          auto add = [&](int x, int y) { return Q.at(e, Q.at(x, y)); };
          for (int x : elems) {
            if (add(x, e) != x) fail("identity law fails in a generated subgroup");
            bool has_inverse = false;
            for (int y : elems) has_inverse |= add(x, y) == e;
            if (!has_inverse) fail("inverse missing in a generated subgroup");
          }
          for (int x : elems)
            for (int y : elems)
              for (int z : elems)
                if (add(add(x, y), z) != add(x, add(y, z))) {
                  fail("associativity fails in a generated subgroup");
                  return rep;
                }
        }
      }
  return rep;
}

bool universal_pair_via_action(const AbstractCubic& P, int x, int y) {
  auto [U, trace] = universal(P);
  (void)trace;
  QuasigroupTable Q = quotient(P, U, false);
  if (!Q.total())
    throw std::invalid_argument("universal quotient is partial; action undefined");
  return word_acts_trivially(Word{x, y}, Q, class_map(U));
}

}  // namespace chord
