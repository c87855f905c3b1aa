#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chord/abstract_cubic.hpp"

namespace chord {

// Equivalence relation on {0..n-1}; class representative = least index.
class Partition {
 public:
  Partition() = default;
  static Partition identity(int n);
  static Partition one_class(int n);

  int size() const { return static_cast<int>(rep_.size()); }
  int rep(int i) const;
  bool same(int a, int b) const { return rep(a) == rep(b); }
  void merge(int a, int b);
  int class_count() const;
  // class ids 0..m-1 in order of least representative
  std::vector<int> class_ids() const;
  std::vector<std::vector<int>> classes() const;
  // representative array, index -> least element of its class
  std::vector<int> rep_array() const;

  // x ~ y here implies x ~ y in coarser
  bool refines(const Partition& coarser) const;
  static Partition meet(const Partition& A, const Partition& B);

  bool operator==(const Partition& o) const { return rep_array() == o.rep_array(); }

 private:
  mutable std::vector<int> rep_;  // union-find with path compression
};

// Finest equivalence containing seed and closed under: u ~ u', v ~ v',
// (u,v,z), (u',v',z') in L  =>  z ~ z'.
Partition saturate(const AbstractCubic& P,
                   std::span<const std::pair<int, int>> seed = {});

// Staged approximants of the universal equivalence; stage 0 is the identity,
// stage i+1 merges the thirds of stage-i-equivalent pairs.
struct SaturationTrace {
  std::vector<Partition> stages;
  int stabilized_at = 0;
};
std::pair<Partition, SaturationTrace> universal(const AbstractCubic& P);

// Finest admissible equivalences with idempotent diagonal (X o X = X),
// resp. constant diagonal (X o X = O). u2 throws if no diagonal composes.
Partition u3(const AbstractCubic& P);
Partition u2(const AbstractCubic& P);

// Non-strict: every class pair composes into at most one class.
// Strict additionally demands every class pair composes (totality).
bool is_admissible(const AbstractCubic& P, const Partition& R, bool strict = false);

struct QuasigroupTable {
  int m = 0;
  std::vector<int> t;  // m*m entries, -1 where the pair does not compose
  int at(int X, int Y) const { return t[static_cast<size_t>(X) * m + Y]; }
  bool total() const;
};

// Class composition table; throws on a non-admissible partition, and on
// missing entries in strict mode.
QuasigroupTable quotient(const AbstractCubic& P, const Partition& R, bool strict = false);
// Class of each point under R, numbered as in quotient's table.
std::vector<int> class_map(const Partition& R);

// CH-quasigroup laws: commutativity, X o (X o Y) = Y, and for every triple
// of classes an abelian group via e o (x o y) on the generated
// sub-quasigroup, for every choice of e (brute force).
struct ChReport {
  bool ok = true;
  std::vector<std::string> violations;
};
ChReport ch_axioms_check(const QuasigroupTable& Q);

// Whether t_x t_y acts as the identity on the universal quotient; by the
// group-theoretic description of the universal equivalence this holds iff
// x and y are universally equivalent (checked as an acceptance property).
bool universal_pair_via_action(const AbstractCubic& P, int x, int y);

}  // namespace chord
