#pragma once

#include <cstdint>
#include <vector>

#include "chord/abstract_cubic.hpp"
#include "chord/equivalence.hpp"

namespace chord {

// A word in the involutive generators t_i of the reflection group of an
// abstract cubic; letter i stands for t_i, so reversal is inversion.
using Word = std::vector<int>;

constexpr size_t kDefaultWordBudget = 200000;

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);

// Cancel adjacent equal letters until none remain (t_i^2 = 1).
Word free_reduce(Word w);

// All words obtained by one rewrite [a,b,c] -> [c,b,a] on a window whose
// letters form a collinear triple ((t_a t_b t_c)^2 = 1).
std::vector<Word> rewrite_neighbors(const Word& w, const AbstractCubic& P);

struct NormalForm {
  Word word;
  bool minimal = false;      // closure exhausted; word is the true normal form
  size_t closure_size = 0;   // words explored across all restarts
  bool budget_hit = false;   // result is only an upper bound
};

// Alternate length-preserving rewrite closure with free cancellation; the
// normal form is the lexicographically least word of the terminal closure.
NormalForm normal_form(const Word& w, const AbstractCubic& P,
                       size_t budget = kDefaultWordBudget);

// Decides w1 = w2 in the reflection group; throws BudgetExceeded rather than
// returning a possibly wrong answer.
bool words_equal(const Word& w1, const Word& w2, const AbstractCubic& P,
                 size_t budget = kDefaultWordBudget);

// Number of occurrences of letter x in the normal form. The rewrite moves
// preserve the letter multiset and cancellations drop letters in equal
// pairs, so this is a class invariant of minimal words.
int ord(const Word& w, const AbstractCubic& P, int x, size_t budget = kDefaultWordBudget);

// Support of the normal form, and its odd-count part.
std::vector<int> delta(const Word& w, const AbstractCubic& P,
                       size_t budget = kDefaultWordBudget);
std::vector<int> delta_tilde(const Word& w, const AbstractCubic& P,
                             size_t budget = kDefaultWordBudget);

// The F_2 vector of odd-count letters. Both move types preserve letter
// counts mod 2, so psi can be read off any representative; psi(w) equals the
// odd support of normal_form(w) and is additive under concatenation.
struct PsiVector {
  std::vector<int> support;  // sorted
  PsiVector operator+(const PsiVector& o) const;  // symmetric difference
  bool operator==(const PsiVector& o) const { return support == o.support; }
  bool zero() const { return support.empty(); }
};
PsiVector psi(const Word& w);

// Apply the letters right-to-left on a quotient quasigroup: cls becomes
// X_1 o (X_2 o ... (X_n o cls)), X_i the class of letter i.
int act_on_quotient(const Word& w, const QuasigroupTable& Q,
                    const std::vector<int>& class_of, int cls);
bool word_acts_trivially(const Word& w, const QuasigroupTable& Q,
                         const std::vector<int>& class_of);

enum class GenKind { B0, B1, Commutator };
// Generator words of the subgroups of 2.7: B1 = t_x t_y t_z over collinear
// triples, B0 = t_x t_y t_z t_x' t_y t_z' over triple pairs sharing the
// middle letter, Commutator = t_x t_y t_x t_y.
std::vector<Word> subgroup_generators(GenKind kind, const AbstractCubic& P, size_t budget);

}  // namespace chord
