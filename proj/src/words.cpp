#include "chord/words.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "chord/gf.hpp"

namespace chord {

Word word_inverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (int letter : w) {
    if (!out.empty() && out.back() == letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

std::vector<Word> rewrite_neighbors(const Word& w, const AbstractCubic& P) {
  std::vector<Word> out;
  if (w.size() < 3) return out;
  for (size_t i = 0; i + 3 <= w.size(); ++i) {
    int a = w[i], b = w[i + 1], c = w[i + 2];
    if (a == c) continue;  // reversal is the identity move
    if (!P.has_triple(a, b, c)) continue;
    Word v = w;
    v[i] = c;
    v[i + 2] = a;
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

bool has_cancellation(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) return true;
  return false;
}

}  // namespace

NormalForm normal_form(const Word& w0, const AbstractCubic& P, size_t budget) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  NormalForm nf;
  Word start = free_reduce(w0);
  while (true) {
    // Length-preserving closure from `start`; restart on any cancellation.
    std::set<Word> seen;
    std::deque<const Word*> queue;
    auto [it, fresh] = seen.insert(start);
    (void)fresh;
    queue.push_back(&*it);
    ++nf.closure_size;
    bool restarted = false;
    while (!queue.empty()) {
      const Word& cur = *queue.front();
      queue.pop_front();
      for (auto& nb : rewrite_neighbors(cur, P)) {
        if (seen.count(nb)) continue;
        if (has_cancellation(nb)) {
          start = free_reduce(nb);
          restarted = true;
          break;
        }
        if (nf.closure_size >= budget) {
          nf.word = *seen.begin();
          nf.budget_hit = true;
          nf.minimal = false;
          return nf;
        }
        auto [jt, ok] = seen.insert(std::move(nb));
        (void)ok;
        queue.push_back(&*jt);
        ++nf.closure_size;
      }
      if (restarted) break;
    }
    if (!restarted) {
      nf.word = *seen.begin();  // lexicographically least of the closure
      nf.minimal = true;
      return nf;
    }
  }
}

bool words_equal(const Word& w1, const Word& w2, const AbstractCubic& P, size_t budget) {
  NormalForm nf = normal_form(word_concat(w1, word_inverse(w2)), P, budget);
  if (nf.budget_hit)
    throw BudgetExceeded("word comparison exceeded the closure budget");
  return nf.word.empty();
}

int ord(const Word& w, const AbstractCubic& P, int x, size_t budget) {
  NormalForm nf = normal_form(w, P, budget);
  if (nf.budget_hit) throw BudgetExceeded("ord exceeded the closure budget");
  return static_cast<int>(std::count(nf.word.begin(), nf.word.end(), x));
}

std::vector<int> delta(const Word& w, const AbstractCubic& P, size_t budget) {
  NormalForm nf = normal_form(w, P, budget);
  if (nf.budget_hit) throw BudgetExceeded("delta exceeded the closure budget");
  std::vector<int> s(nf.word.begin(), nf.word.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<int> delta_tilde(const Word& w, const AbstractCubic& P, size_t budget) {
  NormalForm nf = normal_form(w, P, budget);
  if (nf.budget_hit) throw BudgetExceeded("delta_tilde exceeded the closure budget");
  return psi(nf.word).support;
}

PsiVector PsiVector::operator+(const PsiVector& o) const {
  PsiVector r;
  std::set_symmetric_difference(support.begin(), support.end(), o.support.begin(),
                                o.support.end(), std::back_inserter(r.support));
  return r;
}

PsiVector psi(const Word& w) {
  std::vector<int> s = w;
  std::sort(s.begin(), s.end());
  PsiVector out;
  for (size_t i = 0; i < s.size();) {
    size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if ((j - i) % 2 == 1) out.support.push_back(s[i]);
    i = j;
  }
  return out;
}

int act_on_quotient(const Word& w, const QuasigroupTable& Q,
                    const std::vector<int>& class_of, int cls) {
  if (cls < 0 || cls >= Q.m) throw std::invalid_argument("class index out of range");
  for (size_t i = w.size(); i-- > 0;) {
    int X = class_of.at(w[i]);
    cls = Q.at(X, cls);
    if (cls < 0) throw std::invalid_argument("quotient table is not total");
  }
  return cls;
}

bool word_acts_trivially(const Word& w, const QuasigroupTable& Q,
                         const std::vector<int>& class_of) {
  for (int cls = 0; cls < Q.m; ++cls)
    if (act_on_quotient(w, Q, class_of, cls) != cls) return false;
  return true;
}

std::vector<Word> subgroup_generators(GenKind kind, const AbstractCubic& P, size_t budget) {
  std::vector<Word> out;
  const auto& ts = P.triples();
  switch (kind) {
    case GenKind::B1:
      for (const auto& t : ts) {
        if (out.size() >= budget) return out;
        out.push_back({t[0], t[1], t[2]});
      }
      break;
    case GenKind::B0:
      // Pairs of collinear triples sharing the middle letter: the words
      // t_x t_y t_z t_x' t_y t_z'.
      for (const auto& t1 : ts)
        for (const auto& t2 : ts) {
          // All ways to read t1 = (x,y,z), t2 = (x',y,z') with common y.
          std::array<std::array<int, 3>, 3> reads1 = {{{t1[0], t1[1], t1[2]},
                                                       {t1[1], t1[0], t1[2]},
                                                       {t1[0], t1[2], t1[1]}}};
          std::array<std::array<int, 3>, 3> reads2 = {{{t2[0], t2[1], t2[2]},
                                                       {t2[1], t2[0], t2[2]},
                                                       {t2[0], t2[2], t2[1]}}};
          for (const auto& r1 : reads1)
            for (const auto& r2 : reads2) {
              if (r1[1] != r2[1]) continue;
              if (out.size() >= budget) return out;
              out.push_back({r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]});
            }
        }
      break;
    case GenKind::Commutator:
      for (int x = 0; x < P.size(); ++x)
        for (int y = x + 1; y < P.size(); ++y) {
          if (out.size() >= budget) return out;
          out.push_back({x, y, x, y});
        }
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace chord
