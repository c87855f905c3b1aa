#pragma once

// Independent test oracles. Everything here is deliberately written from
// scratch against the definitions, without touching the library internals it
// is used to check.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "chord/abstract_cubic.hpp"
#include "chord/equivalence.hpp"
#include "chord/geometry.hpp"
#include "chord/smooth.hpp"

namespace oracle {

// ---- tiny F4 = {0, w, 1, w+1} with the library's index convention:
// index = c0*2 + c1 for the tuple (c0, c1), modulus x^2 + x + 1.
inline uint32_t f4_add(uint32_t a, uint32_t b) { return a ^ b; }
inline uint32_t f4_mul(uint32_t a, uint32_t b) {
  // poly coefficients: a = (a0, a1) with index a0*2 + a1, value a0 + a1*x
  auto split = [](uint32_t v) { return std::array<uint32_t, 2>{v >> 1, v & 1}; };
  auto [a0, a1] = split(a);
  auto [b0, b1] = split(b);
  uint32_t c0 = a0 & b0, c1 = (a0 & b1) ^ (a1 & b0), c2 = a1 & b1;
  // reduce x^2 = x + 1
  c0 ^= c2;
  c1 ^= c2;
  return c0 * 2 + c1;
}

// ---- brute-force smoothness: scan P^dim(F_{q^d}) for all d <= dmax.
inline bool brute_smooth(const chord::CubicForm& F, int dmax) {
  const chord::Field& k = *F.f;
  for (int d = 1; d <= dmax; ++d) {
    const chord::Field& K = k.extension(d);
    chord::CubicForm FK = (d == 1) ? F : F.embedded(K);
    auto grad = chord::gradient(FK);
    for (const auto& x : chord::enumerate_proj_points(K, F.dim)) {
      if (chord::eval_form(FK, x) != 0) continue;
      bool singular = true;
      for (int i = 0; i <= F.dim; ++i) {
        std::span<const uint32_t> xs(x.c.data(), F.dim + 1);
        if (chord::eval_quadric(grad[i], xs) != 0) {
          singular = false;
          break;
        }
      }
      if (singular) return false;
    }
  }
  return true;
}

// ---- all partitions of {0..n-1} as restricted growth strings (n small).
inline std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    out.push_back(rgs);
    // next restricted growth string
    int i = n - 1;
    for (; i > 0; --i) {
      int maxv = 0;
      for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
      if (rgs[i] <= maxv) {
        ++rgs[i];
        for (int j = i + 1; j < n; ++j) rgs[j] = 0;
        break;
      }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

// ---- is the block assignment closed under the saturation rule and does it
// contain the seed?
inline bool partition_closed(const chord::AbstractCubic& P, const std::vector<int>& blocks,
                             const std::vector<std::pair<int, int>>& seed) {
  for (auto [a, b] : seed)
    if (blocks[a] != blocks[b]) return false;
  int n = P.size();
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v)
      for (int u2 = 0; u2 < n; ++u2)
        for (int v2 = u2; v2 < n; ++v2) {
          if (!(blocks[u] == blocks[u2] && blocks[v] == blocks[v2]) &&
              !(blocks[u] == blocks[v2] && blocks[v] == blocks[u2]))
            continue;
          for (int z : P.compose(u, v))
            for (int z2 : P.compose(u2, v2))
              if (blocks[z] != blocks[z2]) return false;
        }
  return true;
}

// ---- finest closed partition containing the seed (meet of all closed ones).
inline std::vector<int> finest_closed_partition(const chord::AbstractCubic& P,
                                                const std::vector<std::pair<int, int>>& seed) {
  int n = P.size();
  // meet = same block iff same block in every closed partition
  std::vector<std::vector<int>> closed;
  for (const auto& blocks : all_partitions(n))
    if (partition_closed(P, blocks, seed)) closed.push_back(blocks);
  std::vector<int> key(n, 0);
  std::map<std::vector<int>, int> assign;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> sig;
    for (const auto& blocks : closed) sig.push_back(blocks[i]);
    auto [it, fresh] = assign.emplace(sig, static_cast<int>(assign.size()));
    (void)fresh;
    out[i] = it->second;
  }
  (void)key;
  return out;
}

inline int block_count(const std::vector<int>& blocks) {
  std::set<int> s(blocks.begin(), blocks.end());
  return static_cast<int>(s.size());
}

}  // namespace oracle
