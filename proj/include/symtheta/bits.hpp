#pragma once

// Index sets live in uint64_t bitmasks: bit (i-1) set means index i (1-based,
// 1..2g) is present.  Helpers below fix the two sign conventions everything
// else reuses: ascending-list lexicographic comparison of sets, and the
// parity of merging two ascending lists.

#include <bit>
#include <cstdint>
#include <vector>

namespace symtheta {

inline int popcount(uint64_t m) { return std::popcount(m); }

/// Ascending-list lexicographic order on index sets of equal size:
/// {1,4} < {2,3} because the lists (1,4) and (2,3) compare that way.
/// Callers only compare sets of the same size (fixed by degree and top count).
inline bool mask_list_less(uint64_t a, uint64_t b) {
  uint64_t d = a ^ b;
  if (d == 0) return false;
  uint64_t low = d & (~d + 1);  // lowest differing index
  if (a & low) return true;     // a owns it: a's list is lexicographically first
  return false;
}

/// Number of pairs (x in a, y in b) with x > y: the inversion count created
/// by concatenating list(a) and list(b) and then sorting the result.
inline int merge_inversions(uint64_t a, uint64_t b) {
  int inv = 0;
  uint64_t bb = b;
  while (bb) {
    uint64_t low = bb & (~bb + 1);
    inv += popcount(a & ~(low | (low - 1)));  // elements of a strictly above
    bb ^= low;
  }
  return inv;
}

/// +1 or -1: the Koszul/permutation sign of that merge.
inline int merge_sign(uint64_t a, uint64_t b) {
  return (merge_inversions(a, b) % 2 == 0) ? 1 : -1;
}

/// The index pairing i <-> i+g as a mask involution.
inline uint64_t partner_mask(uint64_t m, int g) {
  uint64_t low = (g == 64) ? ~uint64_t(0) : ((uint64_t(1) << g) - 1);
  return ((m & low) << g) | ((m >> g) & low);
}

inline std::vector<int> mask_to_indices(uint64_t m) {
  std::vector<int> idx;
  while (m) {
    uint64_t low = m & (~m + 1);
    idx.push_back(std::countr_zero(low) + 1);
    m ^= low;
  }
  return idx;
}

/// All subsets of `mask`, each visited exactly once, largest first by the
/// standard descending-submask walk (includes mask itself and 0).
template <class F>
void for_each_submask(uint64_t mask, F&& f) {
  uint64_t sub = mask;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

/// All size-k subsets of {1..n} in ascending-list lexicographic order.
template <class F>
void for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i + 1;
  while (true) {
    uint64_t m = 0;
    for (int x : c) m |= uint64_t(1) << (x - 1);
    f(m);
    int i = k - 1;
    while (i >= 0 && c[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace symtheta
