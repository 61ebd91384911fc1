#include "textproj/suffix_array.h"

#include <algorithm>
#include <numeric>

namespace textproj {

std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> text,
                                             std::int32_t alphabet_size) {
  const int n = static_cast<int>(text.size());
  std::vector<std::int32_t> sa(n);
  if (n == 0) return sa;
  if (n == 1) return {0};

  std::vector<std::int32_t> rank(text.begin(), text.end());
  std::vector<std::int32_t> next_rank(n);
  std::vector<std::int32_t> by_second(n);
  std::vector<std::int32_t> count(std::max(alphabet_size, n) + 1);

  // Initial order by first symbol.
  for (int i = 0; i < n; ++i) ++count[rank[i]];
  std::partial_sum(count.begin(), count.end(), count.begin());
  for (int i = n - 1; i >= 0; --i) sa[--count[rank[i]]] = i;

  int classes = alphabet_size;
  for (int k = 1;; k <<= 1) {
    // Order by second key; suffixes without a second half sort first.
    int p = 0;
    for (int i = n - k; i < n; ++i) by_second[p++] = i;
    for (int i = 0; i < n; ++i) {
      if (sa[i] >= k) by_second[p++] = sa[i] - k;
    }
    // Stable counting sort by the first key.
    std::fill(count.begin(), count.end(), 0);
    for (int i = 0; i < n; ++i) ++count[rank[i]];
    std::partial_sum(count.begin(), count.begin() + classes + 1, count.begin());
    for (int i = n - 1; i >= 0; --i) {
      const int s = by_second[i];
      sa[--count[rank[s]]] = s;
    }

    auto second = [&](int i) { return i + k < n ? rank[i + k] : -1; };
    next_rank[sa[0]] = 0;
    int r = 0;
    for (int i = 1; i < n; ++i) {
      const int a = sa[i - 1], b = sa[i];
      if (rank[a] != rank[b] || second(a) != second(b)) ++r;
      next_rank[b] = r;
    }
    rank.swap(next_rank);
    classes = r + 1;
    if (classes == n) break;
  }
  return sa;
}

std::vector<std::int32_t> build_lcp(std::span<const std::int32_t> text,
                                    std::span<const std::int32_t> sa) {
  const int n = static_cast<int>(text.size());
  std::vector<std::int32_t> lcp(n, 0);
  std::vector<std::int32_t> inv(n);
  for (int i = 0; i < n; ++i) inv[sa[i]] = i;
  int h = 0;
  for (int i = 0; i < n; ++i) {
    if (inv[i] == 0) {
      h = 0;
      continue;
    }
    const int j = sa[inv[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[inv[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace textproj
