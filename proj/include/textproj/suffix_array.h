#ifndef TEXTPROJ_SUFFIX_ARRAY_H_
#define TEXTPROJ_SUFFIX_ARRAY_H_

#include <cstdint>
#include <span>
#include <vector>

namespace textproj {

// Suffix array of an integer string with symbols in [0, alphabet_size), by
// prefix doubling with radix sort: O(n log n).
std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> text,
                                             std::int32_t alphabet_size);

// Kasai et al. lcp[i] = longest common prefix of suffixes sa[i-1] and sa[i];
// lcp[0] = 0.
std::vector<std::int32_t> build_lcp(std::span<const std::int32_t> text,
                                    std::span<const std::int32_t> sa);

}  // namespace textproj

#endif  // TEXTPROJ_SUFFIX_ARRAY_H_
