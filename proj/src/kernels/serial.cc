// Reference implementations. Kept deliberately plain; the OpenMP versions in
// parallel.cc must agree with these exactly.

#include "kernels_internal.h"

#include <algorithm>

namespace textproj::kernels::serial {

std::vector<WindowCount> count_windows(std::span<const IdSeq> sequences,
                                       std::size_t n) {
  WindowMap counts;
  for (const IdSeq& seq : sequences) {
    if (n == 0 || seq.size() < n) continue;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      ++counts[IdSeq(seq.begin() + i, seq.begin() + i + n)];
    }
  }
  return sorted_counts(counts);
}

std::vector<std::uint64_t> count_pattern(std::span<const IdSeq> sequences,
                                         std::span<const std::int32_t> pattern) {
  std::vector<std::uint64_t> out(sequences.size(), 0);
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    out[s] = count_in_sequence(sequences[s], pattern);
  }
  return out;
}

std::vector<LineCoverage> line_coverage(std::span<const CoverageInput> docs) {
  std::vector<LineCoverage> out(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    out[d] = coverage_of(docs[d]);
  }
  return out;
}

std::vector<std::uint64_t> out_of_place_matrix(
    std::span<const RankedProfile> texts,
    std::span<const RankedProfile> categories, std::uint64_t penalty) {
  std::vector<std::uint64_t> out(texts.size() * categories.size(), 0);
  for (std::size_t t = 0; t < texts.size(); ++t) {
    for (std::size_t c = 0; c < categories.size(); ++c) {
      out[t * categories.size() + c] =
          out_of_place(texts[t], categories[c], penalty);
    }
  }
  return out;
}

std::unordered_map<std::string, std::uint64_t> count_char_grams(
    std::span<const std::u32string> words, std::size_t max_n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const std::u32string& w : words) add_word_grams(w, max_n, &counts);
  return counts;
}

}  // namespace textproj::kernels::serial
