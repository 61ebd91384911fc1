#ifndef TEXTPROJ_SRC_KERNELS_KERNELS_INTERNAL_H_
#define TEXTPROJ_SRC_KERNELS_KERNELS_INTERNAL_H_

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "textproj/kernels.h"

namespace textproj::kernels {

struct IdSeqHash {
  std::size_t operator()(const IdSeq& s) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int32_t v : s) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using WindowMap = std::unordered_map<IdSeq, std::uint64_t, IdSeqHash>;

inline std::vector<WindowCount> sorted_counts(const WindowMap& counts) {
  std::vector<WindowCount> out;
  out.reserve(counts.size());
  for (const auto& [w, c] : counts) out.push_back({w, c});
  std::sort(out.begin(), out.end(),
            [](const WindowCount& a, const WindowCount& b) {
              return a.window < b.window;
            });
  return out;
}

inline std::uint64_t count_in_sequence(const IdSeq& seq,
                                       std::span<const std::int32_t> pattern) {
  if (pattern.empty() || seq.size() < pattern.size()) return 0;
  std::uint64_t n = 0;
  for (std::size_t i = 0; i + pattern.size() <= seq.size(); ++i) {
    if (std::equal(pattern.begin(), pattern.end(), seq.begin() + i)) ++n;
  }
  return n;
}

inline LineCoverage coverage_of(const CoverageInput& doc) {
  const std::size_t n = doc.token_lines.size();
  auto kept = [&](std::size_t t) { return doc.skip.empty() || !doc.skip[t]; };
  std::uint32_t max_line = 0;
  for (std::uint32_t l : doc.token_lines) max_line = std::max(max_line, l);
  std::vector<std::uint8_t> has_token(max_line + 1, 0);
  std::vector<std::uint8_t> covered(max_line + 1, 0);
  for (std::size_t t = 0; t < n; ++t) {
    if (kept(t)) has_token[doc.token_lines[t]] = 1;
  }
  for (const TokenSpan& s : doc.spans) {
    for (std::size_t t = s.first; t <= s.last && t < n; ++t) {
      if (kept(t)) covered[doc.token_lines[t]] = 1;
    }
  }
  LineCoverage out;
  for (std::uint32_t l = 0; l <= max_line; ++l) {
    out.total_lines += has_token[l];
    out.covered_lines += covered[l];
  }
  return out;
}

inline std::uint64_t out_of_place(const RankedProfile& text,
                                  const RankedProfile& category,
                                  std::uint64_t penalty) {
  std::uint64_t d = 0;
  for (std::size_t r = 0; r < text.grams.size(); ++r) {
    auto it = category.rank.find(text.grams[r]);
    if (it == category.rank.end()) {
      d += penalty;
    } else {
      d += it->second > r ? it->second - r : r - it->second;
    }
  }
  return d;
}

inline void add_word_grams(const std::u32string& word, std::size_t max_n,
                           std::unordered_map<std::string, std::uint64_t>* out) {
  std::u32string padded;
  padded.reserve(word.size() + 2);
  padded.push_back(U' ');
  padded += word;
  padded.push_back(U' ');
  for (std::size_t len = 1; len <= max_n; ++len) {
    if (padded.size() < len) break;
    for (std::size_t i = 0; i + len <= padded.size(); ++i) {
      ++(*out)[encode_utf8(std::u32string_view(padded).substr(i, len))];
    }
  }
}

namespace serial {
std::vector<WindowCount> count_windows(std::span<const IdSeq> sequences,
                                       std::size_t n);
std::vector<std::uint64_t> count_pattern(std::span<const IdSeq> sequences,
                                         std::span<const std::int32_t> pattern);
std::vector<LineCoverage> line_coverage(std::span<const CoverageInput> docs);
std::vector<std::uint64_t> out_of_place_matrix(
    std::span<const RankedProfile> texts,
    std::span<const RankedProfile> categories, std::uint64_t penalty);
std::unordered_map<std::string, std::uint64_t> count_char_grams(
    std::span<const std::u32string> words, std::size_t max_n);
}  // namespace serial

namespace parallel {
std::vector<WindowCount> count_windows(std::span<const IdSeq> sequences,
                                       std::size_t n);
std::vector<std::uint64_t> count_pattern(std::span<const IdSeq> sequences,
                                         std::span<const std::int32_t> pattern);
std::vector<LineCoverage> line_coverage(std::span<const CoverageInput> docs);
std::vector<std::uint64_t> out_of_place_matrix(
    std::span<const RankedProfile> texts,
    std::span<const RankedProfile> categories, std::uint64_t penalty);
std::unordered_map<std::string, std::uint64_t> count_char_grams(
    std::span<const std::u32string> words, std::size_t max_n);
}  // namespace parallel

}  // namespace textproj::kernels

#endif  // TEXTPROJ_SRC_KERNELS_KERNELS_INTERNAL_H_
