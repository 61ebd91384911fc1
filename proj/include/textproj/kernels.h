#ifndef TEXTPROJ_KERNELS_H_
#define TEXTPROJ_KERNELS_H_

// Data-parallel inner loops shared by the analyses. Every kernel has a serial
// reference implementation and an OpenMP implementation producing identical
// results; the analyses call the parallel form, tests compare the two.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace textproj::kernels {

enum class Exec { kSerial, kParallel };

using IdSeq = std::vector<std::int32_t>;

struct WindowCount {
  std::vector<std::int32_t> window;
  std::uint64_t count = 0;

  bool operator==(const WindowCount&) const = default;
};

// Counts every contiguous window of length n inside each sequence; windows
// never cross sequence boundaries. Result sorted lexicographically by window.
std::vector<WindowCount> count_windows(std::span<const IdSeq> sequences,
                                       std::size_t n, Exec exec);

// Number of windows of the given pattern inside each sequence.
std::vector<std::uint64_t> count_pattern(std::span<const IdSeq> sequences,
                                         std::span<const std::int32_t> pattern,
                                         Exec exec);

struct TokenSpan {
  std::size_t first = 0;  // inclusive token indices
  std::size_t last = 0;
};

struct CoverageInput {
  std::span<const std::uint32_t> token_lines;
  std::span<const std::uint8_t> skip;  // empty = nothing skipped
  std::vector<TokenSpan> spans;
};

struct LineCoverage {
  std::size_t covered_lines = 0;
  std::size_t total_lines = 0;  // lines holding at least one kept token

  bool operator==(const LineCoverage&) const = default;
};

// Per document: lines with a kept token inside any span, and lines with any
// kept token at all.
std::vector<LineCoverage> line_coverage(std::span<const CoverageInput> docs,
                                        Exec exec);

// Ranked n-gram list (index = rank) and its lookup table.
struct RankedProfile {
  std::vector<std::string> grams;
  std::unordered_map<std::string, std::size_t> rank;
};

// out[t * categories.size() + c] = out-of-place distance of text t to
// category c; grams missing from the category cost `penalty`.
std::vector<std::uint64_t> out_of_place_matrix(
    std::span<const RankedProfile> texts,
    std::span<const RankedProfile> categories, std::uint64_t penalty,
    Exec exec);

// Character n-gram counts (1..max_n code points) over padded words. Each
// word is given as its code points; padding with a space on either side is
// applied here.
std::unordered_map<std::string, std::uint64_t> count_char_grams(
    std::span<const std::u32string> words, std::size_t max_n, Exec exec);

std::string encode_utf8(std::u32string_view cps);

}  // namespace textproj::kernels

#endif  // TEXTPROJ_KERNELS_H_
