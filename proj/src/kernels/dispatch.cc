#include "kernels_internal.h"

namespace textproj::kernels {

std::vector<WindowCount> count_windows(std::span<const IdSeq> sequences,
                                       std::size_t n, Exec exec) {
  return exec == Exec::kSerial ? serial::count_windows(sequences, n)
                               : parallel::count_windows(sequences, n);
}

std::vector<std::uint64_t> count_pattern(std::span<const IdSeq> sequences,
                                         std::span<const std::int32_t> pattern,
                                         Exec exec) {
  return exec == Exec::kSerial ? serial::count_pattern(sequences, pattern)
                               : parallel::count_pattern(sequences, pattern);
}

std::vector<LineCoverage> line_coverage(std::span<const CoverageInput> docs,
                                        Exec exec) {
  return exec == Exec::kSerial ? serial::line_coverage(docs)
                               : parallel::line_coverage(docs);
}

std::vector<std::uint64_t> out_of_place_matrix(
    std::span<const RankedProfile> texts,
    std::span<const RankedProfile> categories, std::uint64_t penalty,
    Exec exec) {
  return exec == Exec::kSerial
             ? serial::out_of_place_matrix(texts, categories, penalty)
             : parallel::out_of_place_matrix(texts, categories, penalty);
}

std::unordered_map<std::string, std::uint64_t> count_char_grams(
    std::span<const std::u32string> words, std::size_t max_n, Exec exec) {
  return exec == Exec::kSerial ? serial::count_char_grams(words, max_n)
                               : parallel::count_char_grams(words, max_n);
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

}  // namespace textproj::kernels
