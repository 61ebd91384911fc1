#include <omp.h>

#include "kernels_internal.h"

namespace textproj::kernels::parallel {

namespace {

// Thread-local partial maps merged in thread order; the merged multiset does
// not depend on scheduling, and callers only see sorted output.
template <typename Map>
Map merge_partials(std::vector<Map>& partials) {
  Map total;
  for (Map& part : partials) {
    if (total.empty()) {
      total = std::move(part);
      continue;
    }
    for (auto& [k, v] : part) total[k] += v;
  }
  return total;
}

}  // namespace

std::vector<WindowCount> count_windows(std::span<const IdSeq> sequences,
                                       std::size_t n) {
  if (n == 0) return {};
  std::vector<WindowMap> partials(static_cast<std::size_t>(omp_get_max_threads()));
  const auto num_seqs = static_cast<std::int64_t>(sequences.size());
#pragma omp parallel
  {
    WindowMap& local = partials[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < num_seqs; ++s) {
      const IdSeq& seq = sequences[static_cast<std::size_t>(s)];
      if (seq.size() < n) continue;
      for (std::size_t i = 0; i + n <= seq.size(); ++i) {
        ++local[IdSeq(seq.begin() + i, seq.begin() + i + n)];
      }
    }
  }
  return sorted_counts(merge_partials(partials));
}

std::vector<std::uint64_t> count_pattern(std::span<const IdSeq> sequences,
                                         std::span<const std::int32_t> pattern) {
  std::vector<std::uint64_t> out(sequences.size(), 0);
  const auto num_seqs = static_cast<std::int64_t>(sequences.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < num_seqs; ++s) {
    out[static_cast<std::size_t>(s)] =
        count_in_sequence(sequences[static_cast<std::size_t>(s)], pattern);
  }
  return out;
}

std::vector<LineCoverage> line_coverage(std::span<const CoverageInput> docs) {
  std::vector<LineCoverage> out(docs.size());
  const auto num_docs = static_cast<std::int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t d = 0; d < num_docs; ++d) {
    out[static_cast<std::size_t>(d)] =
        coverage_of(docs[static_cast<std::size_t>(d)]);
  }
  return out;
}

std::vector<std::uint64_t> out_of_place_matrix(
    std::span<const RankedProfile> texts,
    std::span<const RankedProfile> categories, std::uint64_t penalty) {
  const std::size_t nc = categories.size();
  std::vector<std::uint64_t> out(texts.size() * nc, 0);
  const auto cells = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const auto t = static_cast<std::size_t>(cell) / nc;
    const auto c = static_cast<std::size_t>(cell) % nc;
    out[static_cast<std::size_t>(cell)] =
        out_of_place(texts[t], categories[c], penalty);
  }
  return out;
}

std::unordered_map<std::string, std::uint64_t> count_char_grams(
    std::span<const std::u32string> words, std::size_t max_n) {
  using Counts = std::unordered_map<std::string, std::uint64_t>;
  std::vector<Counts> partials(static_cast<std::size_t>(omp_get_max_threads()));
  const auto num_words = static_cast<std::int64_t>(words.size());
#pragma omp parallel
  {
    Counts& local = partials[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t w = 0; w < num_words; ++w) {
      add_word_grams(words[static_cast<std::size_t>(w)], max_n, &local);
    }
  }
  return merge_partials(partials);
}

}  // namespace textproj::kernels::parallel
