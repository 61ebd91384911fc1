#ifndef TEXTPROJ_CLONES_H_
#define TEXTPROJ_CLONES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "textproj/corpus.h"

namespace textproj {

struct CloneInstance {
  std::string document_id;
  std::size_t first_token = 0;  // inclusive, index into the token stream
  std::size_t last_token = 0;
  std::uint32_t first_line = 0;
  std::uint32_t last_line = 0;

  bool operator==(const CloneInstance&) const = default;
};

struct CloneGroup {
  int id = 0;  // 1-based, in canonical order
  std::vector<CloneInstance> instances;
  // Exact groups: the repeated length. Gapped groups: the shortest instance.
  std::size_t length_tokens = 0;
  // Largest line-level edit distance of an instance to the first instance.
  std::size_t gap_edits = 0;
};

struct CloneConfig {
  std::size_t min_length = 20;
  std::size_t max_gap = 2;
  // Groups with more instances than this are not considered for gap fusion.
  std::size_t max_fusion_instances = 200;
};

// Tokenizer used for clone detection: punctuation is kept so that short
// label lines ("Required parameters: none") carry enough tokens.
TokenizerConfig clone_tokenizer_config();

// All maximal repeats of at least min_length tokens over the kept tokens of
// the given documents. Ignored tokens and document boundaries act as unique
// separators. Groups are sorted by length descending, then by the position
// (document id, token) of their first instance. Throws ConfigError when
// min_length < 2.
std::vector<CloneGroup> detect_exact_clones(
    std::span<const PreparedDocument> docs, std::size_t min_length);

// Exact clones fused across small line-level differences. Two exact instance
// pairs over the same documents fuse when the second follows the first on
// both sides within max_gap + 1 lines and the fused spans differ by 1..max_gap
// line edits; fusion is transitive. While a fused pair stays below max_gap,
// it also absorbs a neighbouring line on both sides when the two lines differ
// by a single token edit. Exact groups whose pairs were all fused
// are replaced by the fused groups. max_gap = 0 yields the exact result.
std::vector<CloneGroup> detect_gapped_clones(
    std::span<const PreparedDocument> docs, const CloneConfig& config);

// Fraction of analyzable lines (lines with a kept token) that hold a token of
// some clone instance. Throws UndefinedMetricError for zero analyzable lines.
double clone_coverage(const PreparedDocument& doc,
                      std::span<const CloneGroup> groups);
double clone_coverage(std::span<const PreparedDocument> docs,
                      std::span<const CloneGroup> groups);

struct DocumentCloneStats {
  std::string document_id;
  double coverage = 0.0;
  std::size_t clone_group_count = 0;     // groups with an instance here
  std::size_t clone_instance_count = 0;  // instances located here
  std::size_t covered_lines = 0;
  std::size_t total_lines = 0;
};

struct CloneStats {
  std::vector<DocumentCloneStats> documents;
  double coverage = 0.0;  // summed numerators over summed denominators
  std::size_t clone_group_count = 0;
  std::size_t clone_instance_count = 0;
  std::size_t covered_lines = 0;
  std::size_t total_lines = 0;
};

CloneStats clone_stats(std::span<const PreparedDocument> docs,
                       std::span<const CloneGroup> groups);

enum class LineEditKind { kChanged, kInserted, kDeleted };

struct LineEdit {
  LineEditKind kind = LineEditKind::kChanged;
  std::optional<std::uint32_t> reference_line;  // line in the first instance
  std::string reference_text;
  std::optional<std::uint32_t> instance_line;
  std::string instance_text;
};

struct InstanceDiff {
  CloneInstance instance;
  std::vector<LineEdit> edits;
};

// Line-level edit script of each instance against the first instance; lines
// are compared by normalized tokens, texts are taken from the documents.
// Exact groups (gap_edits == 0) produce empty scripts.
std::vector<InstanceDiff> diff_instances(const CloneGroup& group,
                                         const Corpus& corpus,
                                         std::span<const PreparedDocument> docs);

std::string_view to_string(LineEditKind kind);

nlohmann::json clone_groups_to_json(std::span<const CloneGroup> groups);
std::vector<CloneGroup> clone_groups_from_json(const nlohmann::json& j);
nlohmann::json clone_stats_to_json(const CloneStats& stats);
nlohmann::json diff_to_json(const CloneGroup& group,
                            std::span<const InstanceDiff> diffs);

}  // namespace textproj

#endif  // TEXTPROJ_CLONES_H_
