#ifndef TEXTPROJ_CODING_H_
#define TEXTPROJ_CODING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "textproj/corpus.h"

namespace textproj {

struct Code {
  std::string id;
  std::string name;
  std::string rationale;
  std::vector<std::string> category_path;  // root first
};

struct CodedSegment {
  std::string document_id;
  std::size_t start = 0;  // byte offsets, end exclusive
  std::size_t end = 0;
  std::string code_id;
  std::string coder_id;
};

struct AxialEdge {
  std::string from;
  std::string to;
  std::string kind;
  std::uint64_t weight = 1;  // supporting statements
};

struct Codebook {
  std::vector<Code> codes;
  std::vector<CodedSegment> segments;  // in coding order
  std::vector<AxialEdge> axial_edges;
  std::optional<std::string> core_category;
};

Codebook codebook_from_json(const nlohmann::json& j);
nlohmann::json codebook_to_json(const Codebook& codebook);
Codebook load_codebook(const std::filesystem::path& path);

struct Violation {
  std::string kind;
  std::string message;
};

// Duplicate code ids, empty rationales, segments with unknown codes, unknown
// documents or bad spans, edges with unknown endpoints or zero weight, and an
// unknown core category. Document checks are skipped without a corpus.
std::vector<Violation> validate_codebook(const Codebook& codebook,
                                         const Corpus* corpus = nullptr);

// Segments per code id; codes without segments map to 0. Segments with an
// unknown code are not counted.
std::map<std::string, std::uint64_t> occurrence_counts(const Codebook& codebook);

struct AxialNode {
  std::string id;
  std::string name;
  std::uint64_t count = 0;
};

struct AxialGraph {
  std::vector<AxialNode> nodes;  // codebook order
  std::vector<AxialEdge> edges;
  std::optional<std::string> core_category;
};

AxialGraph axial_graph(const Codebook& codebook);

// Keeps nodes with count >= min_occurrence and the edges between them.
AxialGraph condense_graph(const AxialGraph& graph, std::uint64_t min_occurrence);

nlohmann::json axial_graph_to_json(const AxialGraph& graph);
std::string axial_graph_to_dot(const AxialGraph& graph);

enum class AgreementUnit { kDocument, kSegment };

struct Agreement {
  std::size_t units = 0;
  double percent_agreement = 0.0;
  double expected_agreement = 0.0;
  double kappa = 0.0;
  // Both coders used one identical code throughout, so the chance agreement
  // is 1; kappa is reported as 1.
  bool degenerate = false;
};

// Cohen's kappa over the units both coders coded. A unit is a document or
// an exact segment span. Throws ConfigError when a coder assigned more than
// one code to a unit and UndefinedMetricError when no unit is shared.
Agreement agreement(std::span<const CodedSegment> segments,
                    std::string_view coder_a, std::string_view coder_b,
                    AgreementUnit unit = AgreementUnit::kDocument);

// Multi-code mode: one binary presence task per code over the shared units.
std::map<std::string, Agreement> per_code_agreement(
    std::span<const CodedSegment> segments, std::string_view coder_a,
    std::string_view coder_b, AgreementUnit unit = AgreementUnit::kDocument);

// Kappa from paired labels.
Agreement kappa_from_labels(std::span<const std::string> a,
                            std::span<const std::string> b);

nlohmann::json agreement_to_json(const Agreement& a);

// Number of codes first seen in each consecutive batch of segments. Throws
// ConfigError for a batch size of 0.
std::vector<std::size_t> saturation_curve(std::span<const CodedSegment> segments,
                                          std::size_t batch_size);

}  // namespace textproj

#endif  // TEXTPROJ_CODING_H_
